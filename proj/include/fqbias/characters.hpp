#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fqbias/poly.hpp"

namespace fqbias {

// (F_q[t]/P^e)^* = cyclic(q^d - 1) x U1, with U1 = 1 + P F_q[t]/P^e a p-group.
struct LocalComponent {
  Poly prime;
  unsigned exponent = 1;
  Poly modulus;  // prime^exponent
  unsigned degree = 0;  // deg modulus
  std::uint64_t size = 0;  // phi(prime^exponent)
  std::vector<Poly> generators;  // generators[0] is the Teichmueller generator
  std::vector<std::uint64_t> orders;
  std::uint64_t first_generator = 0;  // position in the global generator list
  std::uint64_t stride = 1;  // global mixed-radix stride of this component

  // residue code (< q^degree) -> local index, -1 for non-units; empty if too large
  std::vector<std::int32_t> table;
  // baby-step/giant-step data for large cyclic components (exponent == 1 only)
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  std::uint64_t bsgs_m = 0;
  Poly giant;  // generator^{-m}
};

class ModulusContext;
using ContextPtr = std::shared_ptr<const ModulusContext>;

// Unit group of F_q[t]/(M). Group elements are addressed by a packed index
// sum_j x_j stride_j where x_j is the exponent of global generator j.
class ModulusContext {
 public:
  static ContextPtr make(const Poly& M, const Limits& limits = {});

  const Poly& modulus() const { return M_; }
  const FieldPtr& field() const { return M_.field(); }
  unsigned degree() const { return static_cast<unsigned>(M_.degree()); }
  const Factorization& factorization() const { return fact_; }
  std::uint64_t phi() const { return phi_; }
  unsigned omega() const { return static_cast<unsigned>(components_.size()); }
  bool is_squarefree() const { return squarefree_; }
  std::uint64_t exponent() const { return lambda_; }
  const std::vector<LocalComponent>& components() const { return components_; }
  const std::vector<std::uint64_t>& generator_orders() const { return orders_; }
  const std::vector<std::uint64_t>& generator_strides() const { return strides_; }
  std::size_t num_generators() const { return orders_.size(); }

  // Local index of the residue code r (mod components()[i].modulus), -1 if not a unit.
  std::int64_t local_index(std::size_t i, std::uint64_t residue_code) const;
  std::optional<std::uint64_t> group_index(const Poly& a) const;
  std::vector<std::uint64_t> exponents_of(std::uint64_t group_index) const;
  std::uint64_t index_of(const std::vector<std::uint64_t>& exps) const;
  // Canonical representative (degree < deg M) of a group element.
  Poly element(std::uint64_t group_index) const;
  std::uint64_t multiply(std::uint64_t g, std::uint64_t h) const;

  // residue code mod M -> group index (-1 for non-units); empty when q^deg M is too large.
  const std::vector<std::int64_t>& residue_table() const { return residue_table_; }
  // Units in canonical order (increasing residue code) and their group indices.
  std::vector<std::uint64_t> canonical_unit_codes() const;

 private:
  ModulusContext() = default;
  void build(const Limits& limits);

  Poly M_;
  Factorization fact_;
  bool squarefree_ = true;
  std::uint64_t phi_ = 1;
  std::uint64_t lambda_ = 1;
  std::vector<LocalComponent> components_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::uint64_t> strides_;
  std::vector<Poly> crt_basis_;  // e_i == 1 mod m_i, 0 mod m_j
  std::vector<std::int64_t> residue_table_;
};

class Character {
 public:
  Character() = default;
  Character(ContextPtr ctx, std::vector<std::uint64_t> exps);
  static Character principal(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<std::uint64_t>& exponents() const { return exps_; }
  std::uint64_t order() const { return order_; }
  bool is_principal() const { return order_ == 1; }
  bool is_real() const { return order_ <= 2; }

  // chi(g) = exp(2 pi i phase(g) / order()).
  std::uint64_t phase(std::uint64_t group_index) const;
  std::complex<double> value(std::uint64_t group_index) const;
  // Zero off units.
  std::complex<double> evaluate(const Poly& a) const;
  // Real characters only: +1, -1 or 0.
  int real_value(const Poly& a) const;

  Character pow(std::int64_t j) const;
  Character conj() const { return pow(-1); }
  Character operator*(const Character& o) const;
  bool operator==(const Character& o) const { return exps_ == o.exps_; }
  std::string key() const;

 private:
  ContextPtr ctx_;
  std::vector<std::uint64_t> exps_;
  std::vector<std::uint64_t> weights_;  // exps_j * (order / o_j) reduced mod order
  std::uint64_t order_ = 1;
};

std::vector<Character> all_characters(const ContextPtr& ctx);
// Nonprincipal characters of order dividing 2.
std::vector<Character> quadratic_characters(const ContextPtr& ctx);
// Squarefree M: the quadratic character nontrivial exactly at the components in mask.
Character quadratic_character(const ContextPtr& ctx, std::uint64_t component_mask);
Poly conductor(const Character& chi);

// Unit classes mod M, stored as group indices.
class ResidueSet {
 public:
  enum class Kind { Squares, NonSquares, Explicit };
  ResidueSet(ContextPtr ctx, std::string label, std::vector<std::uint64_t> members, Kind kind = Kind::Explicit);
  static ResidueSet from_representatives(const ContextPtr& ctx, const std::vector<Poly>& reps,
                                         std::string label = "explicit");

  const std::string& label() const { return label_; }
  Kind kind() const { return kind_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::uint64_t>& members() const { return members_; }
  bool contains(std::uint64_t group_index) const;
  const ContextPtr& context() const { return ctx_; }

 private:
  ContextPtr ctx_;
  std::string label_;
  std::vector<std::uint64_t> members_;  // sorted
  Kind kind_;
};

std::pair<ResidueSet, ResidueSet> quadratic_residues(const ContextPtr& ctx);

std::complex<double> c_coefficient(const Character& chi, const ResidueSet& A, const ResidueSet& B);

struct WeightedCharacter {
  Character chi;
  std::complex<double> weight;
};
// All characters with c(chi, A, B) != 0. For the squares/non-squares race the
// weights are 1/|nonsquares| on the quadratic characters, without a full sum.
std::vector<WeightedCharacter> race_weights(const ResidueSet& A, const ResidueSet& B);

// Walks monic polynomials of degree n in odometer order and tracks their unit
// class incrementally.
class ClassWalker {
 public:
  ClassWalker(const ContextPtr& ctx, unsigned n, const Limits& limits = {});
  // Group index of the current polynomial, -1 if not coprime to M.
  std::int64_t group_index() const { return current_; }
  std::uint64_t index() const { return idx_; }
  bool done() const { return idx_ >= total_; }
  void next();

 private:
  void recompute();

  struct Target {
    std::size_t component;  // SIZE_MAX: whole modulus via residue_table
    unsigned degree;
    std::vector<std::vector<std::uint32_t>> tpow;  // [position][k] digits of t^i mod target
    std::vector<std::uint32_t> res;  // digits of the current residue
  };

  const ModulusContext* ctx_;
  unsigned n_;
  std::uint64_t idx_ = 0, total_ = 0;
  std::vector<std::uint32_t> digits_;
  std::vector<Target> targets_;
  std::int64_t current_ = -1;
};

}  // namespace fqbias
