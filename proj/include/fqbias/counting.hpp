#pragma once

#include <complex>
#include <functional>
#include <cstdint>
#include <string>
#include <vector>

#include "fqbias/characters.hpp"
#include "fqbias/lfunc.hpp"

namespace fqbias {

using Int = __int128;

std::string to_string(Int v);
inline double to_double(Int v) { return static_cast<double>(v); }
// Throws ResourceLimit on overflow.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

// Omega counts prime factors with multiplicity, omega without.
enum class FactorFunction { BigOmega, SmallOmega };
std::string to_string(FactorFunction f);
FactorFunction parse_factor_function(const std::string& s);
unsigned factor_count(const Factorization& fac, FactorFunction f);

// Complex value with an absolute error bound, propagated through + - * and
// exact integer scaling.
struct Approx {
  std::complex<double> value;
  double error = 0;

  Approx() = default;
  Approx(std::complex<double> v, double e = 0) : value(v), error(e) {}
  static Approx exact(Int v);

  Approx operator+(const Approx& o) const;
  Approx operator-(const Approx& o) const;
  Approx operator*(const Approx& o) const;
  Approx& operator+=(const Approx& o) { return *this = *this + o; }
  Approx& operator-=(const Approx& o) { return *this = *this - o; }
  Approx scaled(double s) const;
};

// S(n, chi^j) = sum over irreducible P of degree n, P not dividing M, of chi(P)^j,
// for n = 1..n_max and every j mod ord(chi). Real towers are exact.
class PrimeSums {
 public:
  PrimeSums(const Character& chi, unsigned n_max, const Limits& limits = {});
  // L-polynomials of the powers of chi supplied by the caller (e.g. from a shared cache).
  PrimeSums(const Character& chi, unsigned n_max, const std::function<LPolynomial(const Character&)>& lookup);

  bool exact() const { return exact_; }
  std::uint64_t order() const { return order_; }
  unsigned n_max() const { return n_max_; }
  // j is reduced mod order.
  Int exact_value(unsigned n, std::uint64_t j = 1) const;
  Approx value(unsigned n, std::uint64_t j = 1) const;
  // psi(n, chi^j): sum over deg f = n of Lambda(f) chi(f)^j.
  Approx psi(unsigned n, std::uint64_t j = 1) const;

 private:
  void init(const Character& chi, const std::vector<LPolynomial>& tower_L);

  bool exact_;
  std::uint64_t order_;
  unsigned n_max_;
  std::vector<std::vector<Int>> exact_s_, exact_psi_;  // [j][n]
  std::vector<std::vector<Approx>> s_, psi_;
};

// pi_{f_k}(n, chi) for k = 0..k_max, n = 0..n_max (index [k][n]).
struct CountTable {
  FactorFunction f = FactorFunction::BigOmega;
  unsigned k_max = 0, n_max = 0;
  bool exact = false;
  std::vector<std::vector<Int>> exact_values;
  std::vector<std::vector<Approx>> values;
  std::string provenance = "recursion";

  Approx at(unsigned k, unsigned n) const;
  // Largest error bound in the table; exact tables report 0.
  double max_error() const;
  bool reliable() const { return max_error() <= 1e-6; }
};

CountTable count_table(const Character& chi, FactorFunction f, unsigned k_max, unsigned n_max,
                       const Limits& limits = {});
// Table for chi^power, reusing the prime sums of the tower of chi.
CountTable count_table(const PrimeSums& sums, FactorFunction f, unsigned k_max, std::uint64_t power = 1);

Approx pi_f1(const Character& chi, unsigned n, const Limits& limits = {});
Approx pi_omega_k(const Character& chi, unsigned n, unsigned k, const Limits& limits = {});
Approx pi_small_omega_k(const Character& chi, unsigned n, unsigned k, const Limits& limits = {});

// Counts of monic N coprime to M by (degree, f(N), class), generated as products of
// irreducibles. Index [n][k][g].
class ClassCountOracle {
 public:
  ClassCountOracle(const ContextPtr& ctx, FactorFunction f, unsigned k_max, unsigned n_max,
                   const Limits& limits = {});
  std::uint64_t count(unsigned n, unsigned k, std::uint64_t g) const;
  std::uint64_t count(unsigned n, unsigned k, const ResidueSet& A) const;
  // sum over classes of chi(g) * count
  std::complex<double> character_sum(const Character& chi, unsigned n, unsigned k) const;

 private:
  ContextPtr ctx_;
  unsigned k_max_, n_max_;
  std::vector<std::uint64_t> counts_;
};

// enumerate -> factorize -> classify
std::uint64_t pi_fk_by_class_bruteforce(const ContextPtr& ctx, unsigned n, unsigned k, FactorFunction f,
                                        const ResidueSet& A, const Limits& limits = {});

struct RaceSeries {
  std::string modulus, set_a, set_b;
  FactorFunction f = FactorFunction::BigOmega;
  unsigned k = 1;
  std::string method;  // "recursion" or "enumeration"
  std::vector<unsigned> X;  // starts at 2
  std::vector<double> delta;
  // Unnormalized cumulative difference |A|^-1 pi(X;A) - |B|^-1 pi(X;B).
  std::vector<double> difference;
};

enum class CountMethod { Recursion, Enumeration };

RaceSeries delta_fk_exact(const ResidueSet& A, const ResidueSet& B, FactorFunction f, unsigned k,
                          unsigned X_max, CountMethod method = CountMethod::Recursion,
                          const Limits& limits = {});

// X (k-1)! / (q^{X/2} (log X)^{k-1}), natural log.
double delta_normalization(std::uint64_t q, unsigned X, unsigned k);

}  // namespace fqbias
