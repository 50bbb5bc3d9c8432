#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "fqbias/ffcore.hpp"

namespace fqbias {

// Dense polynomial over F_q in the variable t, little-endian, normalized so
// the leading coefficient is nonzero (the zero polynomial has no coefficients).
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr f) : field_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Fq> coeffs);

  static Poly constant(FieldPtr f, Fq c);
  static Poly monomial(FieldPtr f, Fq c, unsigned deg);
  static Poly t(FieldPtr f) { return monomial(f, Fq(1), 1); }
  // Little-endian integer coefficients mapped into the prime subfield.
  static Poly from_ints(FieldPtr f, std::initializer_list<long long> c);
  static Poly from_ints(FieldPtr f, const std::vector<long long>& c);
  // Inverse of code(): coefficient i has field code (v / q^i) mod q.
  static Poly from_code(FieldPtr f, std::uint64_t code);
  // The idx-th monic polynomial of degree n in odometer order.
  static Poly monic_from_index(FieldPtr f, unsigned n, std::uint64_t idx);

  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == Fq(1); }
  bool is_monic() const { return !c_.empty() && c_.back() == Fq(1); }
  Fq lead() const { return c_.empty() ? Fq(0) : c_.back(); }
  Fq coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fq(0); }
  const std::vector<Fq>& coeffs() const { return c_; }

  // sum code(c_i) q^i over all coefficients.
  std::uint64_t code() const;
  // sum code(c_i) q^i over i < deg (monic polynomials only).
  std::uint64_t monic_index() const;

  Poly monic() const;
  Poly scaled(Fq s) const;
  Poly derivative() const;
  Poly shifted(unsigned k) const;  // t^k * this
  Fq eval(Fq x) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void normalize();
  void check_same_field(const Poly& o) const;

  FieldPtr field_;
  std::vector<Fq> c_;
};

// Canonical ordering: by degree, then by coefficients from the top down.
bool canonical_less(const Poly& a, const Poly& b);

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
// Monic gcd (zero if both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
// Returns (g, s, u) with s*a + u*b = g monic.
struct ExtGcd {
  Poly g, s, t;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);
Poly pow(const Poly& a, unsigned n);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly pow_mod(const Poly& a, std::uint64_t n, const Poly& m);
// x^(q^k) mod m by k iterated q-th powers.
Poly frobenius_pow_mod(const Poly& x, unsigned k, const Poly& m);
// Inverse of a modulo m; DivisionByZero when gcd(a, m) != 1.
Poly inverse_mod(const Poly& a, const Poly& m);

bool is_irreducible(const Poly& f);

struct Factorization {
  Fq unit;
  std::vector<std::pair<Poly, unsigned>> factors;

  unsigned big_omega() const;
  unsigned small_omega() const;
  Poly product() const;
};

enum class FactorMethod { Auto, CantorZassenhaus, TrialDivision };

Factorization factorize(const Poly& f, FactorMethod method = FactorMethod::Auto,
                        std::uint64_t seed = 0x5eedULL);
bool is_squarefree(const Poly& f);

// Number of monic irreducibles of degree n over F_q (Moebius formula).
std::uint64_t count_irreducibles(std::uint64_t q, unsigned n);
int moebius(std::uint64_t n);

struct Limits {
  // Upper bound on the number of polynomials any single enumeration may visit.
  std::uint64_t enumeration = 2'000'000'000ULL;
};

std::uint64_t checked_power(std::uint64_t q, unsigned n);  // saturates at UINT64_MAX
void require_budget(std::uint64_t q, unsigned n, const Limits& limits);

// Monic polynomials of degree n in odometer order, restricted to indices
// [begin, end) so workers can split the range by leading coefficient prefix.
class MonicRange {
 public:
  MonicRange(FieldPtr f, unsigned n, const Limits& limits = {});
  MonicRange(FieldPtr f, unsigned n, std::uint64_t begin, std::uint64_t end,
             const Limits& limits = {});

  std::uint64_t size() const { return end_ - begin_; }
  std::vector<MonicRange> split(unsigned parts) const;

  class iterator {
   public:
    using value_type = Poly;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const MonicRange* r, std::uint64_t idx);
    const Poly& operator*() const { return cur_; }
    const Poly* operator->() const { return &cur_; }
    iterator& operator++();
    bool operator==(const iterator& o) const { return idx_ == o.idx_; }

   private:
    const MonicRange* r_ = nullptr;
    std::uint64_t idx_ = 0;
    std::vector<Fq> digits_;
    Poly cur_;
  };
  iterator begin() const { return iterator(this, begin_); }
  iterator end() const { return iterator(this, end_); }

 private:
  FieldPtr field_;
  unsigned n_;
  std::uint64_t begin_, end_;
};

std::vector<Poly> enumerate_monic(const FieldPtr& f, unsigned n, const Limits& limits = {});
// All monic irreducibles of degree n in odometer order; memoized per field.
const std::vector<Poly>& enumerate_irreducibles(const FieldPtr& f, unsigned n,
                                                const Limits& limits = {});
// Rabin-test filter; slow reference for enumerate_irreducibles.
std::vector<Poly> enumerate_irreducibles_rabin(const FieldPtr& f, unsigned n);

// Optional on-disk cache consulted by enumerate_irreducibles.
void set_irreducible_cache_dir(const std::string& dir);

}  // namespace fqbias
