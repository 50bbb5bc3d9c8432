#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fqbias {

// An element of F_q stored as its integer code sum_j c_j p^j, where c_j are
// the coordinates in the basis 1, x, ..., x^{e-1}.
struct Fq {
  std::uint32_t code = 0;
  constexpr Fq() = default;
  constexpr explicit Fq(std::uint32_t c) : code(c) {}
  constexpr bool is_zero() const { return code == 0; }
  friend constexpr bool operator==(Fq, Fq) = default;
  friend constexpr auto operator<=>(Fq, Fq) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// F_q = F_p[x]/(c(x)). Immutable once built; share through FieldPtr.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  // defining: little-endian coefficients of a monic degree-e polynomial over F_p.
  static FieldPtr make(std::uint32_t p, unsigned e = 1,
                       std::optional<std::vector<std::uint32_t>> defining = std::nullopt);

  std::uint32_t p() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint32_t q() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }
  const std::vector<std::uint32_t>& defining_poly() const { return defining_; }

  Fq zero() const { return Fq(0); }
  Fq one() const { return Fq(1); }
  Fq from_int(long long v) const;
  std::vector<std::uint32_t> digits(Fq a) const;
  Fq from_digits(std::span<const std::uint32_t> d) const;
  // F_p value of a if a lies in the prime subfield.
  std::optional<std::uint32_t> prime_value(Fq a) const;

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const { return add(a, Fq(neg_[b.code])); }
  Fq neg(Fq a) const { return Fq(neg_[a.code]); }
  Fq mul(Fq a, Fq b) const {
    if (a.code == 0 || b.code == 0) return Fq(0);
    return Fq(exp_[log_[a.code] + log_[b.code]]);
  }
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, std::int64_t n) const;

  // Multiplication by schoolbook product and reduction modulo c(x); no tables.
  Fq mul_direct(Fq a, Fq b) const;

  // Smallest element (in code order) of multiplicative order q-1.
  Fq generator() const { return Fq(generator_); }
  // Discrete log base generator(); a must be nonzero.
  std::uint32_t log(Fq a) const;
  Fq exp(std::int64_t i) const;
  bool is_square(Fq a) const;
  std::uint64_t order(Fq a) const;

  // "q=5" or "q=9;def=x^2+1".
  std::string describe() const;
  // Element rendering: prime subfield values as integers, others as a^i.
  std::string format(Fq a) const;

  bool same_as(const Field& o) const {
    return p_ == o.p_ && e_ == o.e_ && defining_ == o.defining_;
  }

 private:
  Field() = default;
  void build_tables();

  std::uint32_t p_ = 0;
  unsigned e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> defining_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint16_t> add_;  // only for q <= kAddTableLimit
  std::uint32_t generator_ = 0;
};

inline FieldPtr make_field(std::uint32_t p, unsigned e = 1,
                           std::optional<std::vector<std::uint32_t>> defining = std::nullopt) {
  return Field::make(p, e, std::move(defining));
}

Fq find_generator(const Field& f);

// Lexicographically (odometer order) smallest monic irreducible of degree e over F_p.
std::vector<std::uint32_t> default_defining_poly(std::uint32_t p, unsigned e);
bool is_irreducible_over_prime_field(std::uint32_t p, const std::vector<std::uint32_t>& c);
// All monic irreducibles of degree e over F_p in odometer order.
std::vector<std::vector<std::uint32_t>> prime_field_irreducibles(std::uint32_t p, unsigned e);

// "q=5", "q=9", "q=9;def=x^2+1".
FieldPtr parse_field_spec(const std::string& text);

}  // namespace fqbias
