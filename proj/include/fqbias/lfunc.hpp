#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fqbias/characters.hpp"

namespace fqbias {

// L(u, chi) = sum_{n < deg M} (sum_{f monic, deg f = n} chi(f)) u^n.
struct LPolynomial {
  std::uint64_t character_order = 1;
  bool exact = false;  // integer coefficients (real character)
  std::vector<std::int64_t> integer_coeffs;  // valid when exact
  // cyclotomic[n][r]: number of monic f of degree n coprime to M with chi(f) = zeta^r
  std::vector<std::vector<std::int64_t>> cyclotomic;
  std::vector<std::complex<double>> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  static LPolynomial from_integers(std::vector<std::int64_t> c);
};

LPolynomial compute_l_polynomial(const Character& chi, const Limits& limits = {});
// One enumeration pass shared by all characters of the same context.
std::vector<LPolynomial> compute_l_polynomials(const std::vector<Character>& chars, const Limits& limits = {});

struct SpectralZero {
  double gamma = 0;  // argument of alpha
  unsigned multiplicity = 1;
  std::complex<double> alpha;
};

struct ZeroData {
  unsigned m_plus = 0, m_minus = 0;
  // Real characters: gamma in (0, pi) with conjugates implied.
  // Otherwise every zero is listed with gamma in (-pi, pi).
  std::vector<SpectralZero> spectral;
  std::vector<std::complex<double>> unit_zeros;  // repeated by multiplicity
  bool conjugates_implied = true;
  unsigned d_chi = 0;  // distinct non-real norm-sqrt(q) inverse zeros
  double gap = std::numeric_limits<double>::infinity();
  int degree = 0;
  std::uint64_t q = 0;

  // Every non-real norm-sqrt(q) zero, conjugates included.
  std::vector<SpectralZero> all_spectral() const;
};

ZeroData extract_zeros(const LPolynomial& L, std::uint64_t q);
std::vector<std::complex<double>> reconstruct_coefficients(const ZeroData& z);

// psi(n) = -sum alpha^n over all inverse zeros, n = 1..n_max (index 0 unused).
std::vector<std::int64_t> power_sums_exact(const LPolynomial& L, unsigned n_max);
std::vector<std::complex<double>> power_sums(const LPolynomial& L, unsigned n_max);

// Minimum gap over the supplied zero data; +infinity if no spectral zeros.
double gamma_M(const std::vector<ZeroData>& zeros);

// Roots of sum c_i x^i (c.back() != 0), refined by Newton's method.
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& c);

struct FieldRepresentation {
  FieldPtr field;
  Fq generator;
  Poly modulus;
  LPolynomial L;
};

// Search defining polynomials and generators of F_{p^e} (canonical order) for one
// under which the primitive quadratic character of the pattern modulus has the
// expected L-polynomial, exactly or up to factors (1 - u). Patterns without 'a' are parsed
// once over the default field.
FieldRepresentation resolve_field_representation(std::uint32_t p, unsigned e, const std::string& pattern,
                                                 const std::vector<std::int64_t>& expected_L,
                                                 const Limits& limits = {});

}  // namespace fqbias
