#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqbias/asymptotics.hpp"

namespace fqbias {

// Main-term values T(X) for X = 1..N, by rotation with periodic exact resynchronisation.
std::vector<double> scan_values(const MainTermSpec& spec, std::uint64_t N);

// Smallest P with gamma_j P in 2 pi Z for all oscillators and P even when c1 != 0;
// nullopt if some angle is not a rational multiple of pi (denominator <= 1e6, tolerance 1e-12).
std::optional<std::uint64_t> detect_period(const MainTermSpec& spec);
// gamma / pi as p/q when it is a rational with q <= max_den within tol.
std::optional<std::pair<std::int64_t, std::int64_t>> rational_multiple_of_pi(double gamma, std::int64_t max_den = 1000000,
                                                                             double tol = 1e-12);

struct DensityReport {
  std::uint64_t N = 0;  // values examined (one period when exact)
  std::uint64_t positive_count = 0, negative_count = 0, zero_count = 0;
  std::uint64_t near_zero_flags = 0;
  double density = 0;
  bool exact = false;
  std::uint64_t period = 0;
  std::uint64_t numerator = 0, denominator = 1;  // reduced positive_count / N
};

// Sign counts of orientation * T(X), X = 1..N. Values with |T| below 1e-9 times the
// coefficient scale count as zero (not positive) and are flagged.
DensityReport density_scan(const MainTermSpec& spec, std::uint64_t N, int orientation = 1);

enum class KLimitClass { SymmetricDissipating, DiracExtreme, HalfDiracUnbiased, MixedReal };
std::string to_string(KLimitClass c);

struct DistributionSummary {
  std::uint64_t N = 0;
  double mean = 0, variance = 0;  // empirical
  double closed_mean = 0, closed_variance = 0;
  double support_lo = 0, support_hi = 0;
  std::uint64_t support_violations = 0;
  std::vector<std::uint64_t> histogram;  // 512 bins over the support
  double symmetry_defect = 0;            // max |h_i - h_{511-i}| / N
};

DistributionSummary distribution_stats(const MainTermSpec& spec, std::uint64_t N);

// e^{-i C0 xi} cos(c1 xi) prod J0(2 |c_j| xi), with the spec's sign folded into C0.
std::complex<double> fourier_mu(const MainTermSpec& spec, double xi);
// Same, but oscillators whose angles agree up to sign modulo pi are merged on one
// torus coordinate first (exact when the remaining angles are independent with pi).
std::complex<double> fourier_mu_merged(const MainTermSpec& spec, double xi);
std::complex<double> empirical_characteristic_function(const MainTermSpec& spec, double xi, std::uint64_t N);
double bessel_j0(double z);

// Zero data of the nonprincipal quadratic characters of a squarefree modulus.
struct QuadraticZeros {
  ContextPtr ctx;
  std::uint64_t nonsquares = 0;
  std::vector<CharacterZeros> characters;
};
class LCache;
QuadraticZeros quadratic_zero_data(const ContextPtr& ctx, const Limits& limits = {}, const LCache* cache = nullptr);

struct KLimitReport {
  KLimitClass kind;
  double m_f_max = 0;
  unsigned d_plus = 0, d_minus = 0, d_nonreal = 0;
  double symmetry_defect = 0;  // of the limiting oscillation, when non-real zeros dominate
};
KLimitReport k_limit_classify(const QuadraticZeros& z, FactorFunction f);

// (1/|nonsquares|^2) * 2 sum_{gamma in (0,pi)} (sum_chi m_gamma(chi)^k |alpha|/|alpha-1|)^2
double variance_nu(const QuadraticZeros& z, unsigned k);
// Closed-form mean of the squares/non-squares race from the real zeros.
double quadratic_race_mean(const QuadraticZeros& z, FactorFunction f, unsigned k);
// 1 - Var(nu) / offset^2 clamped to [0, 1].
double chebyshev_bound(const QuadraticZeros& z, unsigned k);
double chebyshev_offset(const QuadraticZeros& z, unsigned k);

struct BIReport {
  double B = 0;                  // |E mu| / sqrt(Var nu)
  double B_closed = 0;           // (2^omega - 1) sqrt q / (2^k (sqrt q - 1)) I^{-1/2}
  double I_nonreal = 0;          // distinct non-real zeros
  double I_all = 0;              // plus real zeros with multiplicity
  double I_approx = 0;           // q/(q-1) (2^omega - 1) (deg M' - 4) / 2
  unsigned squarefree_degree = 0;
};
BIReport B_I_report(const QuadraticZeros& z, FactorFunction f, unsigned k);

// |nonsquares| sqrt(q-1) / sqrt(q 2^{omega-1} deg M)
double central_limit_normalization(const QuadraticZeros& z);
MainTermSpec scaled(const MainTermSpec& spec, double factor);
// sup |F_emp - F_mix| with F_mix = (Phi(x - 2b/(sqrt q + 1)) + Phi(x - 2b sqrt q/(sqrt q + 1))) / 2.
double gaussian_mixture_distance(const MainTermSpec& spec, std::uint64_t N, double b, std::uint64_t q);
double gaussian_mixture_cdf(double x, double b, std::uint64_t q);

// Squarefree M = P_1...P_omega with degrees 1, 2, ..., omega-1 and the rest of
// floor(2^omega / c) on the last factor; smallest irreducible of each degree.
Poly construct_modulus(const FieldPtr& field, double c, unsigned omega);

// Integer relations sum a_i angles_i ~ 0 with |a_i| <= Q, tolerance 1e-10 sum |a_i|.
// Returns an LLL-reduced basis of the relations found; empty means none up to Q.
std::vector<std::vector<std::int64_t>> li_heuristic_scan(const std::vector<double>& angles, std::int64_t Q);

enum class AngleConvention { ZeroDerived, PrintedDisplay };
// Main term for the squares/non-squares race. PrintedDisplay pairs the upper-half-plane
// coefficient with the conjugate angle whenever Re(alpha) < 0.
MainTermSpec quadratic_main_term(const QuadraticZeros& z, FactorFunction f, unsigned k,
                                 AngleConvention convention = AngleConvention::ZeroDerived);

// Positive counts of Delta itself (no orientation) for the squares/non-squares race.
DensityReport table1_scan(const QuadraticZeros& z, FactorFunction f, unsigned k, std::uint64_t N,
                          AngleConvention convention = AngleConvention::PrintedDisplay);

// True when the scan finds a relation among {pi} and the oscillator angles (Q = 100).
bool li_conditional(const MainTermSpec& spec);

}  // namespace fqbias
