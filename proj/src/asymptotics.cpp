#include "fqbias/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fqbias/errors.hpp"

namespace fqbias {

namespace {

constexpr double kTwoPiHi = 6.283185307179586;
constexpr double kTwoPiLo = 2.4492935982947064e-16;

// Exact product a*b as hi + lo.
void two_prod(double a, double b, double& hi, double& lo) {
  hi = a * b;
  lo = std::fma(a, b, -hi);
}

double ipow(double base, unsigned k) {
  double r = 1;
  for (unsigned i = 0; i < k; ++i) r *= base;
  return r;
}

std::complex<double> cpow(std::complex<double> base, unsigned k) {
  std::complex<double> r = 1;
  for (unsigned i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

std::vector<CharacterZeros> race_zero_data(const ResidueSet& A, const ResidueSet& B, const Limits& limits) {
  auto weights = race_weights(A, B);
  std::vector<Character> chars;
  for (auto& w : weights) chars.push_back(w.chi);
  auto Ls = compute_l_polynomials(chars, limits);
  const std::uint64_t q = A.context()->field()->q();
  std::vector<CharacterZeros> out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out.push_back({weights[i].chi, weights[i].weight, extract_zeros(Ls[i], q)});
  }
  return out;
}

MainTermSpec build_main_term(const std::vector<CharacterZeros>& data, FactorFunction f, unsigned k, std::uint64_t q,
                             bool printed_angles) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "main term needs k >= 1");
  MainTermSpec spec;
  spec.f = f;
  spec.k = k;
  spec.sign = k % 2 ? -1 : 1;
  if (f == FactorFunction::SmallOmega && q < 5) {
    spec.warnings.push_back("omega main term is stated for q >= 5; evaluated anyway for q = " + std::to_string(q));
  }
  const double sq = std::sqrt(static_cast<double>(q));
  const double eps_f = f == FactorFunction::BigOmega ? -1.0 : 1.0;
  std::complex<double> C0 = 0, c1 = 0;
  std::vector<Oscillator> osc;
  for (auto& cz : data) {
    if (!cz.zeros) throw Error(ErrorCode::MissingZeroData, "no zero data for character " + cz.chi.key());
    const ZeroData& z = *cz.zeros;
    const double half_delta = cz.chi.is_real() ? 0.5 : 0.0;
    C0 += cz.weight * ipow(z.m_plus - eps_f * half_delta, k) * sq / (sq - 1);
    c1 += cz.weight * ipow(z.m_minus - eps_f * half_delta, k) * sq / (sq + 1);
    for (auto& s : z.all_spectral()) {
      std::complex<double> w = cz.weight * ipow(s.multiplicity, k) * s.alpha / (s.alpha - 1.0);
      if (printed_angles && s.alpha.real() < 0) {
        const std::complex<double> up = s.gamma > 0 ? s.alpha : std::conj(s.alpha);
        const std::complex<double> wu = cz.weight * ipow(s.multiplicity, k) * up / (up - 1.0);
        osc.push_back({s.gamma > 0 ? s.gamma : -s.gamma, 0.5 * std::conj(wu)});
        continue;
      }
      if (s.gamma > 0) {
        osc.push_back({s.gamma, 0.5 * w});
      } else {
        osc.push_back({-s.gamma, 0.5 * std::conj(w)});
      }
    }
  }
  spec.C0 = C0.real();
  spec.c1 = c1.real();
  spec.imaginary_residual = std::max(std::abs(C0.imag()), std::abs(c1.imag()));
  std::sort(osc.begin(), osc.end(), [](auto& a, auto& b) { return a.gamma < b.gamma; });
  for (auto& o : osc) {
    if (!spec.oscillators.empty() && std::abs(spec.oscillators.back().gamma - o.gamma) < 1e-12) {
      spec.oscillators.back().c += o.c;
    } else {
      spec.oscillators.push_back(o);
    }
  }
  return spec;
}

MainTermSpec build_main_term(const ResidueSet& A, const ResidueSet& B, FactorFunction f, unsigned k,
                             const Limits& limits) {
  return build_main_term(race_zero_data(A, B, limits), f, k, A.context()->field()->q());
}

double reduce_phase(std::uint64_t X, double gamma) {
  // X up to 2^53 is exact in a double; X * gamma = hi + lo exactly.
  double hi, lo;
  two_prod(static_cast<double>(X), gamma, hi, lo);
  const double n = std::floor(hi / kTwoPiHi);
  double ph, pl;
  two_prod(n, kTwoPiHi, ph, pl);
  double r = (hi - ph) + (lo - pl) - n * kTwoPiLo;
  r = std::fmod(r, kTwoPiHi);
  if (r < 0) r += kTwoPiHi;
  return r;
}

double eval_oscillation(const MainTermSpec& spec, std::uint64_t X) {
  double s = 0;
  for (auto& o : spec.oscillators) {
    const double ph = reduce_phase(X, o.gamma);
    s += 2 * (o.c.real() * std::cos(ph) - o.c.imag() * std::sin(ph));
  }
  return s;
}

double eval_main_term(const MainTermSpec& spec, std::uint64_t X) {
  return spec.sign * (spec.C0 + (X % 2 ? -spec.c1 : spec.c1) + eval_oscillation(spec, X));
}

std::complex<double> pi_fk_asymptotic(const ZeroData& z, bool real_character, unsigned n, unsigned k,
                                      FactorFunction f) {
  if (k < 1 || n < 2) throw Error(ErrorCode::InvalidArgument, "asymptotic needs k >= 1 and n >= 2");
  const double eps_f = f == FactorFunction::BigOmega ? -1.0 : 1.0;
  const double half_delta = real_character ? 0.5 : 0.0;
  const double q = static_cast<double>(z.q);
  const double logn = std::log(static_cast<double>(n));
  const double scale = std::pow(logn, k - 1.0) / n;
  double real_part = ipow(z.m_plus - eps_f * half_delta, k) +
                     (n % 2 ? -1.0 : 1.0) * ipow(z.m_minus - eps_f * half_delta, k);
  std::complex<double> s = real_part * std::pow(q, n / 2.0) * scale;
  for (auto& sp : z.all_spectral()) s += ipow(sp.multiplicity, k) * cpow(sp.alpha, n) * scale;
  double fact = 1;
  for (unsigned i = 2; i < k; ++i) fact *= i;
  return (k % 2 ? -1.0 : 1.0) / fact * s;
}

GeometricLogSum geometric_log_sum(std::complex<double> alpha, unsigned k, std::uint64_t X) {
  if (X < 2) throw Error(ErrorCode::InvalidArgument, "geometric log sum needs X >= 2");
  GeometricLogSum out;
  out.limit = alpha / (alpha - 1.0);
  const double logX = std::log(static_cast<double>(X));
  // X/(alpha^X (log X)^k) sum_n alpha^n (log n)^k / n = sum_m alpha^{-m} (log(X-m)/log X)^k X/(X-m)
  const std::complex<double> inv = 1.0 / alpha;
  std::complex<double> w = 1, norm = 0;
  for (std::uint64_t m = 0; m < X; ++m) {
    const double n = static_cast<double>(X - m);
    const double ratio = k == 0 ? 1.0 : std::pow(std::log(n) / logX, k);
    norm += w * ratio * (static_cast<double>(X) / n);
    w *= inv;
    if (std::abs(w) < 1e-300) break;
  }
  out.normalized = norm;
  const double log_scale = X * std::log(std::abs(alpha)) + k * std::log(logX) - std::log(static_cast<double>(X));
  if (log_scale < 700) {
    out.partial_sum = norm * std::pow(alpha, static_cast<double>(X)) * ipow(logX, k) / static_cast<double>(X);
  } else {
    out.partial_sum = {std::numeric_limits<double>::infinity(), 0.0};
  }
  return out;
}

}  // namespace fqbias
