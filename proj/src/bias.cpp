#include "fqbias/bias.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <thread>

#include "fqbias/cache.hpp"
#include "fqbias/errors.hpp"

namespace fqbias {

namespace {

constexpr std::uint64_t kResync = 1 << 16;
constexpr std::uint64_t kChunk = 1 << 22;

double coefficient_scale(const MainTermSpec& spec) {
  double s = std::abs(spec.C0) + std::abs(spec.c1);
  for (auto& o : spec.oscillators) s += 2 * std::abs(o.c);
  return s;
}

// Calls fn(X, T(X)) for X = lo..hi-1 (lo >= 1).
template <class F>
void scan_range(const MainTermSpec& spec, std::uint64_t lo, std::uint64_t hi, F&& fn) {
  const std::size_t J = spec.oscillators.size();
  std::vector<std::complex<double>> z(J), r(J), c2(J);
  for (std::size_t j = 0; j < J; ++j) {
    r[j] = std::polar(1.0, spec.oscillators[j].gamma);
    c2[j] = 2.0 * spec.oscillators[j].c;
  }
  const double sgn = spec.sign;
  for (std::uint64_t X = lo; X < hi; ++X) {
    if ((X - lo) % kResync == 0) {
      for (std::size_t j = 0; j < J; ++j) z[j] = std::polar(1.0, reduce_phase(X, spec.oscillators[j].gamma));
    }
    double s = spec.C0 + (X % 2 ? -spec.c1 : spec.c1);
    for (std::size_t j = 0; j < J; ++j) {
      s += c2[j].real() * z[j].real() - c2[j].imag() * z[j].imag();
      z[j] *= r[j];
    }
    fn(X, sgn * s);
  }
}

// Splits 1..N into chunks handled by worker threads; acc(chunk_index, lo, hi).
template <class F>
void parallel_chunks(std::uint64_t N, F&& acc) {
  const std::uint64_t chunks = (N + kChunk - 1) / kChunk;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) acc(c, 1 + c * kChunk, std::min(N + 1, 1 + (c + 1) * kChunk));
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t c = w; c < chunks; c += workers) acc(c, 1 + c * kChunk, std::min(N + 1, 1 + (c + 1) * kChunk));
    });
  }
  for (auto& t : pool) t.join();
}

double ipow(double b, unsigned k) {
  double r = 1;
  for (unsigned i = 0; i < k; ++i) r *= b;
  return r;
}

double eps_of(FactorFunction f) { return f == FactorFunction::BigOmega ? -1.0 : 1.0; }

}  // namespace

std::vector<double> scan_values(const MainTermSpec& spec, std::uint64_t N) {
  std::vector<double> out(N);
  parallel_chunks(N, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
    scan_range(spec, lo, hi, [&](std::uint64_t X, double v) { out[X - 1] = v; });
  });
  return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> rational_multiple_of_pi(double gamma, std::int64_t max_den,
                                                                             double tol) {
  const double x = gamma / std::numbers::pi;
  // Convergents h/k of the continued fraction of x.
  long double h0 = 1, h1 = std::floor(static_cast<long double>(x)), k0 = 0, k1 = 1;
  long double rem = x - h1;
  for (int it = 0; it < 64; ++it) {
    if (std::abs(gamma - std::numbers::pi * static_cast<double>(h1 / k1)) <= tol) {
      return std::make_pair(static_cast<std::int64_t>(h1), static_cast<std::int64_t>(k1));
    }
    if (rem == 0) break;
    const long double inv = 1 / rem;
    const long double a = std::floor(inv);
    rem = inv - a;
    const long double h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> detect_period(const MainTermSpec& spec) {
  const double scale = coefficient_scale(spec);
  std::uint64_t P = 1;
  if (std::abs(spec.c1) > 1e-15 * scale) P = 2;
  for (auto& o : spec.oscillators) {
    if (std::abs(o.c) <= 1e-15 * scale) continue;
    auto r = rational_multiple_of_pi(o.gamma);
    if (!r) return std::nullopt;
    auto [p, d] = *r;
    const std::uint64_t per = static_cast<std::uint64_t>(p % 2 == 0 ? d : 2 * d);
    P = std::lcm(P, per);
    if (P > (std::uint64_t{1} << 40)) return std::nullopt;
  }
  return P;
}

DensityReport density_scan(const MainTermSpec& spec, std::uint64_t N, int orientation) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "density scan needs N >= 1");
  DensityReport rep;
  std::uint64_t len = N;
  if (auto P = detect_period(spec); P && *P <= 100000000) {
    len = *P;
    rep.exact = true;
    rep.period = *P;
  }
  const double tol = 1e-9 * coefficient_scale(spec);
  const std::uint64_t chunks = (len + kChunk - 1) / kChunk;
  std::vector<std::array<std::uint64_t, 3>> counts(chunks, {0, 0, 0});
  parallel_chunks(len, [&](std::uint64_t c, std::uint64_t lo, std::uint64_t hi) {
    auto& cnt = counts[c];
    auto body = [&](std::uint64_t, double v) {
      v *= orientation;
      if (v > tol) ++cnt[0];
      else if (v < -tol) ++cnt[1];
      else ++cnt[2];
    };
    if (rep.exact && len <= 1000000) {
      for (std::uint64_t X = lo; X < hi; ++X) body(X, eval_main_term(spec, X));
    } else {
      scan_range(spec, lo, hi, body);
    }
  });
  for (auto& c : counts) {
    rep.positive_count += c[0];
    rep.negative_count += c[1];
    rep.zero_count += c[2];
  }
  rep.near_zero_flags = rep.zero_count;
  rep.N = len;
  const std::uint64_t g = std::gcd(rep.positive_count, len);
  rep.numerator = rep.positive_count / g;
  rep.denominator = len / g;
  rep.density = static_cast<double>(rep.positive_count) / static_cast<double>(len);
  return rep;
}

std::string to_string(KLimitClass c) {
  switch (c) {
    case KLimitClass::SymmetricDissipating: return "symmetric-dissipating";
    case KLimitClass::DiracExtreme: return "dirac-extreme";
    case KLimitClass::HalfDiracUnbiased: return "half-dirac-unbiased";
    case KLimitClass::MixedReal: return "mixed-real";
  }
  return "?";
}

DistributionSummary distribution_stats(const MainTermSpec& spec, std::uint64_t N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "distribution stats need N >= 1");
  DistributionSummary out;
  out.N = N;
  double osc2 = 0, radius = std::abs(spec.c1);
  for (auto& o : spec.oscillators) {
    osc2 += 2 * std::norm(o.c);
    radius += 2 * std::abs(o.c);
  }
  const double center = spec.sign * spec.C0;
  out.closed_mean = center;
  out.closed_variance = spec.c1 * spec.c1 + osc2;
  out.support_lo = center - radius;
  out.support_hi = center + radius;
  out.histogram.assign(512, 0);
  const double slack = 1e-9 * std::max(coefficient_scale(spec), 1e-300);

  struct Part {
    long double sum = 0, sum2 = 0;  // about the closed-form center
    std::uint64_t violations = 0;
    std::vector<std::uint64_t> hist = std::vector<std::uint64_t>(512, 0);
  };
  const std::uint64_t chunks = (N + kChunk - 1) / kChunk;
  std::vector<Part> parts(chunks);
  const double width = out.support_hi - out.support_lo;
  parallel_chunks(N, [&](std::uint64_t c, std::uint64_t lo, std::uint64_t hi) {
    Part& p = parts[c];
    scan_range(spec, lo, hi, [&](std::uint64_t, double v) {
      const long double d = v - center;
      p.sum += d;
      p.sum2 += d * d;
      if (v < out.support_lo - slack || v > out.support_hi + slack) ++p.violations;
      std::size_t bin = 0;
      if (width > 0) {
        const double t = (v - out.support_lo) / width * 512;
        bin = static_cast<std::size_t>(std::clamp(t, 0.0, 511.0));
      }
      ++p.hist[bin];
    });
  });
  long double s = 0, s2 = 0;
  for (auto& p : parts) {
    s += p.sum;
    s2 += p.sum2;
    out.support_violations += p.violations;
    for (std::size_t i = 0; i < 512; ++i) out.histogram[i] += p.hist[i];
  }
  const long double m = s / N;
  out.mean = static_cast<double>(center + m);
  out.variance = static_cast<double>(std::max<long double>(0, s2 / N - m * m));
  std::uint64_t worst = 0;
  for (std::size_t i = 0; i < 256; ++i) {
    const auto a = out.histogram[i], b = out.histogram[511 - i];
    worst = std::max(worst, a > b ? a - b : b - a);
  }
  out.symmetry_defect = static_cast<double>(worst) / static_cast<double>(N);
  return out;
}

std::complex<double> fourier_mu(const MainTermSpec& spec, double xi) {
  const double C0 = spec.sign * spec.C0;
  std::complex<double> r = std::polar(1.0, -C0 * xi) * std::cos(spec.c1 * xi);
  for (auto& o : spec.oscillators) r *= bessel_j0(2 * std::abs(o.c) * xi);
  return r;
}

std::complex<double> fourier_mu_merged(const MainTermSpec& spec, double xi) {
  const std::size_t J = spec.oscillators.size();
  std::vector<int> partner(J, -1);
  for (std::size_t i = 0; i < J; ++i) {
    for (std::size_t j = i + 1; j < J; ++j) {
      if (partner[i] < 0 && partner[j] < 0 &&
          std::abs(spec.oscillators[i].gamma + spec.oscillators[j].gamma - std::numbers::pi) < 1e-10) {
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
      }
    }
  }
  // e^{i X (pi - g)} = (-1)^X e^{-i X g}: the partner rides on the same torus coordinate.
  std::complex<double> total = 0;
  for (int e : {1, -1}) {
    const double value = spec.sign * (spec.C0 + e * spec.c1);
    std::complex<double> r = std::polar(1.0, -value * xi);
    for (std::size_t i = 0; i < J; ++i) {
      if (partner[i] < 0) {
        r *= bessel_j0(2 * std::abs(spec.oscillators[i].c) * xi);
      } else if (static_cast<std::size_t>(partner[i]) > i) {
        const auto c = spec.oscillators[i].c + static_cast<double>(e) * std::conj(spec.oscillators[partner[i]].c);
        r *= bessel_j0(2 * std::abs(c) * xi);
      }
    }
    total += 0.5 * r;
  }
  return total;
}

std::complex<double> empirical_characteristic_function(const MainTermSpec& spec, double xi, std::uint64_t N) {
  const std::uint64_t chunks = (N + kChunk - 1) / kChunk;
  std::vector<std::complex<long double>> parts(chunks);
  parallel_chunks(N, [&](std::uint64_t c, std::uint64_t lo, std::uint64_t hi) {
    std::complex<long double> s = 0;
    scan_range(spec, lo, hi, [&](std::uint64_t, double v) {
      s += std::complex<long double>(std::cos(xi * v), -std::sin(xi * v));
    });
    parts[c] = s;
  });
  std::complex<long double> s = 0;
  for (auto& p : parts) s += p;
  return {static_cast<double>(s.real() / N), static_cast<double>(s.imag() / N)};
}

QuadraticZeros quadratic_zero_data(const ContextPtr& ctx, const Limits& limits, const LCache* cache) {
  if (!ctx->is_squarefree()) throw Error(ErrorCode::NotSquarefree, "quadratic race needs a squarefree modulus");
  QuadraticZeros out;
  out.ctx = ctx;
  const unsigned w = ctx->omega();
  out.nonsquares = ctx->phi() - (ctx->phi() >> w);
  auto chars = quadratic_characters(ctx);
  auto Ls = cache ? cache->get_all(chars, limits) : compute_l_polynomials(chars, limits);
  const std::uint64_t q = ctx->field()->q();
  for (std::size_t i = 0; i < chars.size(); ++i) {
    out.characters.push_back({chars[i], 1.0 / static_cast<double>(out.nonsquares), extract_zeros(Ls[i], q)});
  }
  return out;
}

MainTermSpec quadratic_main_term(const QuadraticZeros& z, FactorFunction f, unsigned k, AngleConvention convention) {
  return build_main_term(z.characters, f, k, z.ctx->field()->q(), convention == AngleConvention::PrintedDisplay);
}

KLimitReport k_limit_classify(const QuadraticZeros& z, FactorFunction f) {
  const double eps = eps_of(f);
  KLimitReport rep;
  double mx = 0;
  for (auto& cz : z.characters) {
    const ZeroData& d = *cz.zeros;
    mx = std::max({mx, std::abs(d.m_plus - eps / 2), std::abs(d.m_minus - eps / 2)});
    for (auto& s : d.spectral) mx = std::max(mx, static_cast<double>(s.multiplicity));
  }
  rep.m_f_max = mx;
  MainTermSpec top;
  for (auto& cz : z.characters) {
    const ZeroData& d = *cz.zeros;
    if (std::abs(d.m_plus - eps / 2) == mx) ++rep.d_plus;
    if (std::abs(d.m_minus - eps / 2) == mx) ++rep.d_minus;
    bool hit = false;
    for (auto& s : d.all_spectral()) {
      if (s.multiplicity != mx) continue;
      hit = true;
      const auto w = cz.weight * s.alpha / (s.alpha - 1.0);
      top.oscillators.push_back(s.gamma > 0 ? Oscillator{s.gamma, 0.5 * w} : Oscillator{-s.gamma, 0.5 * std::conj(w)});
    }
    if (hit) ++rep.d_nonreal;
  }
  if (rep.d_nonreal > 0) {
    rep.kind = KLimitClass::SymmetricDissipating;
    std::sort(top.oscillators.begin(), top.oscillators.end(), [](auto& a, auto& b) { return a.gamma < b.gamma; });
    MainTermSpec merged;
    for (auto& o : top.oscillators) {
      if (!merged.oscillators.empty() && std::abs(merged.oscillators.back().gamma - o.gamma) < 1e-12) {
        merged.oscillators.back().c += o.c;
      } else {
        merged.oscillators.push_back(o);
      }
    }
    rep.symmetry_defect = distribution_stats(merged, 100000).symmetry_defect;
  } else if (rep.d_plus > 0 && rep.d_minus == 0) {
    rep.kind = KLimitClass::DiracExtreme;
  } else if (rep.d_plus == 0) {
    rep.kind = KLimitClass::HalfDiracUnbiased;
  } else {
    rep.kind = KLimitClass::MixedReal;
  }
  return rep;
}

namespace {

// sum_chi m^k |alpha|/|alpha - 1| grouped by gamma in (0, pi)
std::vector<double> grouped_amplitudes(const QuadraticZeros& z, unsigned k, bool with_multiplicity_power) {
  std::map<double, double> by_gamma;
  for (auto& cz : z.characters) {
    for (auto& s : cz.zeros->all_spectral()) {
      if (s.gamma <= 0) continue;
      const double a = (with_multiplicity_power ? ipow(s.multiplicity, k) : 1.0) * std::abs(s.alpha) /
                       std::abs(s.alpha - 1.0);
      auto it = by_gamma.lower_bound(s.gamma - 1e-9);
      if (it != by_gamma.end() && std::abs(it->first - s.gamma) < 1e-9) {
        it->second += a;
      } else {
        by_gamma.emplace(s.gamma, a);
      }
    }
  }
  std::vector<double> out;
  for (auto& [g, a] : by_gamma) out.push_back(a);
  return out;
}

}  // namespace

double variance_nu(const QuadraticZeros& z, unsigned k) {
  double s = 0;
  for (double a : grouped_amplitudes(z, k, true)) s += 2 * a * a;
  const double n = static_cast<double>(z.nonsquares);
  return s / (n * n);
}

double quadratic_race_mean(const QuadraticZeros& z, FactorFunction f, unsigned k) {
  const double sq = std::sqrt(static_cast<double>(z.ctx->field()->q()));
  const double eps = eps_of(f);
  double s = 0;
  for (auto& cz : z.characters) s += ipow(cz.zeros->m_plus - eps / 2, k);
  return (k % 2 ? -1.0 : 1.0) / static_cast<double>(z.nonsquares) * s * sq / (sq - 1);
}

double chebyshev_offset(const QuadraticZeros& z, unsigned k) {
  const double q = static_cast<double>(z.ctx->field()->q());
  const double tau1 = std::ldexp(1.0, static_cast<int>(z.ctx->omega())) - 1;
  return std::sqrt(q) / (q - 1) * tau1 / (std::ldexp(1.0, static_cast<int>(k) - 1) * static_cast<double>(z.nonsquares));
}

double chebyshev_bound(const QuadraticZeros& z, unsigned k) {
  const double off = chebyshev_offset(z, k);
  return std::clamp(1 - variance_nu(z, k) / (off * off), 0.0, 1.0);
}

BIReport B_I_report(const QuadraticZeros& z, FactorFunction f, unsigned k) {
  BIReport rep;
  const double q = static_cast<double>(z.ctx->field()->q());
  const double sq = std::sqrt(q);
  for (auto& cz : z.characters) {
    const ZeroData& d = *cz.zeros;
    for (auto& s : d.all_spectral()) rep.I_nonreal += std::norm(s.alpha / (s.alpha - 1.0));
    rep.I_all += d.m_plus * std::pow(sq / (sq - 1), 2) + d.m_minus * std::pow(sq / (sq + 1), 2);
  }
  rep.I_all += rep.I_nonreal;
  const double var = variance_nu(z, k);
  const double mean = std::abs(quadratic_race_mean(z, f, k));
  rep.B = var > 0 ? mean / std::sqrt(var) : std::numeric_limits<double>::infinity();
  const double tau1 = std::ldexp(1.0, static_cast<int>(z.ctx->omega())) - 1;
  rep.B_closed = rep.I_nonreal > 0 ? tau1 * sq / (std::ldexp(1.0, static_cast<int>(k)) * (sq - 1)) / std::sqrt(rep.I_nonreal)
                                   : std::numeric_limits<double>::infinity();
  unsigned deg = 0;
  for (auto& [P, e] : z.ctx->factorization().factors) deg += static_cast<unsigned>(P.degree());
  rep.squarefree_degree = deg;
  rep.I_approx = q / (q - 1) * tau1 * (static_cast<double>(deg) - 4) / 2;
  return rep;
}

double central_limit_normalization(const QuadraticZeros& z) {
  const double q = static_cast<double>(z.ctx->field()->q());
  return static_cast<double>(z.nonsquares) * std::sqrt(q - 1) /
         std::sqrt(q * std::ldexp(1.0, static_cast<int>(z.ctx->omega()) - 1) * z.ctx->degree());
}

MainTermSpec scaled(const MainTermSpec& spec, double factor) {
  MainTermSpec s = spec;
  s.C0 *= factor;
  s.c1 *= factor;
  for (auto& o : s.oscillators) o.c *= factor;
  return s;
}

double gaussian_mixture_distance(const MainTermSpec& spec, std::uint64_t N, double b, std::uint64_t q) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "KS distance needs N >= 1");
  auto v = scan_values(spec, N);
  std::sort(v.begin(), v.end());
  double d = 0;
  const double n = static_cast<double>(N);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double F = gaussian_mixture_cdf(v[i], b, q);
    d = std::max({d, std::abs(F - i / n), std::abs((i + 1) / n - F)});
  }
  return d;
}

Poly construct_modulus(const FieldPtr& field, double c, unsigned omega) {
  if (!(c > 0) || omega < 2) throw Error(ErrorCode::InvalidArgument, "construct_modulus needs c > 0 and omega >= 2");
  const double target = std::floor(std::ldexp(1.0, static_cast<int>(omega)) / c);
  const double least = omega * (omega + 1) / 2.0;
  if (target < least) {
    throw Error(ErrorCode::InfeasiblePartition, "floor(2^omega / c) = " + std::to_string(static_cast<long long>(target)) +
                                                    " has no partition into " + std::to_string(omega) +
                                                    " distinct degrees");
  }
  const unsigned total = static_cast<unsigned>(target);
  Poly M = Poly::constant(field, Fq(1));
  // First irreducible in odometer order, without enumerating the whole degree.
  auto smallest = [&](unsigned d) {
    for (std::uint64_t idx = 0;; ++idx) {
      Poly P = Poly::monic_from_index(field, d, idx);
      if (is_irreducible(P)) return P;
    }
  };
  for (unsigned d = 1; d < omega; ++d) M = M * smallest(d);
  M = M * smallest(total - omega * (omega - 1) / 2);
  return M;
}

namespace {

// Textbook LLL (delta = 0.99) on rows of b, long double Gram-Schmidt.
void lll(std::vector<std::vector<long double>>& b) {
  const std::size_t n = b.size();
  if (n == 0) return;
  const std::size_t dim = b[0].size();
  auto dot = [&](const std::vector<long double>& x, const std::vector<long double>& y) {
    long double s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += x[i] * y[i];
    return s;
  };
  std::vector<std::vector<long double>> bs(n), mu(n, std::vector<long double>(n, 0));
  std::vector<long double> B(n);
  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      bs[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], bs[j]) / B[j];
        for (std::size_t t = 0; t < dim; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      B[i] = dot(bs[i], bs[i]);
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  int guard = 0;
  while (k < n && guard++ < 100000) {
    for (std::size_t jj = k; jj-- > 0;) {
      const long double r = std::round(mu[k][jj]);
      if (r != 0) {
        for (std::size_t t = 0; t < dim; ++t) b[k][t] -= r * b[jj][t];
        gram_schmidt();
      }
    }
    if (B[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

}  // namespace

std::vector<std::vector<std::int64_t>> li_heuristic_scan(const std::vector<double>& angles, std::int64_t Q) {
  const std::size_t n = angles.size();
  if (Q < 1 || Q > 10000) throw Error(ErrorCode::InvalidArgument, "li scan needs 1 <= Q <= 10^4");
  std::vector<std::vector<std::int64_t>> out;
  if (n < 2) return out;
  const long double W = 1e12L;
  std::vector<std::vector<long double>> b(n, std::vector<long double>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    b[i][i] = 1;
    b[i][n] = std::round(W * angles[i]);
  }
  lll(b);
  for (auto& row : b) {
    std::vector<std::int64_t> a(n);
    bool ok = true;
    long double residual = 0, l1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(row[i]) > Q) ok = false;
      a[i] = static_cast<std::int64_t>(row[i]);
      residual += row[i] * static_cast<long double>(angles[i]);
      l1 += std::abs(row[i]);
    }
    if (!ok || l1 == 0 || std::abs(residual) > 1e-10L * l1) continue;
    auto nz = std::find_if(a.begin(), a.end(), [](std::int64_t x) { return x != 0; });
    if (*nz < 0) for (auto& x : a) x = -x;
    out.push_back(a);
  }
  return out;
}

DensityReport table1_scan(const QuadraticZeros& z, FactorFunction f, unsigned k, std::uint64_t N,
                          AngleConvention convention) {
  return density_scan(quadratic_main_term(z, f, k, convention), N);
}

bool li_conditional(const MainTermSpec& spec) {
  std::vector<double> angles{std::numbers::pi};
  for (auto& o : spec.oscillators) angles.push_back(o.gamma);
  return !li_heuristic_scan(angles, 100).empty();
}

}  // namespace fqbias
