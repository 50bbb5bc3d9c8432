#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fqbias/bias.hpp"
#include "fqbias/errors.hpp"
#include "fqbias/expr.hpp"

using namespace fqbias;

namespace {

const QuadraticZeros& two_cubics_f5() {
  static const QuadraticZeros z =
      quadratic_zero_data(ModulusContext::make(parse_poly_expr("t^6+2t^4+3t+1", make_field(5))));
  return z;
}

const QuadraticZeros& irreducible_quintic_f5() {
  static const QuadraticZeros z =
      quadratic_zero_data(ModulusContext::make(parse_poly_expr("t^5+3t^4+4t^3+2t+2", make_field(5))));
  return z;
}

const QuadraticZeros& central_zero_quartic_f9() {
  static const QuadraticZeros z = quadratic_zero_data(
      ModulusContext::make(resolve_field_representation(3, 2, "t^4+2t^3+2t+a^7", {1, -6, 9}).modulus));
  return z;
}

const QuadraticZeros& split_cubic_f9() {
  static const QuadraticZeros z = quadratic_zero_data(ModulusContext::make(parse_poly_expr("t^3-t", make_field(3, 2))));
  return z;
}

double j0_trapezoid(double z) {
  // Periodic integrand: the trapezoid rule converges geometrically.
  const int n = 4000;
  double s = 0;
  for (int i = 0; i < n; ++i) s += std::cos(z * std::cos(2 * std::numbers::pi * i / n));
  return s / n;
}

MainTermSpec random_spec(std::mt19937_64& rng, std::size_t oscillators) {
  std::uniform_real_distribution<double> u(-1, 1), ang(0.1, 3.0);
  MainTermSpec s;
  s.sign = u(rng) < 0 ? -1 : 1;
  s.C0 = u(rng);
  s.c1 = u(rng);
  for (std::size_t j = 0; j < oscillators; ++j) s.oscillators.push_back({ang(rng) + 1e-3 * j, {u(rng), u(rng)}});
  std::sort(s.oscillators.begin(), s.oscillators.end(), [](auto& a, auto& b) { return a.gamma < b.gamma; });
  return s;
}

std::uint64_t positives(const QuadraticZeros& z, FactorFunction f, unsigned k, int orientation, std::uint64_t& den) {
  auto r = density_scan(quadratic_main_term(z, f, k), 1000, orientation);
  REQUIRE(r.exact);
  den = r.denominator;
  return r.numerator;
}

}  // namespace

TEST_CASE("Bessel J0 against the integral representation") {
  for (double z = 0; z <= 60; z += 0.37) CHECK(std::abs(bessel_j0(z) - j0_trapezoid(z)) < 1e-10);
  CHECK(bessel_j0(-3.1) == bessel_j0(3.1));
  CHECK(bessel_j0(0) == 1);
}

TEST_CASE("Gaussian mixture CDF") {
  CHECK(gaussian_mixture_cdf(0, 0, 5) == doctest::Approx(0.5).epsilon(1e-15));
  // Midpoint rule on the mixture density.
  const double b = 0.7, sq = std::sqrt(5.0);
  const double m1 = 2 * b / (sq + 1), m2 = 2 * b * sq / (sq + 1);
  double acc = 0, x = -12;
  const double h = 1e-4;
  for (; x < 0.9; x += h) {
    const double t = x + h / 2;
    acc += h * 0.5 * (std::exp(-(t - m1) * (t - m1) / 2) + std::exp(-(t - m2) * (t - m2) / 2)) /
           std::sqrt(2 * std::numbers::pi);
  }
  CHECK(std::abs(gaussian_mixture_cdf(x, b, 5) - acc) < 1e-8);
}

TEST_CASE("rational multiples of pi and periods") {
  auto a = rational_multiple_of_pi(std::numbers::pi / 5);
  REQUIRE(a);
  CHECK(a->first == 1);
  CHECK(a->second == 5);
  a = rational_multiple_of_pi(2 * std::numbers::pi / 5);
  REQUIRE(a);
  CHECK(a->first == 2);
  CHECK(!rational_multiple_of_pi(std::atan(std::sqrt(19.0))));
  CHECK(!rational_multiple_of_pi(std::numbers::pi / 5 + 1e-9));

  auto spec = quadratic_main_term(irreducible_quintic_f5(), FactorFunction::BigOmega, 1);
  CHECK(detect_period(spec) == 10u);
  MainTermSpec constant;
  constant.C0 = 2;
  CHECK(detect_period(constant) == 1u);
  CHECK(!detect_period(quadratic_main_term(two_cubics_f5(), FactorFunction::BigOmega, 1)));
}

TEST_CASE("periodic densities of the irreducible quintic over F_5") {
  const auto& z = irreducible_quintic_f5();
  std::uint64_t den = 0;
  for (unsigned k = 1; k <= 6; ++k) {
    const auto p = positives(z, FactorFunction::BigOmega, k, k % 2 ? -1 : 1, den);
    CHECK(p * 10 == 4 * den);
  }
  const auto p1 = positives(z, FactorFunction::SmallOmega, 1, 1, den);
  CHECK(p1 * 10 == 7 * den);
  for (unsigned k = 2; k <= 6; ++k) {
    const auto p = positives(z, FactorFunction::SmallOmega, k, k % 2 ? 1 : -1, den);
    CHECK(p * 10 == 6 * den);
  }
}

TEST_CASE("exact period density equals the long scan") {
  for (auto* z : {&irreducible_quintic_f5(), &split_cubic_f9(), &central_zero_quartic_f9()}) {
    for (unsigned k = 1; k <= 3; ++k) {
      auto spec = quadratic_main_term(*z, FactorFunction::BigOmega, k);
      auto exact = density_scan(spec, 1);
      REQUIRE(exact.exact);
      auto values = scan_values(spec, exact.period * 1000);
      std::uint64_t pos = 0;
      for (double v : values) pos += v > 1e-9;
      CHECK(pos == exact.positive_count * 1000);
    }
  }
}

TEST_CASE("complete and unbiased races over F_9") {
  std::uint64_t den = 0;
  for (auto f : {FactorFunction::BigOmega, FactorFunction::SmallOmega}) {
    for (unsigned k = 2; k <= 6; ++k) {
      const int s = k % 2 ? -1 : 1;
      CHECK(positives(central_zero_quartic_f9(), f, k, s, den) == 1);
      CHECK(den == 1);
      const auto p = positives(split_cubic_f9(), f, k, 1, den);
      CHECK(p * 2 == den);
    }
  }
  CHECK(positives(split_cubic_f9(), FactorFunction::BigOmega, 1, 1, den) == 0);
  const auto p = positives(split_cubic_f9(), FactorFunction::SmallOmega, 1, 1, den);
  CHECK(p == den);
}

TEST_CASE("two cubics over F_5: scaled published bias rows") {
  const auto& z = two_cubics_f5();
  auto printed = table1_scan(z, FactorFunction::BigOmega, 1, 10000000);
  CHECK(!printed.exact);
  CHECK(std::abs(printed.density - 0.194355543) < 5e-3);
  auto omega = table1_scan(z, FactorFunction::SmallOmega, 2, 10000000);
  CHECK(std::abs(omega.density - 0.563506459) < 5e-3);
  // The zero-derived angles give a visibly different first row.
  auto derived = table1_scan(z, FactorFunction::BigOmega, 1, 10000000, AngleConvention::ZeroDerived);
  CHECK(std::abs(derived.density - printed.density) > 0.01);
  CHECK(printed.positive_count + printed.negative_count + printed.zero_count == printed.N);
  auto twice = table1_scan(z, FactorFunction::BigOmega, 1, 20000000);
  CHECK(std::abs(twice.density - printed.density) < 2e-3);
}

TEST_CASE("distribution statistics") {
  MainTermSpec constant;
  constant.C0 = 1.25;
  auto c = distribution_stats(constant, 1000);
  CHECK(c.mean == doctest::Approx(1.25));
  CHECK(c.variance == doctest::Approx(0).epsilon(1e-20));

  const auto& cha = irreducible_quintic_f5();
  auto spec = quadratic_main_term(cha, FactorFunction::BigOmega, 1);
  const double expect = -(1.0 / 1562) * 0.5 * std::sqrt(5.0) / (std::sqrt(5.0) - 1);
  CHECK(cha.nonsquares == 1562);
  CHECK(quadratic_race_mean(cha, FactorFunction::BigOmega, 1) == doctest::Approx(expect));
  auto d = distribution_stats(spec, 10000);
  CHECK(d.closed_mean == doctest::Approx(expect));
  CHECK(d.mean == doctest::Approx(expect));

  for (auto* z : {&two_cubics_f5(), &irreducible_quintic_f5(), &central_zero_quartic_f9(), &split_cubic_f9()}) {
    for (auto f : {FactorFunction::BigOmega, FactorFunction::SmallOmega}) {
      for (unsigned k = 1; k <= 3; ++k) {
        auto s = quadratic_main_term(*z, f, k);
        const std::uint64_t N = 100000;
        auto st = distribution_stats(s, N);
        CHECK(st.support_violations == 0);
        CHECK(std::abs(st.mean - quadratic_race_mean(*z, f, k)) <= 5 * std::sqrt(st.closed_variance / N) + 1e-15);
        std::uint64_t mass = 0;
        for (auto h : st.histogram) mass += h;
        CHECK(mass == N);
        CHECK(st.mean >= st.support_lo);
        CHECK(st.mean <= st.support_hi);
      }
    }
  }
}

TEST_CASE("random specs: support, moments and characteristic function") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 12; ++trial) {
    auto s = random_spec(rng, 1 + trial % 4);
    const std::uint64_t N = 200000;
    auto st = distribution_stats(s, N);
    CHECK(st.support_violations == 0);
    CHECK(std::abs(st.mean - st.closed_mean) < 5 * std::sqrt(st.closed_variance / N) + 1e-3);
    CHECK(std::abs(st.variance - st.closed_variance) < 0.02 * st.closed_variance + 1e-3);
    for (double xi : {0.5, 1.0, 2.0}) {
      auto emp = empirical_characteristic_function(s, xi, N);
      CHECK(std::abs(emp - fourier_mu(s, xi)) < 1e-2);
    }
  }
}

TEST_CASE("Fourier transform") {
  MainTermSpec single;
  single.C0 = 0.3;
  single.oscillators.push_back({1.0, {0.4, -0.3}});
  CHECK(std::abs(fourier_mu(single, 0) - 1.0) < 1e-15);
  const double xi = 1.7;
  CHECK(std::abs(fourier_mu(single, xi) - std::polar(1.0, -0.3 * xi) * bessel_j0(2 * 0.5 * xi)) < 1e-14);

  // Raw units: values are O(1/|nonsquares|) so both formulas are near 1.
  const auto& z = two_cubics_f5();
  auto spec = quadratic_main_term(z, FactorFunction::BigOmega, 1, AngleConvention::PrintedDisplay);
  CHECK(li_conditional(spec));
  for (double x : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(empirical_characteristic_function(spec, x, 1000000) - fourier_mu(spec, x)) < 5e-3);
  }
  // Rescaled, the angle pi - theta_1 shares a torus coordinate with theta_1.
  auto big = scaled(spec, static_cast<double>(z.nonsquares));
  for (double x : {0.5, 1.0, 2.0}) {
    auto emp = empirical_characteristic_function(big, x, 1000000);
    CHECK(std::abs(emp - fourier_mu_merged(big, x)) < 5e-3);
  }
  CHECK(std::abs(empirical_characteristic_function(big, 0.5, 1000000) - fourier_mu(big, 0.5)) > 0.1);
}

TEST_CASE("k-limit classification") {
  for (auto f : {FactorFunction::BigOmega, FactorFunction::SmallOmega}) {
    auto a = k_limit_classify(two_cubics_f5(), f);
    CHECK(a.kind == KLimitClass::SymmetricDissipating);
    CHECK(a.m_f_max == 2);
    CHECK(a.symmetry_defect < 1e-2);
    auto b = k_limit_classify(central_zero_quartic_f9(), f);
    CHECK(b.kind == KLimitClass::DiracExtreme);
    CHECK(b.m_f_max == (f == FactorFunction::BigOmega ? 2.5 : 1.5));
    auto c = k_limit_classify(split_cubic_f9(), f);
    CHECK(c.kind == KLimitClass::HalfDiracUnbiased);
  }
  CHECK(to_string(KLimitClass::MixedReal) == "mixed-real");
}

TEST_CASE("Chebyshev bound and variance of the oscillating part") {
  CHECK(variance_nu(central_zero_quartic_f9(), 3) == 0);
  CHECK(chebyshev_bound(central_zero_quartic_f9(), 3) == 1);

  const auto& cha = irreducible_quintic_f5();
  double var = 0;
  for (int j : {1, 2}) {
    const auto alpha = std::polar(std::sqrt(5.0), j * std::numbers::pi / 5);
    var += 2 * std::norm(std::abs(alpha) / std::abs(alpha - 1.0));
  }
  var /= 1562.0 * 1562.0;
  CHECK(variance_nu(cha, 1) == doctest::Approx(var));
  const double off = std::sqrt(5.0) / 4 * 1 / (1 * 1562.0);
  CHECK(chebyshev_offset(cha, 1) == doctest::Approx(off));
  CHECK(chebyshev_bound(cha, 1) == doctest::Approx(std::clamp(1 - var / (off * off), 0.0, 1.0)));
  // Larger k shrinks the offset, never the variance here.
  CHECK(chebyshev_bound(cha, 2) <= chebyshev_bound(cha, 1));
  // Variance matches the oscillating part of the scan.
  auto st = distribution_stats(quadratic_main_term(cha, FactorFunction::BigOmega, 1), 1000);
  CHECK(st.closed_variance - std::pow(quadratic_main_term(cha, FactorFunction::BigOmega, 1).c1, 2) ==
        doctest::Approx(var));
}

TEST_CASE("B(M) and I(M)") {
  auto r = B_I_report(central_zero_quartic_f9(), FactorFunction::BigOmega, 1);
  CHECK(r.I_all == doctest::Approx(4.5));
  CHECK(r.I_nonreal == 0);

  const auto& cha = irreducible_quintic_f5();
  double I = 0;
  for (int j : {1, -1, 2, -2}) {
    const auto alpha = std::polar(std::sqrt(5.0), j * std::numbers::pi / 5);
    I += std::norm(alpha / (alpha - 1.0));
  }
  auto b1 = B_I_report(cha, FactorFunction::BigOmega, 1);
  auto b2 = B_I_report(cha, FactorFunction::BigOmega, 2);
  CHECK(b1.I_nonreal == doctest::Approx(I));
  CHECK(b1.I_all == doctest::Approx(I));
  CHECK(b2.B / b1.B == doctest::Approx(0.5));
  CHECK(b1.B == doctest::Approx(b1.B_closed));
  CHECK(b1.squarefree_degree == 5);
  CHECK(b1.I_approx == doctest::Approx(5.0 / 4 * 1 * 0.5));
}

TEST_CASE("Gaussian mixture distance") {
  MainTermSpec dirac;
  CHECK(gaussian_mixture_distance(dirac, 100000, 0, 5) == doctest::Approx(0.5));
  dirac.C0 = 100;
  CHECK(gaussian_mixture_distance(dirac, 1000, 0.3, 5) == doctest::Approx(1.0));
}

TEST_CASE("modulus construction") {
  auto F5 = make_field(5);
  auto M = construct_modulus(F5, 1, 3);
  CHECK(M.degree() == 8);
  auto fac = factorize(M);
  CHECK(fac.small_omega() == 3);
  CHECK(fac.big_omega() == 3);
  std::vector<int> degs;
  for (auto& [P, e] : fac.factors) degs.push_back(P.degree());
  std::sort(degs.begin(), degs.end());
  CHECK(degs == std::vector<int>{1, 2, 5});
  for (unsigned d = 2; d <= 6; ++d) {
    auto M1 = construct_modulus(F5, 4.0 / (d + 1.5), 2);
    CHECK(M1 == enumerate_irreducibles(F5, 1).front() * enumerate_irreducibles(F5, d).front());
  }
  CHECK_THROWS_AS(construct_modulus(make_field(3), 2, 4), Error);
  try {
    construct_modulus(make_field(3), 2, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasiblePartition);
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cd(0.3, 2.0);
  for (int t = 0; t < 20; ++t) {
    const unsigned w = 2 + t % 3;
    const double c = cd(rng);
    const unsigned target = static_cast<unsigned>(std::floor(std::ldexp(1.0, w) / c));
    if (target < w * (w + 1) / 2) {
      CHECK_THROWS(construct_modulus(F5, c, w));
      continue;
    }
    auto N = construct_modulus(F5, c, w);
    CHECK(static_cast<unsigned>(N.degree()) == target);
    auto fn = factorize(N);
    CHECK(fn.small_omega() == w);
    CHECK(fn.big_omega() == w);
  }
}

TEST_CASE("heuristic linear independence scan") {
  const double pi = std::numbers::pi;
  auto rel = li_heuristic_scan({pi, pi / 5, 2 * pi / 5}, 100);
  CHECK(rel.size() == 2);
  for (auto& a : rel) CHECK(std::abs(a[0] * pi + a[1] * pi / 5 + a[2] * 2 * pi / 5) < 1e-12);
  CHECK(li_heuristic_scan({pi}, 100).empty());

  const double t1 = pi - std::atan(std::sqrt(19.0)), t2 = pi - std::atan(std::sqrt(11.0) / 3);
  CHECK(li_heuristic_scan({pi, t1, t2}, 100).empty());
  // Exhaustive oracle over |a_i| <= 100 for the same angles.
  bool found = false;
  for (int a = -100; a <= 100 && !found; ++a) {
    for (int b = -100; b <= 100 && !found; ++b) {
      const double r = -(a * t1 + b * t2) / pi;
      const double c = std::round(r);
      if ((a || b) && std::abs(c) <= 100 && std::abs(c * pi + a * t1 + b * t2) < 1e-10 * (std::abs(a) + std::abs(b) + std::abs(c))) found = true;
    }
  }
  CHECK(!found);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::uniform_int_distribution<int> ci(-7, 7);
  for (int t = 0; t < 10; ++t) {
    const double x = u(rng), y = u(rng);
    const int p = ci(rng), q = ci(rng);
    const double zed = p * x + q * y;  // planted relation p x + q y - z = 0
    auto r = li_heuristic_scan({x, y, zed}, 100);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0][0] * x + r[0][1] * y + r[0][2] * zed) < 1e-9);
  }
}
