#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fqbias/asymptotics.hpp"
#include "fqbias/errors.hpp"
#include "fqbias/expr.hpp"

using namespace fqbias;

namespace {

ContextPtr ctx_of(const FieldPtr& F, const std::string& m) { return ModulusContext::make(parse_poly_expr(m, F)); }

ContextPtr f9_central_zero_modulus() {
  auto rep = resolve_field_representation(3, 2, "t^4+2t^3+2t+a^7", {1, -6, 9});
  return ModulusContext::make(rep.modulus);
}

}  // namespace

TEST_CASE("main term of the F_9 quartic with a double central zero") {
  auto ctx = f9_central_zero_modulus();
  auto [sq, nsq] = quadratic_residues(ctx);
  const double nb = static_cast<double>(nsq.size());
  CHECK(nb == 4800);
  auto data = race_zero_data(sq, nsq);
  for (unsigned k = 1; k <= 5; ++k) {
    auto big = build_main_term(data, FactorFunction::BigOmega, k, 9);
    const double pk = std::pow(2.0, k);
    CHECK(big.sign == (k % 2 ? -1 : 1));
    CHECK(big.C0 * nb == doctest::Approx((2 + std::pow(5.0, k)) / pk * 1.5));
    CHECK(big.c1 * nb == doctest::Approx(3 / pk * 0.75));
    CHECK(big.oscillators.empty());
    auto small = build_main_term(data, FactorFunction::SmallOmega, k, 9);
    CHECK(small.sign * small.C0 * nb == doctest::Approx((2 + std::pow(-3.0, k)) / pk * 1.5));
    CHECK(small.sign * small.c1 * nb == doctest::Approx(3 / pk * 0.75));
    CHECK(small.warnings.size() == 0);
  }
  auto two = build_main_term(data, FactorFunction::BigOmega, 2, 9);
  for (std::uint64_t X = 1; X <= 200; ++X) CHECK(eval_main_term(two, X) > 0);
}

TEST_CASE("main term of t^3 - t over F_9") {
  auto ctx = ctx_of(make_field(3, 2), "t^3-t");
  auto [sq, nsq] = quadratic_residues(ctx);
  const double nb = static_cast<double>(nsq.size());
  for (unsigned k = 1; k <= 4; ++k) {
    auto m = build_main_term(sq, nsq, FactorFunction::BigOmega, k);
    const double pk = std::pow(2.0, k);
    CHECK(m.C0 * nb == doctest::Approx(7 / pk * 1.5));
    CHECK(m.c1 * nb == doctest::Approx((6 + std::pow(5.0, k)) / pk * 0.75));
  }
}

TEST_CASE("irreducible quintic over F_5: period 10") {
  auto ctx = ctx_of(make_field(5), "t^5+3t^4+4t^3+2t+2");
  auto [sq, nsq] = quadratic_residues(ctx);
  auto m = build_main_term(sq, nsq, FactorFunction::BigOmega, 1);
  REQUIRE(m.oscillators.size() == 2);
  int positive = 0;
  for (std::uint64_t X = 1; X <= 10; ++X) positive += eval_main_term(m, X) > 0;
  CHECK(positive == 6);
  for (std::uint64_t X = 1; X <= 60; ++X) CHECK(eval_main_term(m, X) == doctest::Approx(eval_main_term(m, X + 10)));
  CHECK(eval_main_term(m, 1000000000ULL) == doctest::Approx(eval_main_term(m, 10)));
}

TEST_CASE("main term is linear in the characters and real") {
  auto F5 = make_field(5);
  auto ctx = ctx_of(F5, "t^3+t+1");
  auto A = ResidueSet::from_representatives(ctx, {parse_poly_expr("t", F5), parse_poly_expr("t+2", F5)});
  auto B = ResidueSet::from_representatives(ctx, {parse_poly_expr("2", F5)});
  auto data = race_zero_data(A, B);
  for (unsigned k = 1; k <= 3; ++k) {
    auto whole = build_main_term(data, FactorFunction::BigOmega, k, 5);
    CHECK(whole.imaginary_residual < 1e-12);
    for (std::uint64_t X = 1; X <= 30; ++X) {
      double parts = 0;
      std::complex<double> complex_sum = 0;
      for (auto& cz : data) {
        auto one = build_main_term({cz}, FactorFunction::BigOmega, k, 5);
        // single character: real part of its complex contribution
        const ZeroData& z = *cz.zeros;
        const double sq = std::sqrt(5.0);
        const double hd = cz.chi.is_real() ? 0.5 : 0.0;
        std::complex<double> v = std::pow(z.m_plus + hd, k) * sq / (sq - 1) +
                                 std::pow(z.m_minus + hd, k) * sq / (sq + 1) * (X % 2 ? -1.0 : 1.0);
        for (auto& s : z.all_spectral())
          v += std::pow(s.multiplicity, k) * s.alpha / (s.alpha - 1.0) * std::polar(1.0, X * s.gamma);
        complex_sum += cz.weight * v;
        parts += one.sign * (one.C0 + (X % 2 ? -one.c1 : one.c1));
        parts += one.sign * eval_oscillation(one, X);
      }
      CHECK(std::abs(complex_sum.imag()) < 1e-9);
      CHECK(eval_main_term(whole, X) == doctest::Approx(whole.sign * complex_sum.real()).epsilon(1e-9));
      CHECK(eval_main_term(whole, X) == doctest::Approx(parts).epsilon(1e-9));
    }
  }
  auto same = build_main_term(A, A, FactorFunction::BigOmega, 2);
  CHECK(same.C0 == 0);
  CHECK(same.c1 == 0);
  CHECK(same.oscillators.empty());
  std::vector<CharacterZeros> missing{{data[0].chi, data[0].weight, std::nullopt}};
  CHECK_THROWS_AS(build_main_term(missing, FactorFunction::BigOmega, 1, 5), Error);
  auto warn = build_main_term(A, B, FactorFunction::SmallOmega, 1);
  CHECK(warn.warnings.empty());
  auto F3 = make_field(3);
  auto c3 = ctx_of(F3, "t^2+1");
  auto [s3, n3] = quadratic_residues(c3);
  CHECK(build_main_term(s3, n3, FactorFunction::SmallOmega, 1).warnings.size() == 1);
}

TEST_CASE("per-character asymptotics") {
  auto z = extract_zeros(LPolynomial::from_integers({1, -6, 9}), 9);
  for (unsigned n = 2; n <= 9; ++n) {
    double expected = -(2.0 + (n % 2 == 0 ? 1.0 : 0.0)) * std::pow(3.0, n) / n;
    CHECK(pi_fk_asymptotic(z, true, n, 1, FactorFunction::BigOmega).real() == doctest::Approx(expected));
  }
  auto F5 = make_field(5);
  auto ctx = ctx_of(F5, "t^5+3t^4+4t^3+2t+2");
  auto chi = quadratic_character(ctx, 1);
  auto zc = extract_zeros(compute_l_polynomial(chi), 5);
  for (auto f : {FactorFunction::BigOmega, FactorFunction::SmallOmega}) {
    for (unsigned k = 1; k <= 3; ++k) {
      auto table = count_table(chi, f, k, 24);
      double worst_low = 0, worst_high = 0;
      for (unsigned n = 10; n <= 24; ++n) {
        const double exact = to_double(table.exact_values[k][n]);
        const double main = pi_fk_asymptotic(zc, true, n, k, f).real();
        const double scale = std::pow(5.0, n / 2.0) * std::pow(std::log(n), k - 2.0) / n;
        double r = std::abs(exact - main) / scale;
        (n < 17 ? worst_low : worst_high) = std::max(n < 17 ? worst_low : worst_high, r);
      }
      CHECK(worst_high < 2 * worst_low + 5);
    }
  }
}

TEST_CASE("geometric log sums") {
  auto r = geometric_log_sum(2.0, 0, 10000);
  CHECK(std::abs(r.normalized - 2.0) < 1e-3);
  auto s = geometric_log_sum(-3.0, 0, 10000);
  CHECK(std::abs(s.normalized - 0.75) < 1e-3);
  auto small = geometric_log_sum(2.0, 1, 20);
  std::complex<double> direct = 0;
  for (int n = 1; n <= 20; ++n) direct += std::pow(2.0, n) * std::log(n) / n;
  CHECK(std::abs(small.partial_sum - direct) < 1e-9 * std::abs(direct));

  const std::complex<double> alpha = std::polar(std::sqrt(5.0), std::numbers::pi / 5);
  auto t = geometric_log_sum(alpha, 1, 10000);
  CHECK(std::abs(t.normalized - t.limit) < 10 / (1e4 * std::log(1e4)));
  double xs[4] = {1e3, 1e4, 1e5, 1e6}, ls[4];
  for (int i = 0; i < 4; ++i) ls[i] = std::log(std::abs(geometric_log_sum(alpha, 1, xs[i]).normalized - t.limit));
  double mx = 0, my = 0, sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) mx += std::log(xs[i]) / 4, my += ls[i] / 4;
  for (int i = 0; i < 4; ++i) sxy += (std::log(xs[i]) - mx) * (ls[i] - my), sxx += std::pow(std::log(xs[i]) - mx, 2);
  CHECK(std::abs(sxy / sxx + 1) < 0.2);
}

TEST_CASE("phase reduction at large X") {
  const double g = std::numbers::pi / 5;
  double r = reduce_phase(1000000000ULL, g);
  CHECK(std::min(r, 2 * std::numbers::pi - r) < 1e-6);
  CHECK(reduce_phase(7, 1.0) == doctest::Approx(7.0 - 2 * std::numbers::pi));
}
