#include <doctest.h>

#include <cmath>
#include <random>

#include "fqbias/counting.hpp"
#include "fqbias/errors.hpp"
#include "fqbias/expr.hpp"

using namespace fqbias;

namespace {

ContextPtr ctx_of(const FieldPtr& F, const std::string& m) { return ModulusContext::make(parse_poly_expr(m, F)); }

ResidueSet singleton(const ContextPtr& ctx, const std::string& rep) {
  return ResidueSet::from_representatives(ctx, {parse_poly_expr(rep, ctx->field())}, rep);
}

std::complex<double> irreducible_sum(const Character& chi, unsigned n) {
  std::complex<double> s = 0;
  for (auto& P : enumerate_irreducibles(chi.context()->field(), n)) s += chi.evaluate(P);
  return s;
}

}  // namespace

TEST_CASE("prime sums match irreducible enumeration") {
  auto F3 = make_field(3);
  auto ctx = ctx_of(F3, "t^2+1");
  auto chi = quadratic_character(ctx, 1);
  auto S = PrimeSums(chi, 8);
  CHECK(S.exact());
  Int linear = 0;
  for (int c = 0; c < 3; ++c) linear += chi.real_value(parse_poly_expr("t+" + std::to_string(c), F3));
  CHECK(S.exact_value(1) == linear);
  CHECK(S.psi(1).value == S.value(1).value);

  std::mt19937_64 rng(5);
  for (auto [p, e, deg, nmax] : {std::tuple{3u, 1u, 4u, 8u}, {5u, 1u, 3u, 6u}, {3u, 2u, 2u, 4u}}) {
    auto F = make_field(p, e);
    for (int trial = 0; trial < 4; ++trial) {
      Poly M = Poly::monic_from_index(F, deg, rng() % checked_power(F->q(), deg));
      auto c = ModulusContext::make(M);
      auto chars = all_characters(c);
      for (int pick = 0; pick < 3; ++pick) {
        auto& x = chars[rng() % chars.size()];
        PrimeSums ps(x, nmax);
        for (unsigned n = 1; n <= nmax; ++n) {
          auto v = ps.value(n);
          CHECK(std::abs(v.value - irreducible_sum(x, n)) < 1e-6);
          CHECK(v.error < 1e-6);
          if (ps.exact()) CHECK(to_double(ps.exact_value(n)) == doctest::Approx(irreducible_sum(x, n).real()));
        }
      }
    }
  }
}

TEST_CASE("irreducible quintic: degree-5 prime sum") {
  auto F5 = make_field(5);
  auto ctx = ctx_of(F5, "t^5+3t^4+4t^3+2t+2");
  auto chi = quadratic_character(ctx, 1);
  PrimeSums ps(chi, 5);
  CHECK(ps.value(5).value.real() == doctest::Approx(irreducible_sum(chi, 5).real()));
  CHECK(ps.psi(1).value.real() == ps.value(1).value.real());
}

TEST_CASE("recursions agree with the product oracle for every character") {
  std::mt19937_64 rng(11);
  for (auto [p, nmax] : {std::pair{3u, 9u}, std::pair{5u, 6u}}) {
    auto F = make_field(p);
    for (unsigned deg = 1; deg <= 4; ++deg) {
      Poly M = Poly::monic_from_index(F, deg, rng() % checked_power(F->q(), deg));
      auto ctx = ModulusContext::make(M);
      auto chars = all_characters(ctx);
      for (auto f : {FactorFunction::BigOmega, FactorFunction::SmallOmega}) {
        ClassCountOracle oracle(ctx, f, 4, nmax);
        std::size_t step = std::max<std::size_t>(1, chars.size() / 12);
        for (std::size_t i = 0; i < chars.size(); i += step) {
          auto table = count_table(chars[i], f, 4, nmax);
          CHECK(table.reliable());
          for (unsigned k = 0; k <= 4; ++k) {
            for (unsigned n = 0; n <= nmax; ++n) {
              auto want = oracle.character_sum(chars[i], n, k);
              auto got = table.at(k, n);
              if (table.exact) {
                CHECK(to_double(table.exact_values[k][n]) == doctest::Approx(want.real()).epsilon(1e-12));
              } else {
                CHECK(std::abs(got.value - want) < 1e-6 * std::max(1.0, std::abs(want)));
              }
            }
          }
        }
        // omega_1 adds the proper prime powers to Omega_1.
        PrimeSums ps(chars.back(), nmax);
        auto a = count_table(ps, FactorFunction::BigOmega, 1);
        auto b = count_table(ps, FactorFunction::SmallOmega, 1);
        for (unsigned n = 1; n <= nmax; ++n) {
          std::complex<double> powers = 0;
          for (unsigned j = 2; j <= n; ++j)
            if (n % j == 0) powers += ps.value(n / j, j).value;
          CHECK(std::abs(b.at(1, n).value - a.at(1, n).value - powers) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("class counts") {
  auto F3 = make_field(3);
  auto ctx = ctx_of(F3, "t");
  auto one = singleton(ctx, "1");
  CHECK(pi_fk_by_class_bruteforce(ctx, 2, 2, FactorFunction::BigOmega, one) == 2);
  CHECK(pi_fk_by_class_bruteforce(ctx, 2, 3, FactorFunction::BigOmega, one) == 0);
  ClassCountOracle oracle(ctx, FactorFunction::BigOmega, 3, 2);
  CHECK(oracle.count(2, 2, one) == 2);
  // omega_1 in degree 2 over F_3 mod t: irreducible quadratics plus the squares (t+1)^2, (t+2)^2.
  auto chi_t = all_characters(ctx)[1];
  std::complex<double> want = 0;
  for (auto& N : enumerate_monic(F3, 2)) {
    if (N.coeff(0).code != 0 && factorize(N).small_omega() == 1) want += chi_t.evaluate(N);
  }
  CHECK(std::abs(pi_small_omega_k(chi_t, 2, 1).value - want) < 1e-12);
  CHECK(std::abs(pi_omega_k(chi_t, 1, 1).value - pi_f1(chi_t, 1).value) < 1e-12);

  auto F5 = make_field(5);
  auto cha = ctx_of(F5, "t^5+3t^4+4t^3+2t+2");
  auto [sq, nsq] = quadratic_residues(cha);
  auto brute = pi_fk_by_class_bruteforce(cha, 3, 1, FactorFunction::BigOmega, sq);
  // Squares: (|sq|/phi) (pi(chi0) + pi(chi_M)).
  auto chi = quadratic_character(cha, 1);
  auto principal = count_table(Character::principal(cha), FactorFunction::BigOmega, 1, 3).exact_values[1][3];
  auto quad = count_table(chi, FactorFunction::BigOmega, 1, 3).exact_values[1][3];
  CHECK(static_cast<Int>(brute) * 2 == principal + quad);
  CHECK(principal == static_cast<Int>(enumerate_irreducibles(F5, 3).size()));
}

TEST_CASE("class counts from characters are nonnegative integers and partition the coprime polynomials") {
  auto F3 = make_field(3);
  auto ctx = ctx_of(F3, "t^3+2t+1");
  auto chars = all_characters(ctx);
  const unsigned N = 7, K = 7;
  std::vector<CountTable> tables;
  for (auto& c : chars) tables.push_back(count_table(c, FactorFunction::BigOmega, K, N));
  for (unsigned n = 1; n <= N; ++n) {
    double total = 0;
    for (unsigned k = 0; k <= K; ++k) {
      for (std::uint64_t g = 0; g < ctx->phi(); g += 5) {
        std::complex<double> s = 0;
        for (std::size_t i = 0; i < chars.size(); ++i) s += std::conj(chars[i].value(g)) * tables[i].at(k, n).value;
        s /= static_cast<double>(ctx->phi());
        CHECK(std::abs(s.imag()) < 1e-6);
        CHECK(std::abs(s.real() - std::round(s.real())) < 1e-6);
        CHECK(s.real() > -1e-6);
      }
      total += tables[0].at(k, n).value.real();
    }
    std::uint64_t coprime = 0;
    for (auto& f : enumerate_monic(F3, n)) coprime += ctx->group_index(f).has_value();
    CHECK(total == doctest::Approx(static_cast<double>(coprime)));
  }
}

TEST_CASE("Omega and omega agree on squarefree polynomials") {
  auto F3 = make_field(3);
  for (unsigned n = 1; n <= 6; ++n) {
    for (auto& N : enumerate_monic(F3, n)) {
      if (!is_squarefree(N)) continue;
      auto fac = factorize(N);
      CHECK(factor_count(fac, FactorFunction::BigOmega) == factor_count(fac, FactorFunction::SmallOmega));
    }
  }
}

TEST_CASE("race series") {
  auto F3 = make_field(3);
  auto ctx = ctx_of(F3, "t");
  auto A = singleton(ctx, "1"), B = singleton(ctx, "2");
  auto same = delta_fk_exact(A, A, FactorFunction::BigOmega, 1, 6);
  for (double d : same.delta) CHECK(d == 0.0);

  auto rec = delta_fk_exact(A, B, FactorFunction::BigOmega, 1, 3);
  REQUIRE(rec.X.front() == 2);
  // Irreducibles of degree <= 3 with constant term 1 minus those with constant term 2.
  long diff = 0;
  for (unsigned n = 1; n <= 3; ++n) {
    for (auto& P : enumerate_irreducibles(F3, n)) {
      int c = P.coeff(0).code;
      diff += c == 1 ? 1 : c == 2 ? -1 : 0;
    }
  }
  CHECK(rec.difference.back() == doctest::Approx(static_cast<double>(diff)));
  CHECK(rec.delta.back() == doctest::Approx(diff * 3.0 / std::pow(3.0, 1.5)));

  auto F5 = make_field(5);
  auto two = ctx_of(F5, "t^2+2");
  auto [sq, nsq] = quadratic_residues(two);
  for (auto f : {FactorFunction::BigOmega, FactorFunction::SmallOmega}) {
    for (unsigned k = 1; k <= 3; ++k) {
      auto r = delta_fk_exact(sq, nsq, f, k, 7);
      auto e = delta_fk_exact(sq, nsq, f, k, 7, CountMethod::Enumeration);
      for (std::size_t i = 0; i < r.delta.size(); ++i) CHECK(r.delta[i] == doctest::Approx(e.delta[i]));
    }
  }
  auto s1 = singleton(two, "t"), s2 = singleton(two, "t+1");
  auto r = delta_fk_exact(s1, s2, FactorFunction::BigOmega, 2, 6);
  auto e = delta_fk_exact(s1, s2, FactorFunction::BigOmega, 2, 6, CountMethod::Enumeration);
  for (std::size_t i = 0; i < r.delta.size(); ++i) CHECK(r.delta[i] == doctest::Approx(e.delta[i]));
  CHECK_THROWS_AS(delta_fk_exact(s1, s2, FactorFunction::BigOmega, 2, 1), Error);
}

TEST_CASE("count tables of powers reuse the tower") {
  auto F5 = make_field(5);
  auto ctx = ModulusContext::make(parse_poly_expr("t^3+t+1", F5));
  Character chi;
  for (auto& c : all_characters(ctx)) {
    if (c.order() > chi.order()) chi = c;
  }
  PrimeSums sums(chi, 8);
  for (std::uint64_t j = 1; j < chi.order(); j += 5) {
    auto direct = count_table(chi.pow(static_cast<std::int64_t>(j)), FactorFunction::SmallOmega, 3, 8);
    auto shared = count_table(sums, FactorFunction::SmallOmega, 3, j);
    for (unsigned k = 1; k <= 3; ++k)
      for (unsigned n = 1; n <= 8; ++n) CHECK(std::abs(direct.at(k, n).value - shared.at(k, n).value) < 1e-6);
  }
}
