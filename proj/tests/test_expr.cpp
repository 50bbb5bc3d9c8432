#include <doctest.h>

#include <random>

#include "fqbias/errors.hpp"
#include "fqbias/expr.hpp"

using namespace fqbias;

TEST_CASE("parse examples") {
  auto F9 = make_field(3, 2, std::vector<std::uint32_t>{1, 0, 1});
  CHECK(parse_poly_expr("t^3-t", F9) == Poly::from_ints(F9, {0, 2, 0, 1}));
  auto F5 = make_field(5);
  Poly m = parse_poly_expr("t^6+2t^4+3t+1", F5);
  CHECK(m.degree() == 6);
  CHECK(m == Poly::from_ints(F5, {1, 3, 0, 0, 2, 0, 1}));
  Poly m3 = parse_poly_expr("t^4+2t^3+2t+a^7", F9);
  CHECK(m3.coeff(0) == F9->pow(F9->generator(), 7));
  CHECK(parse_poly_expr(" 2 * t ^ 2 + a ", F9).coeff(0) == F9->generator());
  CHECK(parse_poly_expr("-1", F5) == Poly::from_ints(F5, {4}));
  CHECK(parse_poly_expr("t+t", F5) == Poly::from_ints(F5, {0, 2}));
}

TEST_CASE("parse errors carry offsets") {
  auto F5 = make_field(5);
  try {
    parse_poly_expr("t^^2", F5);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
    CHECK(e.code() == ErrorCode::ParseError);
  }
  try {
    parse_poly_expr("t^2+y", F5);
    FAIL("expected UnknownSymbol");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::UnknownSymbol);
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_poly_expr("", F5), ParseError);
  CHECK_THROWS_AS(parse_poly_expr("t+", F5), ParseError);
  CHECK_THROWS_AS(parse_poly_expr("2*", F5), ParseError);
}

TEST_CASE("format/parse round trip") {
  std::mt19937_64 rng(3);
  for (unsigned q : {3u, 5u, 9u, 25u}) {
    auto F = (q == 9) ? make_field(3, 2) : (q == 25 ? make_field(5, 2) : make_field(q));
    for (int it = 0; it < 200; ++it) {
      std::vector<Fq> c(1 + rng() % 8);
      for (auto& x : c) x = Fq(static_cast<std::uint32_t>(rng() % q));
      Poly f(F, c);
      std::string s = format_poly(f);
      Poly g = parse_poly_expr(s, F);
      CHECK(g == f);
      CHECK(format_poly(g) == s);
    }
  }
  auto F9 = make_field(3, 2);
  Fq other = F9->pow(F9->generator(), 3);
  Poly f = parse_poly_expr("t^2+a^5*t+a", F9, other);
  CHECK(parse_poly_expr(format_poly(f, other), F9, other) == f);
}
