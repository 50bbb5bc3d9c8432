#include <doctest.h>

#include <set>

#include "fqbias/errors.hpp"
#include "fqbias/ffcore.hpp"

using namespace fqbias;

TEST_CASE("prime field construction") {
  auto F = make_field(5);
  CHECK(F->q() == 5);
  CHECK(F->is_prime_field());
  CHECK(F->inv(Fq(2)) == Fq(3));
  CHECK(F->generator() == Fq(2));
  CHECK(make_field(3)->generator() == Fq(2));
}

TEST_CASE("non-prime characteristic rejected") {
  try {
    make_field(4);
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
}

TEST_CASE("reducible defining polynomial rejected") {
  // x^2 + 2 = (x - 1)(x + 1) over F_3
  try {
    make_field(3, 2, std::vector<std::uint32_t>{2, 0, 1});
    FAIL("expected ReduciblePoly");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReduciblePoly);
  }
}

TEST_CASE("F_9 with x^2+1") {
  auto F = make_field(3, 2, std::vector<std::uint32_t>{1, 0, 1});
  CHECK(F->q() == 9);
  const Fq x(3);  // code of x is 0 + 1*3
  CHECK(F->mul(x, x) == Fq(2));
  CHECK(F->generator() == Fq(4));  // x + 1
  CHECK(F->order(x) == 4);
  for (std::uint32_t a = 1; a < 9; ++a) CHECK(F->pow(Fq(a), 8) == Fq(1));
  CHECK(F->describe() == "q=9;def=x^2+1");
}

TEST_CASE("default defining polynomial is the smallest irreducible") {
  auto F = make_field(3, 2);
  CHECK(F->defining_poly() == std::vector<std::uint32_t>{1, 0, 1});
  auto G = make_field(5, 2);
  CHECK(is_irreducible_over_prime_field(5, G->defining_poly()));
  CHECK(G->defining_poly() == std::vector<std::uint32_t>{2, 0, 1});
}

TEST_CASE("tables agree with direct reduction and field axioms hold") {
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {2, 3}, {5, 2}, {3, 3}}) {
    auto F = make_field(p, e);
    const std::uint32_t q = F->q();
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(F->mul(Fq(a), Fq(b)) == F->mul_direct(Fq(a), Fq(b)));
        CHECK(F->sub(F->add(Fq(a), Fq(b)), Fq(b)) == Fq(a));
      }
      if (a) {
        CHECK(F->mul(Fq(a), F->inv(Fq(a))) == Fq(1));
        CHECK(F->pow(Fq(a), q - 1) == Fq(1));
      }
    }
    std::set<std::uint32_t> powers;
    for (std::uint32_t i = 0; i + 1 < q; ++i) powers.insert(F->exp(i).code);
    CHECK(powers.size() == q - 1);
  }
}

TEST_CASE("addition table matches brute-force digit arithmetic for q <= 9") {
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    auto F = make_field(p, e);
    for (std::uint32_t a = 0; a < F->q(); ++a) {
      for (std::uint32_t b = 0; b < F->q(); ++b) {
        auto da = F->digits(Fq(a)), db = F->digits(Fq(b));
        std::vector<std::uint32_t> s(e);
        for (unsigned i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
        CHECK(F->add(Fq(a), Fq(b)) == F->from_digits(s));
      }
    }
  }
}

TEST_CASE("inverse of zero raises DivisionByZero") {
  auto F = make_field(7);
  try {
    F->inv(Fq(0));
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}

TEST_CASE("field spec parsing") {
  auto F = parse_field_spec("q=9;def=x^2+1");
  CHECK(F->q() == 9);
  CHECK(F->defining_poly() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(parse_field_spec("q=5")->q() == 5);
  CHECK_THROWS_AS(parse_field_spec("q=6"), Error);
  CHECK_THROWS_AS(parse_field_spec("p=5"), ParseError);
}
