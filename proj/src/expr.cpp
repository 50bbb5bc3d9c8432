#include "fqbias/expr.hpp"

#include <cctype>
#include <map>

#include "fqbias/errors.hpp"

namespace fqbias {

namespace {

struct Term {
  bool negative = false;
  bool has_coeff_int = false;
  long long coeff_int = 1;
  bool has_gen = false;
  long long gen_exp = 1;
  unsigned degree = 0;
};

class Parser {
 public:
  Parser(const std::string& s, char var, bool allow_gen) : s_(s), var_(var), allow_gen_(allow_gen) {}

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    terms.push_back(term(neg));
    for (;;) {
      skip();
      if (pos_ >= s_.size()) break;
      char c = s_[pos_];
      if (c == '+' || c == '-') {
        ++pos_;
        terms.push_back(term(c == '-'));
      } else {
        fail(pos_, "unexpected character");
      }
    }
    return terms;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) {
    if (at < s_.size() && std::isalpha(static_cast<unsigned char>(s_[at])) && s_[at] != var_ &&
        !(allow_gen_ && s_[at] == 'a')) {
      throw ParseError(ErrorCode::UnknownSymbol, at, std::string("unknown symbol '") + s_[at] + "'");
    }
    throw ParseError(ErrorCode::ParseError, at, msg);
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  long long integer() {
    skip();
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1'000'000'000LL) fail(start, "integer too large");
      ++pos_;
    }
    if (pos_ == start) fail(pos_, "expected integer");
    return v;
  }

  Term term(bool negative) {
    Term t;
    t.negative = negative;
    skip();
    const std::size_t start = pos_;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.has_coeff_int = true;
      t.coeff_int = integer();
      any = true;
    } else if (allow_gen_ && peek() == 'a') {
      ++pos_;
      t.has_gen = true;
      skip();
      if (peek() == '^') {
        ++pos_;
        t.gen_exp = integer();
      }
      any = true;
    }
    skip();
    bool star = false;
    if (any && peek() == '*') {
      ++pos_;
      star = true;
      skip();
    }
    if (peek() == var_) {
      ++pos_;
      t.degree = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        long long d = integer();
        if (d > 100000) fail(pos_, "exponent too large");
        t.degree = static_cast<unsigned>(d);
      }
      any = true;
    } else if (star) {
      fail(pos_, "expected variable");
    }
    if (!any) fail(start, "expected term");
    return t;
  }

  const std::string& s_;
  char var_;
  bool allow_gen_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly_expr(const std::string& text, const FieldPtr& field, std::optional<Fq> generator) {
  const Field& F = *field;
  Fq g = generator.value_or(F.generator());
  std::map<unsigned, Fq> acc;
  for (const Term& t : Parser(text, 't', true).parse()) {
    Fq c = F.from_int(t.coeff_int);
    if (t.has_gen) c = F.pow(g, t.gen_exp);
    if (t.negative) c = F.neg(c);
    acc[t.degree] = F.add(acc[t.degree], c);
  }
  std::vector<Fq> v(acc.rbegin()->first + 1, Fq(0));
  for (auto& [d, c] : acc) v[d] = c;
  return Poly(field, std::move(v));
}

bool mentions_generator(const std::string& text) { return text.find('a') != std::string::npos; }

std::string format_poly(const Poly& f, std::optional<Fq> generator) {
  if (f.is_zero()) return "0";
  const Field& F = f.F();
  std::string s;
  for (int i = f.degree(); i >= 0; --i) {
    Fq c = f.coeff(i);
    if (c.is_zero()) continue;
    if (!s.empty()) s += "+";
    std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    if (auto v = F.prime_value(c)) {
      if (*v != 1 || i == 0) s += std::to_string(*v);
      s += mono;
    } else {
      long long k;
      if (generator) {
        // Discrete log with respect to the supplied generator.
        const std::uint32_t n = F.q() - 1;
        std::uint32_t lg = F.log(*generator), lc = F.log(c);
        k = -1;
        for (std::uint32_t j = 0; j < n; ++j) {
          if ((std::uint64_t(j) * lg) % n == lc) {
            k = j;
            break;
          }
        }
      } else {
        k = F.log(c);
      }
      s += "a^" + std::to_string(k);
      if (i > 0) s += "*" + mono;
    }
  }
  return s;
}

FieldPtr parse_field_spec(const std::string& text) {
  // q=<int>[;def=<poly in x>]
  std::string spec;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) spec += c;
  }
  if (spec.rfind("q=", 0) != 0) throw ParseError(ErrorCode::ParseError, 0, "field spec must start with q=");
  std::size_t semi = spec.find(';');
  std::string qs = spec.substr(2, semi == std::string::npos ? std::string::npos : semi - 2);
  if (qs.empty() || qs.find_first_not_of("0123456789") != std::string::npos || qs.size() > 9) {
    throw ParseError(ErrorCode::ParseError, 2, "bad field order");
  }
  std::uint64_t q = std::stoull(qs);
  std::uint32_t p = 0;
  unsigned e = 0;
  for (std::uint64_t c = 2; c <= q; ++c) {
    if (q % c == 0) {
      p = static_cast<std::uint32_t>(c);
      break;
    }
  }
  if (p == 0) throw Error(ErrorCode::NotPrime, "field order " + qs + " is not a prime power");
  std::uint64_t v = q;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  if (v != 1) throw Error(ErrorCode::NotPrime, "field order " + qs + " is not a prime power");
  if (semi == std::string::npos) return Field::make(p, e);
  std::string rest = spec.substr(semi + 1);
  if (rest.rfind("def=", 0) != 0) throw ParseError(ErrorCode::ParseError, semi + 1, "expected def=");
  std::map<unsigned, long long> acc;
  try {
    for (const Term& t : Parser(rest.substr(4), 'x', false).parse()) {
      long long c = t.coeff_int % p;
      if (t.negative) c = p - c;
      acc[t.degree] = (acc[t.degree] + c) % p;
    }
  } catch (const ParseError& err) {
    throw ParseError(err.code(), err.offset() + semi + 5, "bad defining polynomial");
  }
  std::vector<std::uint32_t> c(acc.rbegin()->first + 1, 0);
  for (auto& [d, x] : acc) c[d] = static_cast<std::uint32_t>(x);
  while (!c.empty() && c.back() == 0) c.pop_back();
  return Field::make(p, e, c);
}

}  // namespace fqbias
