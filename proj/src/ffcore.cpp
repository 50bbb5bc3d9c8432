#include "fqbias/ffcore.hpp"

#include <algorithm>

#include "fqbias/errors.hpp"

namespace fqbias {

namespace {

constexpr std::uint32_t kAddTableLimit = 1024;

using PVec = std::vector<std::uint32_t>;

// Remainder of a modulo monic b over F_p, little-endian.
PVec prime_rem(std::uint32_t p, PVec a, const PVec& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    std::uint32_t c = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (c != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * std::uint64_t(b[i])) % p);
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_irreducible_over_prime_field(std::uint32_t p, const PVec& c) {
  if (c.size() < 2) return false;
  const unsigned e = static_cast<unsigned>(c.size() - 1);
  if (e == 1) return true;
  // Trial division by every monic polynomial of degree 1..e/2.
  for (unsigned d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    PVec g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t v = idx;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (prime_rem(p, c, g).empty()) return false;
    }
  }
  return true;
}

std::vector<PVec> prime_field_irreducibles(std::uint32_t p, unsigned e) {
  std::vector<PVec> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  PVec c(e + 1, 0);
  c[e] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (unsigned i = 0; i < e; ++i) {
      c[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (is_irreducible_over_prime_field(p, c)) out.push_back(c);
  }
  return out;
}

PVec default_defining_poly(std::uint32_t p, unsigned e) {
  if (e == 1) return {0, 1};
  std::uint64_t count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  PVec c(e + 1, 0);
  c[e] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (unsigned i = 0; i < e; ++i) {
      c[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (is_irreducible_over_prime_field(p, c)) return c;
  }
  throw Error(ErrorCode::ReduciblePoly, "no irreducible polynomial found");
}

FieldPtr Field::make(std::uint32_t p, unsigned e, std::optional<PVec> defining) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorCode::ResourceLimit, "field order exceeds 2^16");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->e_ = e;
  f->q_ = static_cast<std::uint32_t>(q);
  if (defining) {
    PVec c = *defining;
    for (auto& x : c) x %= p;
    if (c.size() != e + 1 || c.back() != 1) {
      throw Error(ErrorCode::NonMonic, "defining polynomial must be monic of degree " + std::to_string(e));
    }
    if (!is_irreducible_over_prime_field(p, c)) {
      throw Error(ErrorCode::ReduciblePoly, "defining polynomial is reducible over F_" + std::to_string(p));
    }
    f->defining_ = std::move(c);
  } else {
    f->defining_ = default_defining_poly(p, e);
  }
  f->build_tables();
  return f;
}

void Field::build_tables() {
  pow_p_.assign(e_ + 1, 1);
  for (unsigned i = 1; i <= e_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t r = 0, v = a;
    for (unsigned i = 0; i < e_; ++i) {
      std::uint32_t d = v % p_;
      v /= p_;
      r += ((p_ - d) % p_) * pow_p_[i];
    }
    neg_[a] = r;
  }
  if (q_ <= kAddTableLimit) {
    add_.resize(std::size_t(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::uint32_t r = 0, x = a, y = b;
        for (unsigned i = 0; i < e_; ++i) {
          r += ((x % p_ + y % p_) % p_) * pow_p_[i];
          x /= p_;
          y /= p_;
        }
        add_[std::size_t(a) * q_ + b] = static_cast<std::uint16_t>(r);
      }
    }
  }
  generator_ = find_generator(*this).code;
  log_.assign(q_, 0);
  exp_.assign(2 * std::size_t(q_ - 1) + 1, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    exp_[i + q_ - 1] = x;
    log_[x] = i;
    x = mul_direct(Fq(x), Fq(generator_)).code;
  }
  exp_[2 * std::size_t(q_ - 1)] = 1;
}

Fq Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Fq(static_cast<std::uint32_t>(r));
}

std::vector<std::uint32_t> Field::digits(Fq a) const {
  std::vector<std::uint32_t> d(e_);
  std::uint32_t v = a.code;
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

Fq Field::from_digits(std::span<const std::uint32_t> d) const {
  std::uint32_t r = 0;
  for (unsigned i = 0; i < e_ && i < d.size(); ++i) r += (d[i] % p_) * pow_p_[i];
  return Fq(r);
}

std::optional<std::uint32_t> Field::prime_value(Fq a) const {
  if (a.code < p_) return a.code;
  return std::nullopt;
}

Fq Field::add(Fq a, Fq b) const {
  if (!add_.empty()) return Fq(add_[std::size_t(a.code) * q_ + b.code]);
  std::uint32_t r = 0, x = a.code, y = b.code;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint32_t s = x % p_ + y % p_;
    if (s >= p_) s -= p_;
    r += s * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return Fq(r);
}

Fq Field::inv(Fq a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + describe());
  std::uint32_t l = log_[a.code];
  return Fq(exp_[l == 0 ? 0 : (q_ - 1) - l]);
}

Fq Field::pow(Fq a, std::int64_t n) const {
  if (n < 0) return pow(inv(a), -n);
  if (n == 0) return Fq(1);
  if (a.code == 0) return Fq(0);
  std::uint64_t l = (std::uint64_t(log_[a.code]) * (std::uint64_t(n) % (q_ - 1))) % (q_ - 1);
  return Fq(exp_[l]);
}

Fq Field::mul_direct(Fq a, Fq b) const {
  auto da = digits(a), db = digits(b);
  PVec prod(2 * e_ - 1, 0);
  for (unsigned i = 0; i < e_; ++i) {
    for (unsigned j = 0; j < e_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_);
    }
  }
  if (e_ == 1) return Fq(prod[0]);
  PVec r = prime_rem(p_, prod, defining_);
  return from_digits(r);
}

std::uint32_t Field::log(Fq a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "log of zero");
  return log_[a.code];
}

Fq Field::exp(std::int64_t i) const {
  std::int64_t m = i % static_cast<std::int64_t>(q_ - 1);
  if (m < 0) m += q_ - 1;
  return Fq(exp_[m]);
}

bool Field::is_square(Fq a) const {
  if (a.code == 0) return true;
  if (p_ == 2) return true;
  return log_[a.code] % 2 == 0;
}

std::uint64_t Field::order(Fq a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "order of zero");
  std::uint64_t n = q_ - 1;
  std::uint64_t l = log_[a.code];
  std::uint64_t g = n, x = l;
  while (x) {
    std::uint64_t t = g % x;
    g = x;
    x = t;
  }
  return n / g;
}

std::string Field::describe() const {
  std::string s = "q=" + std::to_string(q_);
  if (e_ > 1) {
    s += ";def=";
    bool first = true;
    for (int i = static_cast<int>(e_); i >= 0; --i) {
      std::uint32_t c = defining_[i];
      if (c == 0) continue;
      if (!first) s += "+";
      first = false;
      if (i == 0 || c != 1) s += std::to_string(c);
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
  }
  return s;
}

std::string Field::format(Fq a) const {
  if (auto v = prime_value(a)) return std::to_string(*v);
  return "a^" + std::to_string(log(a));
}

Fq find_generator(const Field& f) {
  const std::uint64_t n = f.q() - 1;
  if (n == 1) return Fq(1);
  const auto primes = prime_factors(n);
  auto pw = [&](Fq a, std::uint64_t k) {
    Fq r(1);
    while (k) {
      if (k & 1) r = f.mul_direct(r, a);
      a = f.mul_direct(a, a);
      k >>= 1;
    }
    return r;
  };
  for (std::uint32_t c = 1; c < f.q(); ++c) {
    bool ok = true;
    for (auto r : primes) {
      if (pw(Fq(c), n / r) == Fq(1)) {
        ok = false;
        break;
      }
    }
    if (ok) return Fq(c);
  }
  throw Error(ErrorCode::InvalidArgument, "no generator found");
}

}  // namespace fqbias
