#include "fqbias/poly.hpp"

#include <algorithm>
#include <limits>

#include "fqbias/errors.hpp"

namespace fqbias {

Poly::Poly(FieldPtr f, std::vector<Fq> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Poly::check_same_field(const Poly& o) const {
  if (field_ == o.field_) return;
  if (!field_ || !o.field_ || !field_->same_as(*o.field_)) {
    throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
  }
}

Poly Poly::constant(FieldPtr f, Fq c) { return Poly(std::move(f), std::vector<Fq>{c}); }

Poly Poly::monomial(FieldPtr f, Fq c, unsigned deg) {
  std::vector<Fq> v(deg + 1, Fq(0));
  v[deg] = c;
  return Poly(std::move(f), std::move(v));
}

Poly Poly::from_ints(FieldPtr f, std::initializer_list<long long> c) {
  return from_ints(std::move(f), std::vector<long long>(c));
}

Poly Poly::from_ints(FieldPtr f, const std::vector<long long>& c) {
  std::vector<Fq> v;
  v.reserve(c.size());
  for (long long x : c) v.push_back(f->from_int(x));
  return Poly(std::move(f), std::move(v));
}

Poly Poly::from_code(FieldPtr f, std::uint64_t code) {
  std::vector<Fq> v;
  const std::uint64_t q = f->q();
  while (code) {
    v.push_back(Fq(static_cast<std::uint32_t>(code % q)));
    code /= q;
  }
  return Poly(std::move(f), std::move(v));
}

Poly Poly::monic_from_index(FieldPtr f, unsigned n, std::uint64_t idx) {
  std::vector<Fq> v(n + 1);
  const std::uint64_t q = f->q();
  for (unsigned i = 0; i < n; ++i) {
    v[i] = Fq(static_cast<std::uint32_t>(idx % q));
    idx /= q;
  }
  v[n] = Fq(1);
  return Poly(std::move(f), std::move(v));
}

std::uint64_t Poly::code() const {
  std::uint64_t r = 0;
  const std::uint64_t q = field_->q();
  for (std::size_t i = c_.size(); i-- > 0;) r = r * q + c_[i].code;
  return r;
}

std::uint64_t Poly::monic_index() const {
  if (!is_monic()) throw Error(ErrorCode::NonMonic, "monic_index of non-monic polynomial");
  std::uint64_t r = 0;
  const std::uint64_t q = field_->q();
  for (std::size_t i = c_.size() - 1; i-- > 0;) r = r * q + c_[i].code;
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPoly, "monic of zero polynomial");
  return scaled(field_->inv(lead()));
}

Poly Poly::scaled(Fq s) const {
  std::vector<Fq> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->mul(c_[i], s);
  return Poly(field_, std::move(v));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(field_);
  std::vector<Fq> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    v[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<long long>(i % field_->p())));
  }
  return Poly(field_, std::move(v));
}

Poly Poly::shifted(unsigned k) const {
  if (is_zero()) return *this;
  std::vector<Fq> v(k, Fq(0));
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(field_, std::move(v));
}

Fq Poly::eval(Fq x) const {
  Fq r(0);
  for (std::size_t i = c_.size(); i-- > 0;) r = field_->add(field_->mul(r, x), c_[i]);
  return r;
}

Poly Poly::operator-() const {
  std::vector<Fq> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->neg(c_[i]);
  return Poly(field_, std::move(v));
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_field(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Fq(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same_field(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Fq(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same_field(b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  const Field& F = *a.field_;
  std::vector<Fq> v(a.c_.size() + b.c_.size() - 1, Fq(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      v[i + j] = F.add(v[i + j], F.mul(a.c_[i], b.c_[j]));
    }
  }
  return Poly(a.field_, std::move(v));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.c_ != b.c_) return false;
  if (a.field_ == b.field_) return true;
  if (!a.field_ || !b.field_) return a.c_.empty();
  return a.field_->same_as(*b.field_);
}

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  }
  return false;
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const Field& F = b.F();
  if (a.degree() < b.degree()) return {Poly(b.field()), a};
  std::vector<Fq> r = a.coeffs();
  const int db = b.degree();
  std::vector<Fq> quo(a.degree() - db + 1, Fq(0));
  const Fq inv_lead = F.inv(b.lead());
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    Fq c = r[i];
    if (c.is_zero()) continue;
    Fq f = F.mul(c, inv_lead);
    quo[i - db] = f;
    Fq nf = F.neg(f);
    for (int j = 0; j <= db; ++j) r[i - db + j] = F.add(r[i - db + j], F.mul(nf, bc[j]));
  }
  r.resize(db);
  return {Poly(b.field(), std::move(quo)), Poly(b.field(), std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  const FieldPtr& f = a.field() ? a.field() : b.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f, Fq(1)), s1(f);
  Poly t0(f), t1 = Poly::constant(f, Fq(1));
  while (!r1.is_zero()) {
    auto [qq, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - qq * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - qq * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Fq li = f->inv(r0.lead());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

Poly pow(const Poly& a, unsigned n) {
  Poly r = Poly::constant(a.field(), Fq(1));
  Poly b = a;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly pow_mod(const Poly& a, std::uint64_t n, const Poly& m) {
  Poly r = Poly::constant(m.field(), Fq(1)) % m;
  Poly b = a % m;
  while (n) {
    if (n & 1) r = mulmod(r, b, m);
    n >>= 1;
    if (n) b = mulmod(b, b, m);
  }
  return r;
}

Poly frobenius_pow_mod(const Poly& x, unsigned k, const Poly& m) {
  Poly r = x % m;
  for (unsigned i = 0; i < k; ++i) r = pow_mod(r, m.F().q(), m);
  return r;
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  ExtGcd e = ext_gcd(a % m, m);
  if (!e.g.is_one()) throw Error(ErrorCode::DivisionByZero, "polynomial not invertible modulo m");
  return e.s % m;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw Error(ErrorCode::ConstantPoly, "irreducibility of a constant");
  const unsigned n = static_cast<unsigned>(f.degree());
  if (n == 1) return true;
  const Poly g = f.monic();
  const Poly t = Poly::t(f.field());
  // t^{q^{n/r}} for every prime r | n, obtained along the Frobenius chain.
  std::vector<Poly> frob(n + 1);
  frob[0] = t % g;
  for (unsigned i = 1; i <= n; ++i) frob[i] = pow_mod(frob[i - 1], f.F().q(), g);
  if (!(frob[n] == t % g)) return false;
  for (auto r : prime_factors(n)) {
    Poly h = frob[n / r] - t;
    if (!gcd(h, g).is_one()) return false;
  }
  return true;
}

unsigned Factorization::big_omega() const {
  unsigned s = 0;
  for (auto& [p, e] : factors) s += e;
  return s;
}

unsigned Factorization::small_omega() const { return static_cast<unsigned>(factors.size()); }

Poly Factorization::product() const {
  if (factors.empty()) return Poly();
  const FieldPtr& f = factors.front().first.field();
  Poly r = Poly::constant(f, unit);
  for (auto& [p, e] : factors) r *= pow(p, e);
  return r;
}

int moebius(std::uint64_t n) {
  int s = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      s = -s;
    }
  }
  if (n > 1) s = -s;
  return s;
}

std::uint64_t checked_power(std::uint64_t q, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
    r *= q;
  }
  return r;
}

std::uint64_t count_irreducibles(std::uint64_t q, unsigned n) {
  if (n == 0) return 0;
  __int128 s = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    int mu = moebius(d);
    if (mu) s += static_cast<__int128>(mu) * checked_power(q, n / d);
  }
  return static_cast<std::uint64_t>(s / n);
}

void require_budget(std::uint64_t q, unsigned n, const Limits& limits) {
  if (checked_power(q, n) > limits.enumeration) {
    throw Error(ErrorCode::ResourceLimit, "enumeration of q^" + std::to_string(n) + " polynomials over q=" +
                                              std::to_string(q) + " exceeds budget " +
                                              std::to_string(limits.enumeration));
  }
}

MonicRange::MonicRange(FieldPtr f, unsigned n, const Limits& limits)
    : field_(std::move(f)), n_(n), begin_(0) {
  require_budget(field_->q(), n_, limits);
  end_ = checked_power(field_->q(), n_);
}

MonicRange::MonicRange(FieldPtr f, unsigned n, std::uint64_t begin, std::uint64_t end,
                       const Limits& limits)
    : field_(std::move(f)), n_(n), begin_(begin), end_(end) {
  require_budget(field_->q(), n_, limits);
  end_ = std::min(end_, checked_power(field_->q(), n_));
  begin_ = std::min(begin_, end_);
}

std::vector<MonicRange> MonicRange::split(unsigned parts) const {
  std::vector<MonicRange> out;
  if (parts == 0) parts = 1;
  const std::uint64_t total = size();
  std::uint64_t start = begin_;
  for (unsigned i = 0; i < parts; ++i) {
    std::uint64_t len = total / parts + (i < total % parts ? 1 : 0);
    MonicRange r = *this;
    r.begin_ = start;
    r.end_ = start + len;
    out.push_back(r);
    start += len;
  }
  return out;
}

MonicRange::iterator::iterator(const MonicRange* r, std::uint64_t idx) : r_(r), idx_(idx) {
  if (idx_ < r_->end_) cur_ = Poly::monic_from_index(r_->field_, r_->n_, idx_);
}

MonicRange::iterator& MonicRange::iterator::operator++() {
  ++idx_;
  if (idx_ >= r_->end_) return *this;
  // Odometer step on the existing coefficient vector.
  std::vector<Fq> c = cur_.coeffs();
  const std::uint32_t q = r_->field_->q();
  for (unsigned i = 0; i < r_->n_; ++i) {
    if (c[i].code + 1 < q) {
      c[i] = Fq(c[i].code + 1);
      break;
    }
    c[i] = Fq(0);
  }
  cur_ = Poly(r_->field_, std::move(c));
  return *this;
}

std::vector<Poly> enumerate_monic(const FieldPtr& f, unsigned n, const Limits& limits) {
  std::vector<Poly> out;
  for (const Poly& p : MonicRange(f, n, limits)) out.push_back(p);
  return out;
}

std::vector<Poly> enumerate_irreducibles_rabin(const FieldPtr& f, unsigned n) {
  std::vector<Poly> out;
  for (const Poly& p : MonicRange(f, n)) {
    if (is_irreducible(p)) out.push_back(p);
  }
  return out;
}

}  // namespace fqbias
