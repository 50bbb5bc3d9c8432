#include "fqbias/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fqbias/errors.hpp"
#include "fqbias/expr.hpp"

namespace fqbias {

namespace {

constexpr double kEps = 0x1p-52;
constexpr Int kIntMax = static_cast<Int>((static_cast<unsigned __int128>(1) << 127) - 1);

Int int_power(std::uint64_t q, unsigned n) {
  Int r = 1;
  for (unsigned i = 0; i < n; ++i) r = checked_mul(r, static_cast<Int>(q));
  return r;
}


Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

Int exact_div(Int a, Int b) {
  if (a % b != 0) throw Error(ErrorCode::InexactDivision, "count recursion produced a non-integer");
  return a / b;
}

std::vector<Character> tower(const Character& chi) {
  std::vector<Character> out;
  for (std::uint64_t j = 0; j < chi.order(); ++j) out.push_back(chi.pow(static_cast<std::int64_t>(j)));
  return out;
}

}  // namespace

std::string to_string(Int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::ResourceLimit, "exact count overflows 128 bits");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::ResourceLimit, "exact count overflows 128 bits");
  return r;
}

std::string to_string(FactorFunction f) { return f == FactorFunction::BigOmega ? "Omega" : "omega"; }

FactorFunction parse_factor_function(const std::string& s) {
  if (s == "Omega" || s == "Ω" || s == "big") return FactorFunction::BigOmega;
  if (s == "omega" || s == "ω" || s == "small") return FactorFunction::SmallOmega;
  throw Error(ErrorCode::InvalidArgument, "unknown factor function '" + s + "' (Omega or omega)");
}

unsigned factor_count(const Factorization& fac, FactorFunction f) {
  return f == FactorFunction::BigOmega ? fac.big_omega() : fac.small_omega();
}

Approx Approx::exact(Int v) {
  double d = to_double(v);
  return {d, std::abs(d) > 0x1p53 ? kEps * std::abs(d) : 0.0};
}

Approx Approx::operator+(const Approx& o) const {
  auto v = value + o.value;
  return {v, error + o.error + kEps * std::abs(v)};
}

Approx Approx::operator-(const Approx& o) const {
  auto v = value - o.value;
  return {v, error + o.error + kEps * std::abs(v)};
}

Approx Approx::operator*(const Approx& o) const {
  auto v = value * o.value;
  return {v, std::abs(value) * o.error + std::abs(o.value) * error + error * o.error + 2 * kEps * std::abs(v)};
}

Approx Approx::scaled(double s) const {
  auto v = value * s;
  return {v, error * std::abs(s) + kEps * std::abs(v)};
}

PrimeSums::PrimeSums(const Character& chi, unsigned n_max, const Limits& limits)
    : exact_(chi.is_real()), order_(chi.order()), n_max_(n_max) {
  auto pows = tower(chi);
  std::vector<Character> nonprincipal(pows.begin() + 1, pows.end());
  init(chi, compute_l_polynomials(nonprincipal, limits));
}

PrimeSums::PrimeSums(const Character& chi, unsigned n_max,
                     const std::function<LPolynomial(const Character&)>& lookup)
    : exact_(chi.is_real()), order_(chi.order()), n_max_(n_max) {
  auto pows = tower(chi);
  std::vector<LPolynomial> Ls;
  for (std::size_t j = 1; j < pows.size(); ++j) Ls.push_back(lookup(pows[j]));
  init(chi, Ls);
}

void PrimeSums::init(const Character& chi, const std::vector<LPolynomial>& Ls) {
  const auto& ctx = chi.context();
  const std::uint64_t q = ctx->field()->q();
  const unsigned n_max = n_max_;

  // psi of the principal character: all prime powers except those of primes dividing M.
  std::vector<Int> psi0(n_max + 1, 0);
  for (unsigned n = 1; n <= n_max; ++n) {
    Int v = int_power(q, n);
    for (auto& [P, e] : ctx->factorization().factors) {
      const unsigned d = static_cast<unsigned>(P.degree());
      if (n % d == 0) v -= d;
    }
    psi0[n] = v;
  }

  if (exact_) {
    exact_psi_.assign(order_, std::vector<Int>(n_max + 1, 0));
    exact_psi_[0] = psi0;
    for (std::uint64_t j = 1; j < order_; ++j) {
      const auto& c = Ls[j - 1].integer_coeffs;
      auto coef = [&](unsigned i) -> Int { return i < c.size() ? c[i] : 0; };
      auto& psi = exact_psi_[j];
      for (unsigned n = 1; n <= n_max; ++n) {
        Int v = checked_mul(n, coef(n));
        for (unsigned i = 1; i < n; ++i) v = checked_add(v, -checked_mul(psi[i], coef(n - i)));
        psi[n] = v;
      }
    }
    exact_s_.assign(order_, std::vector<Int>(n_max + 1, 0));
    for (unsigned n = 1; n <= n_max; ++n) {
      for (std::uint64_t j = 0; j < order_; ++j) {
        Int v = exact_psi_[j][n];
        for (unsigned l = 1; l < n; ++l) {
          if (n % l == 0) v -= checked_mul(l, exact_s_[(j * (n / l)) % order_][l]);
        }
        exact_s_[j][n] = exact_div(v, n);
      }
    }
    return;
  }

  psi_.assign(order_, std::vector<Approx>(n_max + 1));
  for (unsigned n = 1; n <= n_max; ++n) psi_[0][n] = Approx::exact(psi0[n]);
  for (std::uint64_t j = 1; j < order_; ++j) {
    const auto& c = Ls[j - 1].coeffs;
    auto coef = [&](unsigned i) -> Approx {
      if (i >= c.size()) return {};
      return {c[i], kEps * std::pow(static_cast<double>(q), i)};
    };
    auto& psi = psi_[j];
    for (unsigned n = 1; n <= n_max; ++n) {
      Approx v = coef(n).scaled(n);
      for (unsigned i = 1; i < n; ++i) v -= psi[i] * coef(n - i);
      psi[n] = v;
    }
  }
  s_.assign(order_, std::vector<Approx>(n_max + 1));
  for (unsigned n = 1; n <= n_max; ++n) {
    for (std::uint64_t j = 0; j < order_; ++j) {
      Approx v = psi_[j][n];
      for (unsigned l = 1; l < n; ++l) {
        if (n % l == 0) v -= s_[(j * (n / l)) % order_][l].scaled(l);
      }
      s_[j][n] = v.scaled(1.0 / n);
    }
  }
}

Int PrimeSums::exact_value(unsigned n, std::uint64_t j) const {
  if (!exact_) throw Error(ErrorCode::InvalidArgument, "prime sums of a complex character are not exact");
  if (n == 0 || n > n_max_) throw Error(ErrorCode::InvalidArgument, "degree outside the computed range");
  return exact_s_[j % order_][n];
}

Approx PrimeSums::value(unsigned n, std::uint64_t j) const {
  if (n == 0 || n > n_max_) throw Error(ErrorCode::InvalidArgument, "degree outside the computed range");
  if (exact_) return Approx::exact(exact_s_[j % order_][n]);
  return s_[j % order_][n];
}

Approx PrimeSums::psi(unsigned n, std::uint64_t j) const {
  if (n == 0 || n > n_max_) throw Error(ErrorCode::InvalidArgument, "degree outside the computed range");
  if (exact_) return Approx::exact(exact_psi_[j % order_][n]);
  return psi_[j % order_][n];
}

Approx CountTable::at(unsigned k, unsigned n) const {
  if (k > k_max || n > n_max) throw Error(ErrorCode::InvalidArgument, "index outside the count table");
  return exact ? Approx::exact(exact_values[k][n]) : values[k][n];
}

double CountTable::max_error() const {
  double e = 0;
  if (!exact) {
    for (auto& row : values)
      for (auto& v : row) e = std::max(e, v.error);
  }
  return e;
}

namespace {

// F_k = (1/k) sum_l sign(l) F_{k-l} * G_l, where G_l[m] is a series built from prime sums.
template <class T, class Series, class Div>
std::vector<std::vector<T>> run_recursion(unsigned k_max, unsigned n_max, bool alternating, Series G, Div divide) {
  std::vector<std::vector<T>> F(k_max + 1, std::vector<T>(n_max + 1, T{}));
  F[0][0] = T{1};
  std::vector<std::vector<T>> g(k_max + 1);
  for (unsigned l = 1; l <= k_max; ++l) {
    g[l].assign(n_max + 1, T{});
    for (unsigned m = 1; m <= n_max; ++m) g[l][m] = G(l, m);
  }
  for (unsigned k = 1; k <= k_max; ++k) {
    for (unsigned n = 0; n <= n_max; ++n) {
      T acc{};
      for (unsigned l = 1; l <= k; ++l) {
        T part{};
        for (unsigned m = 1; m <= n; ++m) part = part + F[k - l][n - m] * g[l][m];
        acc = (alternating && l % 2 == 0) ? acc - part : acc + part;
      }
      F[k][n] = divide(acc, k);
    }
  }
  return F;
}

// Int wrapper with checked arithmetic for the generic recursion.
struct CheckedInt {
  Int v = 0;
  CheckedInt() = default;
  CheckedInt(Int x) : v(x) {}
  CheckedInt operator+(const CheckedInt& o) const { return checked_add(v, o.v); }
  CheckedInt operator-(const CheckedInt& o) const { return checked_add(v, -o.v); }
  CheckedInt operator*(const CheckedInt& o) const { return checked_mul(v, o.v); }
};

}  // namespace

CountTable count_table(const PrimeSums& sums, FactorFunction f, unsigned k_max, std::uint64_t power) {
  CountTable t;
  t.f = f;
  t.k_max = k_max;
  t.n_max = sums.n_max();
  t.exact = sums.exact();
  const unsigned N = sums.n_max();
  const bool alt = f == FactorFunction::SmallOmega;
  if (t.exact) {
    auto G = [&](unsigned l, unsigned m) -> CheckedInt {
      if (f == FactorFunction::BigOmega) return m % l == 0 ? CheckedInt(sums.exact_value(m / l, l * power)) : CheckedInt();
      CheckedInt s;
      for (unsigned j = l; j <= m; ++j) {
        if (m % j == 0) s = s + CheckedInt(binomial(j - 1, l - 1)) * CheckedInt(sums.exact_value(m / j, j * power));
      }
      return s;
    };
    auto F = run_recursion<CheckedInt>(k_max, N, alt, G,
                                       [](const CheckedInt& a, unsigned k) { return CheckedInt(exact_div(a.v, k)); });
    t.exact_values.assign(k_max + 1, std::vector<Int>(N + 1, 0));
    for (unsigned k = 0; k <= k_max; ++k)
      for (unsigned n = 0; n <= N; ++n) t.exact_values[k][n] = F[k][n].v;
  } else {
    auto G = [&](unsigned l, unsigned m) -> Approx {
      if (f == FactorFunction::BigOmega) return m % l == 0 ? sums.value(m / l, l * power) : Approx();
      Approx s;
      for (unsigned j = l; j <= m; ++j) {
        if (m % j == 0) s += sums.value(m / j, j * power).scaled(to_double(binomial(j - 1, l - 1)));
      }
      return s;
    };
    t.values = run_recursion<Approx>(k_max, N, alt, G, [](const Approx& a, unsigned k) { return a.scaled(1.0 / k); });
  }
  return t;
}

CountTable count_table(const Character& chi, FactorFunction f, unsigned k_max, unsigned n_max, const Limits& limits) {
  return count_table(PrimeSums(chi, n_max, limits), f, k_max);
}

Approx pi_f1(const Character& chi, unsigned n, const Limits& limits) {
  return PrimeSums(chi, n, limits).value(n);
}

Approx pi_omega_k(const Character& chi, unsigned n, unsigned k, const Limits& limits) {
  return count_table(chi, FactorFunction::BigOmega, k, n, limits).at(k, n);
}

Approx pi_small_omega_k(const Character& chi, unsigned n, unsigned k, const Limits& limits) {
  return count_table(chi, FactorFunction::SmallOmega, k, n, limits).at(k, n);
}

ClassCountOracle::ClassCountOracle(const ContextPtr& ctx, FactorFunction f, unsigned k_max, unsigned n_max,
                                   const Limits& limits)
    : ctx_(ctx), k_max_(k_max), n_max_(n_max) {
  const FieldPtr& F = ctx->field();
  require_budget(F->q(), n_max, limits);
  const std::uint64_t phi = ctx->phi();
  counts_.assign(static_cast<std::size_t>(n_max + 1) * (k_max + 1) * phi, 0);

  struct Prime {
    unsigned degree;
    std::vector<std::uint64_t> powers;  // group index of P^m, m >= 1
  };
  std::vector<Prime> primes;
  for (unsigned d = 1; d <= n_max; ++d) {
    for (const Poly& P : enumerate_irreducibles(F, d, limits)) {
      auto g = ctx->group_index(P);
      if (!g) continue;
      Prime pr{d, {*g}};
      for (unsigned m = 2; m * d <= n_max; ++m) pr.powers.push_back(ctx->multiply(pr.powers.back(), *g));
      primes.push_back(std::move(pr));
    }
  }
  const std::uint64_t unit = *ctx->group_index(Poly::constant(F, Fq(1)));
  const bool big = f == FactorFunction::BigOmega;

  auto rec = [&](auto&& self, std::size_t start, unsigned deg, std::uint64_t g, unsigned fk) -> void {
    counts_[(static_cast<std::size_t>(deg) * (k_max + 1) + fk) * phi + g]++;
    if (!big && fk + 1 > k_max) return;
    for (std::size_t i = start; i < primes.size(); ++i) {
      const Prime& P = primes[i];
      if (deg + P.degree > n_max) break;
      for (unsigned m = 1; deg + m * P.degree <= n_max; ++m) {
        const unsigned nk = big ? fk + m : fk + 1;
        if (nk > k_max) break;
        self(self, i + 1, deg + m * P.degree, ctx->multiply(g, P.powers[m - 1]), nk);
      }
    }
  };
  rec(rec, 0, 0, unit, 0);
}

std::uint64_t ClassCountOracle::count(unsigned n, unsigned k, std::uint64_t g) const {
  if (n > n_max_ || k > k_max_) throw Error(ErrorCode::InvalidArgument, "index outside the oracle table");
  return counts_[(static_cast<std::size_t>(n) * (k_max_ + 1) + k) * ctx_->phi() + g];
}

std::uint64_t ClassCountOracle::count(unsigned n, unsigned k, const ResidueSet& A) const {
  std::uint64_t s = 0;
  for (auto g : A.members()) s += count(n, k, g);
  return s;
}

std::complex<double> ClassCountOracle::character_sum(const Character& chi, unsigned n, unsigned k) const {
  std::complex<double> s = 0;
  for (std::uint64_t g = 0; g < ctx_->phi(); ++g) {
    auto c = count(n, k, g);
    if (c) s += static_cast<double>(c) * chi.value(g);
  }
  return s;
}

std::uint64_t pi_fk_by_class_bruteforce(const ContextPtr& ctx, unsigned n, unsigned k, FactorFunction f,
                                        const ResidueSet& A, const Limits& limits) {
  std::uint64_t count = 0;
  if (k > n) return 0;
  for (const Poly& N : MonicRange(ctx->field(), n, limits)) {
    auto g = ctx->group_index(N);
    if (!g || !A.contains(*g)) continue;
    if (factor_count(factorize(N), f) == k) ++count;
  }
  return count;
}

double delta_normalization(std::uint64_t q, unsigned X, unsigned k) {
  const double x = X;
  double lg = 0;
  for (unsigned i = 2; i < k; ++i) lg += std::log(static_cast<double>(i));
  lg += std::log(x) - 0.5 * x * std::log(static_cast<double>(q)) - (k - 1.0) * std::log(std::log(x));
  return std::exp(lg);
}

RaceSeries delta_fk_exact(const ResidueSet& A, const ResidueSet& B, FactorFunction f, unsigned k, unsigned X_max,
                          CountMethod method, const Limits& limits) {
  if (X_max < 2) throw Error(ErrorCode::InvalidArgument, "race series needs X_max >= 2");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "race series needs k >= 1");
  const ContextPtr& ctx = A.context();
  const std::uint64_t q = ctx->field()->q();
  RaceSeries out;
  out.modulus = ctx->modulus().field() ? format_poly(ctx->modulus()) : "";
  out.set_a = A.label();
  out.set_b = B.label();
  out.f = f;
  out.k = k;
  std::vector<long double> D(X_max + 1, 0.0L);

  if (method == CountMethod::Enumeration) {
    out.method = "enumeration";
    ClassCountOracle oracle(ctx, f, k, X_max, limits);
    for (unsigned n = 0; n <= X_max; ++n) {
      D[n] = static_cast<long double>(oracle.count(n, k, A)) / A.size() -
             static_cast<long double>(oracle.count(n, k, B)) / B.size();
    }
  } else {
    out.method = "recursion";
    auto weights = race_weights(A, B);
    // One batch of L-polynomials for every power of every weighted character.
    std::map<std::string, LPolynomial> cache;
    std::vector<Character> needed;
    for (auto& w : weights) {
      for (auto& c : tower(w.chi)) {
        if (!c.is_principal() && !cache.count(c.key())) {
          cache.emplace(c.key(), LPolynomial{});
          needed.push_back(c);
        }
      }
    }
    auto Ls = compute_l_polynomials(needed, limits);
    for (std::size_t i = 0; i < needed.size(); ++i) cache[needed[i].key()] = Ls[i];
    auto lookup = [&](const Character& c) { return cache.at(c.key()); };
    for (auto& w : weights) {
      CountTable t = count_table(PrimeSums(w.chi, X_max, lookup), f, k);
      for (unsigned n = 0; n <= X_max; ++n) {
        if (t.exact) {
          D[n] += static_cast<long double>(w.weight.real()) * static_cast<long double>(t.exact_values[k][n]);
        } else {
          D[n] += static_cast<long double>((w.weight * t.values[k][n].value).real());
        }
      }
    }
  }
  long double cum = 0;
  for (unsigned X = 0; X <= X_max; ++X) {
    cum += D[X];
    if (X < 2) continue;
    out.X.push_back(X);
    out.difference.push_back(static_cast<double>(cum));
    out.delta.push_back(static_cast<double>(cum) * delta_normalization(q, X, k));
  }
  return out;
}

}  // namespace fqbias
