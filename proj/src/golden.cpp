#include "fqbias/golden.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <numbers>
#include <sstream>

#include "fqbias/errors.hpp"
#include "fqbias/expr.hpp"

namespace fqbias {

const std::uint64_t kTable1[10][2] = {
    {194355543, 805644606}, {563506459, 563506459}, {484542923, 515457280}, {503903947, 503903947},
    {499014553, 500985439}, {500247844, 500247844}, {499937823, 500062193}, {500015580, 500015580},
    {499996073, 500003876}, {500000986, 500000986},
};

ContextPtr two_cubics_f5() {
  static const ContextPtr c = ModulusContext::make(parse_poly_expr("t^6+2t^4+3t+1", make_field(5)));
  return c;
}

ContextPtr irreducible_quintic_f5() {
  static const ContextPtr c = ModulusContext::make(parse_poly_expr("t^5+3t^4+4t^3+2t+2", make_field(5)));
  return c;
}

ContextPtr central_zero_quartic_f9() {
  static const ContextPtr c =
      ModulusContext::make(resolve_field_representation(3, 2, "t^4+2t^3+2t+a^7", {1, -6, 9}).modulus);
  return c;
}

ContextPtr split_cubic_f9() {
  static const ContextPtr c = ModulusContext::make(parse_poly_expr("t^3-t", make_field(3, 2)));
  return c;
}

namespace {

using IVec = std::vector<std::int64_t>;

IVec mul(const IVec& a, const IVec& b) {
  IVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::string show(const IVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string fmt(double x, int prec = 6) {
  std::ostringstream o;
  o.precision(prec);
  o << x;
  return o.str();
}

CheckResult make_result(int id, std::string name) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const QuadraticZeros& zeros_of(const ContextPtr& ctx) {
  static std::map<const ModulusContext*, QuadraticZeros> memo;
  auto it = memo.find(ctx.get());
  if (it == memo.end()) it = memo.emplace(ctx.get(), quadratic_zero_data(ctx)).first;
  return it->second;
}

struct Example {
  std::string name;
  ContextPtr ctx;
};

std::vector<Example> examples() {
  return {{"irreducible_quintic_f5", irreducible_quintic_f5()},
          {"two_cubics_f5", two_cubics_f5()},
          {"central_zero_quartic_f9", central_zero_quartic_f9()},
          {"split_cubic_f9", split_cubic_f9()}};
}

const FactorFunction kBoth[2] = {FactorFunction::BigOmega, FactorFunction::SmallOmega};

}  // namespace

CheckResult check_l_polynomials() {
  auto r = make_result(1, "L-polynomial golden values");
  bool ok = true;
  std::string d;

  auto t0 = std::chrono::steady_clock::now();
  auto ctx = two_cubics_f5();
  auto LM = compute_l_polynomial(quadratic_character(ctx, 3)).integer_coeffs;
  const IVec wantM = mul(mul({1, 1, 5}, {1, 1, 5}), {1, -1});
  const bool okM = LM == wantM;
  auto L1 = compute_l_polynomial(quadratic_character(ctx, 1)).integer_coeffs;
  auto L2 = compute_l_polynomial(quadratic_character(ctx, 2)).integer_coeffs;
  const IVec wa = mul({1, -1, 5}, {1, 0, 0, -1}), wb = mul({1, 3, 5}, {1, 0, 0, -1});
  const bool okF = (L1 == wa && L2 == wb) || (L1 == wb && L2 == wa);
  const double t1 = seconds_since(t0);
  ok = ok && okM && okF && t1 < 60;
  d += std::string("two_cubics_f5 chi_M ") + (okM ? "ok" : "MISMATCH " + show(LM));
  d += std::string("; factor characters ") + (okF ? "ok" : "MISMATCH " + show(L1) + " " + show(L2));
  if (!okF) {
    const IVec pa = mul({1, -1, 5}, {1, 0, 0, 1}), pb = mul({1, 3, 5}, {1, 0, 0, 1});
    const bool plus = (L1 == pa && L2 == pb) || (L1 == pb && L2 == pa);
    r.notes.push_back(std::string("factor characters equal the (1+u^3) forms: ") + (plus ? "yes" : "no"));
  }

  t0 = std::chrono::steady_clock::now();
  auto rep = resolve_field_representation(3, 2, "t^4+2t^3+2t+a^7", {1, -6, 9});
  const bool okC = rep.L.integer_coeffs == IVec{1, -6, 9};
  const double t2 = seconds_since(t0);
  ok = ok && okC && t2 < 60;
  d += std::string("; central_zero_quartic_f9 ") + (okC ? "ok" : "MISMATCH " + show(rep.L.integer_coeffs));
  if (!okC) {
    r.notes.push_back("central_zero_quartic_f9 best representation " + rep.field->describe() + " modulus " +
                      format_poly(rep.modulus, rep.generator) + " gives " + show(rep.L.integer_coeffs) +
                      (rep.L.integer_coeffs == mul({1, -1}, {1, -6, 9}) ? " = (1-u)(1-3u)^2" : ""));
  }

  t0 = std::chrono::steady_clock::now();
  auto s3 = split_cubic_f9();
  bool okS = true;
  for (std::uint64_t mask = 1; mask < 8; ++mask) {
    auto L = compute_l_polynomial(quadratic_character(s3, mask)).integer_coeffs;
    const IVec want = __builtin_popcountll(mask) == 3 ? IVec{1, 6, 9} : IVec{1, -2, 1};
    okS = okS && L == want;
  }
  ok = ok && okS && seconds_since(t0) < 60;
  d += std::string("; split_cubic_f9 ") + (okS ? "ok" : "MISMATCH");
  r.passed = ok;
  r.detail = d;
  return r;
}

CheckResult check_quintic_zeros() {
  auto r = make_result(2, "zero data of the irreducible quintic");
  auto ctx = irreducible_quintic_f5();
  auto z = extract_zeros(compute_l_polynomial(quadratic_character(ctx, 1)), 5);
  std::vector<double> g;
  for (auto& s : z.spectral) g.push_back(s.gamma);
  std::sort(g.begin(), g.end());
  const double pi = std::numbers::pi;
  r.passed = g.size() == 2 && std::abs(g[0] - pi / 5) < 1e-9 && std::abs(g[1] - 2 * pi / 5) < 1e-9 &&
             z.m_plus == 0 && z.m_minus == 0;
  r.detail = "gamma/pi =";
  for (double x : g) r.detail += " " + fmt(x / pi, 12);
  r.detail += ", m+ = " + std::to_string(z.m_plus) + ", m- = " + std::to_string(z.m_minus);
  return r;
}

namespace {

// Omega and omega of every monic polynomial of degree <= n_max over F_p, by sieving
// with the irreducibles found along the way. Index: sum_{i<n} c_i p^i.
struct FactorSieve {
  std::uint32_t p;
  unsigned n_max;
  std::vector<std::uint64_t> pw;
  std::vector<std::vector<std::uint8_t>> big, small;

  FactorSieve(std::uint32_t p_, unsigned n_max_) : p(p_), n_max(n_max_) {
    pw.assign(n_max + 2, 1);
    for (unsigned i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * p;
    big.resize(n_max + 1);
    small.resize(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) {
      big[n].assign(pw[n], 0);
      small[n].assign(pw[n], 0);
    }
    for (unsigned d = 1; d <= n_max; ++d) {
      for (std::uint64_t idx = 0; idx < pw[d]; ++idx) {
        if (big[d][idx] != 0) continue;
        std::vector<std::uint32_t> P(d + 1);
        for (unsigned i = 0; i < d; ++i) P[i] = static_cast<std::uint32_t>(idx / pw[i] % p);
        P[d] = 1;
        std::vector<std::uint32_t> Q = P;
        for (unsigned j = 1; j * d <= n_max; ++j) {
          if (j > 1) Q = multiply(Q, P);
          mark(Q, j == 1);
        }
      }
    }
  }

  std::vector<std::uint32_t> multiply(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint32_t> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return c;
  }

  // Adds one to Omega (and omega when distinct) of every monic multiple Q g, deg <= n_max.
  void mark(const std::vector<std::uint32_t>& Q, bool distinct) {
    const unsigned dq = static_cast<unsigned>(Q.size() - 1);
    for (unsigned m = 0; dq + m <= n_max; ++m) {
      const unsigned n = dq + m;
      std::vector<std::uint32_t> f(n + 1, 0), g(m, 0);
      std::uint64_t idx = 0;
      for (unsigned s = 0; s <= dq; ++s) f[m + s] = Q[s];
      for (unsigned i = 0; i < n; ++i) idx += f[i] * pw[i];
      const std::uint64_t total = pw[m];
      for (std::uint64_t step = 0;; ++step) {
        ++big[n][idx];
        if (distinct) ++small[n][idx];
        if (step + 1 == total) break;
        // Odometer on g; each digit increment adds Q t^i to f.
        for (unsigned i = 0; i < m; ++i) {
          for (unsigned s = 0; s <= dq; ++s) {
            const unsigned pos = i + s;
            if (pos >= n) break;
            const std::uint32_t old = f[pos], nw = (old + Q[s]) % p;
            f[pos] = nw;
            idx = idx + nw * pw[pos] - old * pw[pos];
          }
          g[i] = (g[i] + 1) % p;
          if (g[i] != 0) break;
        }
      }
    }
  }
};

struct OracleStats {
  std::uint64_t moduli = 0, characters = 0, comparisons = 0, mismatches = 0;
  double worst_complex = 0;
  std::string first_failure;
};

void oracle_for_modulus(const FactorSieve& sv, const Poly& M, unsigned k_max, OracleStats& st) {
  const unsigned n_max = sv.n_max;
  const std::uint32_t p = sv.p;
  auto ctx = ModulusContext::make(M);
  const unsigned d = ctx->degree();
  const auto& rt = ctx->residue_table();
  const std::uint64_t phi = ctx->phi();
  const std::uint64_t R = sv.pw[d];

  // Residue codes of t^i mod M and F_p^d addition table on codes.
  std::vector<std::uint64_t> tcode(n_max + 1);
  for (unsigned i = 0; i <= n_max; ++i) {
    tcode[i] = (Poly::monomial(ctx->field(), Fq(1), i) % M).code();
  }
  std::vector<std::uint32_t> add(R * R);
  for (std::uint64_t a = 0; a < R; ++a) {
    for (std::uint64_t b = 0; b < R; ++b) {
      std::uint64_t c = 0;
      for (unsigned i = 0; i < d; ++i) c += ((a / sv.pw[i] + b / sv.pw[i]) % p) * sv.pw[i];
      add[a * R + b] = static_cast<std::uint32_t>(c);
    }
  }

  // cnt[f][n][k][g]
  auto at = [&](int f, unsigned n, unsigned k) { return ((f * (n_max + 1) + n) * (k_max + 1) + k) * phi; };
  std::vector<std::uint64_t> cnt(2 * (n_max + 1) * (k_max + 1) * phi, 0);
  auto tally = [&](unsigned n, std::uint64_t idx, std::uint64_t code) {
    const std::int64_t g = rt[code];
    if (g < 0) return;
    const unsigned kb = sv.big[n][idx], ks = sv.small[n][idx];
    if (kb <= k_max) ++cnt[at(0, n, kb) + g];
    if (ks <= k_max) ++cnt[at(1, n, ks) + g];
  };
  for (unsigned n = 1; n <= n_max; ++n) {
    if (n < d) {
      for (std::uint64_t low = 0; low < sv.pw[n]; ++low) tally(n, low, low + sv.pw[n]);
      continue;
    }
    std::vector<std::uint32_t> hi(n - d, 0);
    std::uint64_t base = tcode[n];
    const std::uint64_t highs = sv.pw[n - d];
    for (std::uint64_t h = 0; h < highs; ++h) {
      const std::uint32_t* row = &add[base * R];
      const std::uint64_t off = h * R;
      for (std::uint64_t low = 0; low < R; ++low) tally(n, off + low, row[low]);
      for (unsigned i = 0; i < n - d; ++i) {
        base = add[base * R + tcode[d + i]];
        hi[i] = (hi[i] + 1) % p;
        if (hi[i] != 0) break;
      }
    }
  }

  // Recursion side: one prime-sum tower per cyclic subgroup.
  auto chars = all_characters(ctx);
  std::vector<Character> nonprincipal;
  for (auto& c : chars)
    if (!c.is_principal()) nonprincipal.push_back(c);
  std::map<std::string, LPolynomial> Lmap;
  {
    auto Ls = compute_l_polynomials(nonprincipal);
    for (std::size_t i = 0; i < Ls.size(); ++i) Lmap.emplace(nonprincipal[i].key(), std::move(Ls[i]));
  }
  auto lookup = [&](const Character& c) { return Lmap.at(c.key()); };
  std::map<std::string, bool> done;
  for (auto& base_chi : chars) {
    if (done.count(base_chi.key())) continue;
    PrimeSums sums(base_chi, n_max, lookup);
    for (std::uint64_t j = 0; j < base_chi.order(); ++j) {
      Character psi = base_chi.pow(static_cast<std::int64_t>(j));
      if (done.count(psi.key())) continue;
      done[psi.key()] = true;
      ++st.characters;
      std::vector<std::complex<double>> val(phi);
      std::vector<int> sgn(phi);
      for (std::uint64_t g = 0; g < phi; ++g) {
        val[g] = psi.value(g);
        sgn[g] = psi.order() == 1 ? 1 : (psi.phase(g) == 0 ? 1 : -1);
      }
      for (int f = 0; f < 2; ++f) {
        auto table = count_table(sums, kBoth[f], k_max, j);
        for (unsigned k = 1; k <= k_max; ++k) {
          for (unsigned n = 1; n <= n_max; ++n) {
            const std::uint64_t* c = &cnt[at(f, n, k)];
            ++st.comparisons;
            bool bad = false;
            if (table.exact) {
              Int s = 0;
              for (std::uint64_t g = 0; g < phi; ++g) s += sgn[g] * static_cast<Int>(c[g]);
              bad = s != table.exact_values[k][n];
            } else {
              std::complex<double> s = 0;
              for (std::uint64_t g = 0; g < phi; ++g) s += static_cast<double>(c[g]) * val[g];
              const double e = std::abs(s - table.at(k, n).value);
              st.worst_complex = std::max(st.worst_complex, e);
              bad = e > 1e-6;
            }
            if (bad) {
              ++st.mismatches;
              if (st.first_failure.empty()) {
                st.first_failure = "M = " + format_poly(M) + " chi " + psi.key() + " f " + to_string(kBoth[f]) +
                                   " k " + std::to_string(k) + " n " + std::to_string(n);
              }
            }
          }
        }
      }
    }
  }
  ++st.moduli;
}

}  // namespace

CheckResult check_counting_oracle() {
  auto r = make_result(3, "recursion vs enumeration for all moduli of degree <= 4");
  auto t0 = std::chrono::steady_clock::now();
  OracleStats st;
  for (std::uint32_t p : {3u, 5u}) {
    FactorSieve sv(p, 10);
    auto F = make_field(p);
    for (unsigned d = 1; d <= 4; ++d) {
      const std::uint64_t count = sv.pw[d];
      for (std::uint64_t idx = 0; idx < count; ++idx) oracle_for_modulus(sv, Poly::monic_from_index(F, d, idx), 4, st);
    }
  }
  const double secs = seconds_since(t0);
  r.passed = st.mismatches == 0 && secs < 600;
  r.detail = std::to_string(st.moduli) + " moduli, " + std::to_string(st.characters) + " characters, " +
             std::to_string(st.comparisons) + " values, " + std::to_string(st.mismatches) +
             " mismatches, worst complex error " + fmt(st.worst_complex, 3);
  if (!st.first_failure.empty()) r.notes.push_back("first mismatch: " + st.first_failure);
  return r;
}

CheckResult check_periodic_densities() {
  auto r = make_result(4, "periodic densities are exact rationals");
  bool ok = true;
  std::vector<std::string> bad;
  auto expect = [&](const std::string& what, const ContextPtr& ctx, FactorFunction f, unsigned k, int orientation,
                    std::uint64_t num, std::uint64_t den) {
    auto rep = density_scan(quadratic_main_term(zeros_of(ctx), f, k), 1000, orientation);
    if (!rep.exact || rep.numerator * den != num * rep.denominator) {
      ok = false;
      bad.push_back(what + " " + to_string(f) + " k=" + std::to_string(k) + " got " + std::to_string(rep.numerator) +
                    "/" + std::to_string(rep.denominator));
    }
  };
  auto quintic = irreducible_quintic_f5();
  for (unsigned k = 1; k <= 10; ++k) expect("quintic", quintic, FactorFunction::BigOmega, k, k % 2 ? -1 : 1, 4, 10);
  expect("quintic", quintic, FactorFunction::SmallOmega, 1, 1, 7, 10);
  for (unsigned k = 2; k <= 10; ++k) expect("quintic", quintic, FactorFunction::SmallOmega, k, k % 2 ? 1 : -1, 6, 10);
  for (auto f : kBoth) {
    for (unsigned k = 2; k <= 10; ++k) {
      expect("central quartic", central_zero_quartic_f9(), f, k, k % 2 ? -1 : 1, 1, 1);
      expect("split cubic", split_cubic_f9(), f, k, 1, 1, 2);
    }
  }
  expect("split cubic", split_cubic_f9(), FactorFunction::BigOmega, 1, 1, 0, 1);
  expect("split cubic", split_cubic_f9(), FactorFunction::SmallOmega, 1, 1, 1, 1);
  r.passed = ok;
  r.detail = ok ? "4/10, 7/10, 6/10, 1, 0, 1, 1/2 all exact for k = 1..10" : bad.front();
  for (std::size_t i = 1; i < bad.size(); ++i) r.notes.push_back(bad[i]);
  return r;
}

CheckResult check_table1(const GoldenOptions& opt) {
  auto r = make_result(5, "published bias counts, scaled");
  auto t0 = std::chrono::steady_clock::now();
  const auto& z = zeros_of(two_cubics_f5());
  double worst = 0;
  bool ok = true;
  for (unsigned k = 1; k <= 10; ++k) {
    for (int f = 0; f < 2; ++f) {
      auto rep = table1_scan(z, kBoth[f], k, opt.table_n);
      const double want = kTable1[k - 1][f] / 1e9;
      worst = std::max(worst, std::abs(rep.density - want));
      if (opt.full_table) {
        auto full = table1_scan(z, kBoth[f], k, 1000000000ULL);
        const double diff = std::abs(static_cast<double>(full.positive_count) - static_cast<double>(kTable1[k - 1][f]));
        r.notes.push_back("N=1e9 k=" + std::to_string(k) + " " + to_string(kBoth[f]) + ": " +
                          std::to_string(full.positive_count) + " vs " + std::to_string(kTable1[k - 1][f]) +
                          (diff <= 20000 ? " ok" : " OFF"));
        ok = ok && diff <= 20000;
      }
    }
  }
  auto derived = table1_scan(z, FactorFunction::BigOmega, 1, opt.table_n, AngleConvention::ZeroDerived);
  r.notes.push_back("zero-derived angles, k=1 Omega: " + fmt(derived.density) + " (printed convention reproduces the table)");
  const double secs = seconds_since(t0);
  ok = ok && worst < 5e-3 && (opt.full_table || secs < 300);
  r.passed = ok;
  r.detail = "N=" + std::to_string(opt.table_n) + ", max |density - table| = " + fmt(worst, 3);
  return r;
}

namespace {

// Least-squares log-log slope of the running maximum of R (from n = 2) over [n0, n1].
double envelope_slope(const std::vector<double>& R, unsigned n0, unsigned n1) {
  double env = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  int c = 0;
  for (unsigned n = 2; n <= n1; ++n) {
    env = std::max(env, R[n]);
    if (n < n0) continue;
    const double x = std::log(static_cast<double>(n)), y = std::log(std::max(env, 1e-300));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++c;
  }
  return (c * sxy - sx * sy) / (c * sxx - sx * sx);
}

// Residuals |exact - main term| / (q^{n/2} (log n)^{k-2} / n), n = 2..n_max.
std::vector<double> main_term_residuals(const CharacterZeros& cz, const CountTable& table, std::uint64_t q,
                                        unsigned k, FactorFunction f, unsigned n_max) {
  std::vector<double> R(n_max + 1, 0);
  for (unsigned n = 2; n <= n_max; ++n) {
    const double exact = to_double(table.exact_values[k][n]);
    const double main = pi_fk_asymptotic(*cz.zeros, true, n, k, f).real();
    const double scale = std::pow(static_cast<double>(q), n / 2.0) *
                         std::pow(std::log(static_cast<double>(n)), static_cast<double>(k) - 2) / n;
    R[n] = std::abs(exact - main) / scale;
  }
  return R;
}

}  // namespace

CheckResult check_main_term_residuals() {
  auto r = make_result(6, "main term vs exact counts");
  double worst1 = -1e9, worst = -1e9, largest = 0;
  std::string where;
  std::vector<double> extended = {-1e9, -1e9, -1e9};
  for (auto& ex : examples()) {
    const auto& z = zeros_of(ex.ctx);
    const std::uint64_t q = ex.ctx->field()->q();
    const unsigned n_max = q == 5 ? 12 : 24;
    const unsigned n_ext = q == 5 ? 12 : 36;
    for (auto& cz : z.characters) {
      for (auto f : kBoth) {
        auto table = count_table(cz.chi, f, 3, n_ext);
        for (unsigned k = 1; k <= 3; ++k) {
          auto R = main_term_residuals(cz, table, q, k, f, n_ext);
          const double s = envelope_slope(R, n_max / 2, n_max);
          for (unsigned n = 2; n <= n_max; ++n) largest = std::max(largest, R[n]);
          if (k == 1) {
            worst1 = std::max(worst1, s);
          } else if (s > worst) {
            worst = s;
            where = ex.name + " " + to_string(f) + " k=" + std::to_string(k);
          }
          if (q != 5) {
            extended[0] = std::max(extended[0], envelope_slope(R, 6, 12));
            extended[1] = std::max(extended[1], envelope_slope(R, 12, 24));
            extended[2] = std::max(extended[2], envelope_slope(R, 18, 36));
          }
        }
      }
    }
  }
  r.passed = worst1 <= 0.1 && worst <= 0.1;
  r.detail = "worst envelope log-log slope k=1: " + fmt(worst1, 3) + ", k=2,3: " + fmt(worst, 3) + " (" + where +
             "); largest normalized residual " + fmt(largest, 3) + "; n <= 12 over F_5, n <= 24 over F_9";
  r.notes.push_back("F_9 examples, worst slope over n in [6,12], [12,24], [18,36]: " + fmt(extended[0], 3) + ", " +
                    fmt(extended[1], 3) + ", " + fmt(extended[2], 3));
  return r;
}

CheckResult check_distribution() {
  auto r = make_result(7, "distribution properties");
  const std::uint64_t N = 1000000;
  bool ok = true;
  std::uint64_t violations = 0;
  double worst_mean = 0;
  for (auto& ex : examples()) {
    const auto& z = zeros_of(ex.ctx);
    for (auto f : kBoth) {
      for (unsigned k = 1; k <= 3; ++k) {
        auto st = distribution_stats(quadratic_main_term(z, f, k), N);
        violations += st.support_violations;
        const double tol = 5 * std::sqrt(st.closed_variance / N);
        const double err = std::abs(st.mean - quadratic_race_mean(z, f, k));
        worst_mean = std::max(worst_mean, tol > 0 ? err / tol : (err > 1e-15 ? 1e9 : 0));
      }
    }
  }
  ok = violations == 0 && worst_mean <= 1;
  const auto& z = zeros_of(two_cubics_f5());
  auto spec = quadratic_main_term(z, FactorFunction::BigOmega, 1, AngleConvention::PrintedDisplay);
  double worst_cf = 0;
  for (double xi : {0.5, 1.0, 2.0}) {
    worst_cf = std::max(worst_cf, std::abs(empirical_characteristic_function(spec, xi, N) - fourier_mu(spec, xi)));
  }
  ok = ok && worst_cf < 5e-3;
  auto big = scaled(spec, static_cast<double>(z.nonsquares));
  double prod = 0, merged = 0;
  for (double xi : {0.5, 1.0, 2.0}) {
    auto e = empirical_characteristic_function(big, xi, N);
    prod = std::max(prod, std::abs(e - fourier_mu(big, xi)));
    merged = std::max(merged, std::abs(e - fourier_mu_merged(big, xi)));
  }
  r.notes.push_back(std::string("angles ") + (li_conditional(spec) ? "have" : "have no") +
                    " relation with pi up to 100; rescaled by |nonsquares|: product formula off by " + fmt(prod, 3) +
                    ", merged torus formula off by " + fmt(merged, 3));
  r.passed = ok;
  r.detail = std::to_string(violations) + " support violations, worst mean error " + fmt(worst_mean, 3) +
             " x 5 std/sqrt(N), characteristic function error " + fmt(worst_cf, 3);
  return r;
}

CheckResult check_k_limit() {
  auto r = make_result(8, "k-limit classification");
  bool ok = true;
  std::string d;
  for (auto f : kBoth) {
    auto a = k_limit_classify(zeros_of(two_cubics_f5()), f).kind;
    auto b = k_limit_classify(zeros_of(central_zero_quartic_f9()), f).kind;
    auto c = k_limit_classify(zeros_of(split_cubic_f9()), f).kind;
    ok = ok && a == KLimitClass::SymmetricDissipating && b == KLimitClass::DiracExtreme &&
         c == KLimitClass::HalfDiracUnbiased;
    if (f == FactorFunction::BigOmega) d = to_string(a) + ", " + to_string(b) + ", " + to_string(c);
  }
  const auto& z = zeros_of(two_cubics_f5());
  const double d4 = density_scan(quadratic_main_term(z, FactorFunction::BigOmega, 4), 10000000).density;
  const double d10 = density_scan(quadratic_main_term(z, FactorFunction::BigOmega, 10), 10000000).density;
  const auto& c = zeros_of(central_zero_quartic_f9());
  const double c4 = density_scan(quadratic_main_term(c, FactorFunction::BigOmega, 4), 1000).density;
  const double c10 = density_scan(quadratic_main_term(c, FactorFunction::BigOmega, 10), 1000).density;
  ok = ok && std::abs(d10 - 0.5) < std::abs(d4 - 0.5) && c4 == 1 && c10 == 1;
  r.passed = ok;
  r.detail = d + "; two cubics k=4 " + fmt(d4) + " -> k=10 " + fmt(d10) + "; central quartic " + fmt(c4) + " -> " +
             fmt(c10);
  return r;
}

CheckResult check_gaussian_limit() {
  auto r = make_result(9, "Gaussian limit along a constructed family");
  auto F5 = make_field(5);
  const std::uint64_t N = 1000000;
  auto ks_of = [&](double c, unsigned w, int& deg) {
    auto M = construct_modulus(F5, c, w);
    deg = M.degree();
    const auto z = quadratic_zero_data(ModulusContext::make(M));
    auto spec = scaled(quadratic_main_term(z, FactorFunction::BigOmega, 1), central_limit_normalization(z));
    return gaussian_mixture_distance(spec, N, 0, 5);
  };
  // c = 4/3: floor(2^omega / c) = 3, 6, 12 for omega = 2, 3, 4.
  std::vector<double> ks;
  std::string d = "c=4/3:";
  for (unsigned w : {2u, 3u, 4u}) {
    int deg = 0;
    ks.push_back(ks_of(1.3333, w, deg));
    d += " omega=" + std::to_string(w) + " deg=" + std::to_string(deg) + " KS=" + fmt(ks.back(), 4);
  }
  r.passed = ks[1] < ks[0] && ks[2] < ks[1];
  r.detail = d;
  std::string sub = "omega=4 family:";
  std::vector<double> ks4;
  for (double c : {1.6, 1.45, 1.3333}) {
    int deg = 0;
    ks4.push_back(ks_of(c, 4, deg));
    sub += " deg=" + std::to_string(deg) + " KS=" + fmt(ks4.back(), 4);
  }
  sub += (ks4[1] < ks4[0] && ks4[2] < ks4[1]) ? " (decreasing)" : " (not decreasing)";
  r.notes.push_back(sub);
  return r;
}

CheckResult check_geometric_sums() {
  auto r = make_result(10, "normalized geometric log sums");
  const std::complex<double> alphas[3] = {2.0, -3.0, std::polar(std::sqrt(5.0), std::numbers::pi / 5)};
  const char* names[3] = {"2", "-3", "sqrt5 e^{i pi/5}"};
  double worst = 0;
  std::string where;
  for (int a = 0; a < 3; ++a) {
    std::string line = std::string("alpha=") + names[a] + ":";
    for (unsigned k = 0; k <= 2; ++k) {
      for (std::uint64_t X : {100ULL, 1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        auto g = geometric_log_sum(alphas[a], k, X);
        const double lx = std::log(static_cast<double>(X));
        const double env = std::pow(std::abs(alphas[a]), -static_cast<double>(X)) + (1 + k / lx) / (X * lx);
        const double ratio = std::abs(g.normalized - g.limit) / env;
        if (ratio > worst) {
          worst = ratio;
          where = std::string(names[a]) + " k=" + std::to_string(k) + " X=" + std::to_string(X);
        }
        if (X == 1000000ULL) line += " k=" + std::to_string(k) + " X*err=" + fmt(std::abs(g.normalized - g.limit) * X, 4);
      }
    }
    r.notes.push_back(line + " (|alpha/(alpha-1)^2| = " + fmt(std::abs(alphas[a] / ((alphas[a] - 1.0) * (alphas[a] - 1.0))), 4) + ")");
  }
  r.passed = worst <= 10;
  r.detail = "max error / envelope = " + fmt(worst, 4) + " at " + where;
  return r;
}

namespace {

struct Known {
  const char* reason;
  // Only failures matching the predicate count as the known failure.
  std::function<bool(const CheckResult&)> matches;
};

bool contains(const std::string& s, const char* needle) { return s.find(needle) != std::string::npos; }

const std::map<int, Known>& known_failures() {
  static const std::map<int, Known> k = {
      {1,
       {"the factor characters of two_cubics_f5 give (1+u^3) where (1-u^3) is printed, and no representation of "
        "F_9 gives exactly (1-3u)^2 for the central quartic",
        [](const CheckResult& r) {
          return contains(r.detail, "chi_M ok") && contains(r.detail, "split_cubic_f9 ok") &&
                 !contains(r.detail, "central_zero_quartic_f9 ok");
        }}},
      {6,
       {"for k >= 2 the residual ratio still converges from below over the computable range, so its envelope "
        "keeps a positive slope that shrinks as n grows",
        [](const CheckResult& r) {
          const auto pos = r.detail.find("k=1: ");
          return pos != std::string::npos && std::stod(r.detail.substr(pos + 5)) <= 0.1;
        }}},
      {9,
       {"at reachable degrees the normalized mean stays near 1, so KS is not monotone in omega",
        [](const CheckResult&) { return true; }}},
      {10,
       {"the true error is about alpha/((alpha-1)^2 X), which exceeds the stated envelope by a factor growing like "
        "log X",
        [](const CheckResult&) { return true; }}},
  };
  return k;
}

}  // namespace

std::optional<std::string> known_failure_reason(const CheckResult& r) {
  auto it = known_failures().find(r.id);
  if (it == known_failures().end()) return std::nullopt;
  if (r.passed || it->second.matches(r)) return std::string(it->second.reason);
  return std::nullopt;
}

std::vector<std::pair<int, Check>> golden_checks(const GoldenOptions& opt) {
  return {
      {1, check_l_polynomials},
      {2, check_quintic_zeros},
      {3, check_counting_oracle},
      {4, check_periodic_densities},
      {5, [opt] { return check_table1(opt); }},
      {6, check_main_term_residuals},
      {7, check_distribution},
      {8, check_k_limit},
      {9, check_gaussian_limit},
      {10, check_geometric_sums},
  };
}

}  // namespace fqbias
