#include "fqbias/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "fqbias/errors.hpp"
#include "fqbias/expr.hpp"

namespace fqbias {

namespace {

using boost::multiprecision::cpp_int;
using ZPoly = std::vector<cpp_int>;  // little-endian, trimmed

constexpr double kNormTol = 1e-6;

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

cpp_int content(const ZPoly& a) {
  cpp_int g = 0;
  for (auto& c : a) g = boost::multiprecision::gcd(g, c);
  return g;
}

ZPoly primitive(ZPoly a) {
  trim(a);
  if (a.empty()) return a;
  cpp_int g = content(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

ZPoly derivative(const ZPoly& a) {
  ZPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<int>(i));
  trim(d);
  return d;
}

// Pseudo-division: lc(b)^(deg a - deg b + 1) a = quo b + rem.
std::pair<ZPoly, ZPoly> pseudo_divrem(ZPoly a, const ZPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  int da = static_cast<int>(a.size()) - 1;
  if (da < db) return {{}, a};
  ZPoly quo(da - db + 1, 0);
  const cpp_int& lb = b.back();
  for (int i = da; i >= db; --i) {
    for (auto& c : quo) c *= lb;
    cpp_int c = a[i];
    for (int j = 0; j <= i; ++j) a[j] *= lb;
    quo[i - db] += c;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  a.resize(db);
  trim(a);
  trim(quo);
  return {quo, a};
}

ZPoly zgcd(ZPoly a, ZPoly b) {
  a = primitive(a);
  b = primitive(b);
  while (!b.empty()) {
    ZPoly r = primitive(pseudo_divrem(a, b).second);
    a = std::move(b);
    b = std::move(r);
  }
  return primitive(a);
}

// Primitive part of a / b, which must divide exactly over Q.
ZPoly zexact_div(const ZPoly& a, const ZPoly& b) {
  auto [quo, rem] = pseudo_divrem(a, b);
  if (!rem.empty()) throw Error(ErrorCode::InexactDivision, "integer polynomial division not exact");
  return primitive(quo);
}

// Divide by (1 + s u) in Z[u] if exact (s may be negative); returns success.
bool divide_linear(ZPoly& a, const cpp_int& s) {
  // a(u) = (1 + s u) b(u): b_0 = a_0, b_i = a_i - s b_{i-1}
  if (a.size() < 2) return false;
  ZPoly b(a.size() - 1);
  b[0] = a[0];
  for (std::size_t i = 1; i < b.size(); ++i) b[i] = a[i] - s * b[i - 1];
  if (a.back() != s * b.back()) return false;
  a = std::move(b);
  return true;
}

// Divide by (1 - q u^2) if exact.
bool divide_quadratic(ZPoly& a, const cpp_int& q) {
  if (a.size() < 3) return false;
  // a = (1 - q u^2) b: b_i = a_i + q b_{i-2}
  ZPoly b(a.size() - 2);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = a[i] + (i >= 2 ? q * b[i - 2] : cpp_int(0));
  // check top two coefficients
  const std::size_t n = a.size() - 1;
  cpp_int top1 = -q * b[n - 2];
  cpp_int top0 = (n - 1 >= 2 ? -q * b[n - 3] : cpp_int(0)) + (n - 1 < b.size() ? b[n - 1] : cpp_int(0));
  if (a[n] != top1 || a[n - 1] != top0) return false;
  a = std::move(b);
  return true;
}

std::complex<long double> horner(const std::vector<std::complex<long double>>& c, std::complex<long double> x,
                                  std::complex<long double>* deriv) {
  std::complex<long double> p = 0, d = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    d = d * x + p;
    p = p * x + c[i];
  }
  if (deriv) *deriv = d;
  return p;
}

bool is_perfect_square(std::uint64_t q, std::uint64_t& s) {
  s = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(q))));
  for (std::uint64_t t = s > 1 ? s - 1 : 0; t <= s + 1; ++t) {
    if (t * t == q) {
      s = t;
      return true;
    }
  }
  return false;
}

struct Classified {
  enum Kind { Spectral, Unit } kind;
};

Classified::Kind classify_norm(std::complex<double> alpha, double sqrtq) {
  double la = std::log(std::abs(alpha));
  if (std::abs(la - std::log(sqrtq)) < kNormTol) return Classified::Spectral;
  if (std::abs(la) < kNormTol) return Classified::Unit;
  throw Error(ErrorCode::ClassificationAmbiguous,
              "inverse zero of norm " + std::to_string(std::abs(alpha)) + " is neither sqrt(q) nor 1");
}

void finish(ZeroData& z) {
  auto all = z.all_spectral();
  z.d_chi = static_cast<unsigned>(all.size());
  z.gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i) {
    double gi = all[i].gamma;
    z.gap = std::min({z.gap, std::abs(gi), std::numbers::pi - std::abs(gi)});
    for (std::size_t j = i + 1; j < all.size(); ++j) z.gap = std::min(z.gap, std::abs(gi - all[j].gamma));
  }
}

}  // namespace

LPolynomial LPolynomial::from_integers(std::vector<std::int64_t> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  LPolynomial L;
  L.character_order = 2;
  L.exact = true;
  L.integer_coeffs = c;
  for (auto x : c) L.coeffs.emplace_back(static_cast<double>(x), 0.0);
  return L;
}

std::vector<LPolynomial> compute_l_polynomials(const std::vector<Character>& chars, const Limits& limits) {
  if (chars.empty()) return {};
  const ContextPtr& ctx = chars.front().context();
  for (auto& chi : chars) {
    if (chi.is_principal()) throw Error(ErrorCode::PrincipalCharacter, "L-polynomial of the principal character");
  }
  const unsigned D = ctx->degree();
  require_budget(ctx->field()->q(), D - 1, limits);
  std::vector<LPolynomial> out(chars.size());
  for (std::size_t c = 0; c < chars.size(); ++c) {
    out[c].character_order = chars[c].order();
    out[c].exact = chars[c].is_real();
    out[c].cyclotomic.assign(D, std::vector<std::int64_t>(chars[c].order(), 0));
  }
  for (unsigned n = 0; n < D; ++n) {
    for (ClassWalker w(ctx, n, limits); !w.done(); w.next()) {
      std::int64_t g = w.group_index();
      if (g < 0) continue;
      for (std::size_t c = 0; c < chars.size(); ++c) ++out[c].cyclotomic[n][chars[c].phase(static_cast<std::uint64_t>(g))];
    }
  }
  for (auto& L : out) {
    const std::uint64_t ord = L.character_order;
    for (unsigned n = 0; n < D; ++n) {
      const auto& cnt = L.cyclotomic[n];
      if (L.exact) {
        std::int64_t v = cnt[0] - (ord == 2 ? cnt[1] : 0);
        L.integer_coeffs.push_back(v);
        L.coeffs.emplace_back(static_cast<double>(v), 0.0);
      } else {
        std::complex<long double> s = 0;
        for (std::uint64_t r = 0; r < ord; ++r) {
          if (cnt[r]) s += static_cast<long double>(cnt[r]) *
                           std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * r / static_cast<long double>(ord));
        }
        L.coeffs.emplace_back(static_cast<double>(s.real()), static_cast<double>(s.imag()));
      }
    }
    if (L.exact) {
      while (!L.integer_coeffs.empty() && L.integer_coeffs.back() == 0) L.integer_coeffs.pop_back();
      L.coeffs.resize(L.integer_coeffs.size());
    } else {
      const double q = static_cast<double>(ctx->field()->q());
      while (L.coeffs.size() > 1) {
        double scale = std::pow(q, 0.5 * (L.coeffs.size() - 1));
        if (std::abs(L.coeffs.back()) > 1e-9 * std::max(1.0, scale)) break;
        L.coeffs.pop_back();
      }
    }
  }
  return out;
}

LPolynomial compute_l_polynomial(const Character& chi, const Limits& limits) {
  return compute_l_polynomials({chi}, limits).front();
}

std::vector<SpectralZero> ZeroData::all_spectral() const {
  std::vector<SpectralZero> out;
  for (auto& s : spectral) {
    out.push_back(s);
    if (conjugates_implied) out.push_back({-s.gamma, s.multiplicity, std::conj(s.alpha)});
  }
  return out;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<std::complex<long double>> cl(c.begin(), c.end());
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < n; ++i) {
    std::complex<long double> x = es.eigenvalues()[i];
    for (int it = 0; it < 50; ++it) {
      std::complex<long double> d;
      std::complex<long double> p = horner(cl, x, &d);
      if (std::abs(d) == 0) break;
      std::complex<long double> step = p / d;
      x -= step;
      if (std::abs(step) <= 1e-18L * std::max(1.0L, std::abs(x))) break;
    }
    roots.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  }
  return roots;
}

ZeroData extract_zeros(const LPolynomial& L, std::uint64_t q) {
  ZeroData z;
  z.q = q;
  z.degree = L.degree();
  const double sqrtq = std::sqrt(static_cast<double>(q));
  if (L.exact) {
    z.conjugates_implied = true;
    ZPoly a;
    for (auto c : L.integer_coeffs) a.emplace_back(c);
    trim(a);
    std::uint64_t s;
    if (is_perfect_square(q, s)) {
      while (divide_linear(a, -cpp_int(s))) ++z.m_plus;
      while (divide_linear(a, cpp_int(s))) ++z.m_minus;
    } else {
      while (divide_quadratic(a, cpp_int(q))) {
        ++z.m_plus;
        ++z.m_minus;
      }
    }
    if (a.size() > 1) {
      // g_1 = a, g_{i+1} = gcd(g_i, g_i'); h_i = g_i / g_{i+1} has the roots of multiplicity >= i.
      std::vector<ZPoly> h;
      ZPoly g = primitive(a);
      while (g.size() > 1) {
        ZPoly next = zgcd(g, derivative(g));
        h.push_back(zexact_div(g, next));
        g = next;
      }
      for (std::size_t i = 0; i < h.size(); ++i) {
        ZPoly exact_i = i + 1 < h.size() ? zexact_div(h[i], h[i + 1]) : h[i];
        if (exact_i.size() <= 1) continue;
        const unsigned mult = static_cast<unsigned>(i + 1);
        // reversed polynomial has the inverse zeros alpha as roots
        std::vector<std::complex<double>> rev;
        double scale = 0;
        for (auto& c : exact_i) scale = std::max(scale, std::abs(c.convert_to<double>()));
        for (std::size_t j = exact_i.size(); j-- > 0;) rev.emplace_back(exact_i[j].convert_to<double>() / scale, 0.0);
        for (auto alpha : polynomial_roots(rev)) {
          auto kind = classify_norm(alpha, sqrtq);
          if (kind == Classified::Unit) {
            for (unsigned m = 0; m < mult; ++m) z.unit_zeros.push_back(alpha);
          } else if (alpha.imag() > 0) {
            z.spectral.push_back({std::arg(alpha), mult, alpha});
          } else if (std::abs(alpha.imag()) <= 1e-9 * sqrtq) {
            throw Error(ErrorCode::ClassificationAmbiguous, "real zero of norm sqrt(q) survived exact removal");
          }
        }
      }
    }
    std::sort(z.spectral.begin(), z.spectral.end(), [](auto& x, auto& y) { return x.gamma < y.gamma; });
    std::sort(z.unit_zeros.begin(), z.unit_zeros.end(),
              [](auto& x, auto& y) { return std::arg(x) < std::arg(y); });
    unsigned count = z.m_plus + z.m_minus + static_cast<unsigned>(z.unit_zeros.size());
    for (auto& s : z.spectral) count += 2 * s.multiplicity;
    if (static_cast<int>(count) != z.degree) {
      throw Error(ErrorCode::ClassificationAmbiguous, "zeros of conjugate pairs do not account for the degree");
    }
  } else {
    z.conjugates_implied = false;
    std::vector<std::complex<double>> rev(L.coeffs.rbegin(), L.coeffs.rend());
    auto roots = polynomial_roots(rev);
    const double radius = 1e-6 * sqrtq;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      std::complex<double> center = roots[i];
      unsigned mult = 1;
      used[i] = true;
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (!used[j] && std::abs(roots[j] - roots[i]) < radius * 1e3) {
          // multiple roots split by about eps^(1/m); accept and confirm by the averaged center
          used[j] = true;
          center += roots[j];
          ++mult;
        }
      }
      center /= static_cast<double>(mult);
      if (std::abs(center - sqrtq) < radius * 1e3) {
        z.m_plus += mult;
      } else if (std::abs(center + sqrtq) < radius * 1e3) {
        z.m_minus += mult;
      } else if (classify_norm(center, sqrtq) == Classified::Unit) {
        for (unsigned m = 0; m < mult; ++m) z.unit_zeros.push_back(center);
      } else {
        z.spectral.push_back({std::arg(center), mult, center});
      }
    }
    std::sort(z.spectral.begin(), z.spectral.end(), [](auto& x, auto& y) { return x.gamma < y.gamma; });
  }
  finish(z);
  return z;
}

std::vector<std::complex<double>> reconstruct_coefficients(const ZeroData& z) {
  std::vector<std::complex<double>> p{1.0};
  auto mul_linear = [&](std::complex<double> a) {
    std::vector<std::complex<double>> r(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      r[i] += p[i];
      r[i + 1] -= a * p[i];
    }
    p = std::move(r);
  };
  const double s = std::sqrt(static_cast<double>(z.q));
  for (unsigned i = 0; i < z.m_plus; ++i) mul_linear(s);
  for (unsigned i = 0; i < z.m_minus; ++i) mul_linear(-s);
  for (auto& sp : z.all_spectral()) {
    for (unsigned i = 0; i < sp.multiplicity; ++i) mul_linear(sp.alpha);
  }
  for (auto b : z.unit_zeros) mul_linear(b);
  return p;
}

std::vector<std::int64_t> power_sums_exact(const LPolynomial& L, unsigned n_max) {
  if (!L.exact) throw Error(ErrorCode::InvalidArgument, "exact power sums need integer coefficients");
  std::vector<std::int64_t> psi(n_max + 1, 0);
  auto c = [&](unsigned n) -> __int128 { return n < L.integer_coeffs.size() ? L.integer_coeffs[n] : 0; };
  for (unsigned n = 1; n <= n_max; ++n) {
    __int128 v = static_cast<__int128>(n) * c(n);
    for (unsigned j = 1; j < n; ++j) v -= static_cast<__int128>(psi[j]) * c(n - j);
    if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorCode::ResourceLimit, "power sum overflows int64");
    psi[n] = static_cast<std::int64_t>(v);
  }
  return psi;
}

std::vector<std::complex<double>> power_sums(const LPolynomial& L, unsigned n_max) {
  std::vector<std::complex<double>> psi(n_max + 1, 0.0);
  auto c = [&](unsigned n) -> std::complex<double> { return n < L.coeffs.size() ? L.coeffs[n] : 0.0; };
  for (unsigned n = 1; n <= n_max; ++n) {
    std::complex<double> v = static_cast<double>(n) * c(n);
    for (unsigned j = 1; j < n; ++j) v -= psi[j] * c(n - j);
    psi[n] = v;
  }
  return psi;
}

double gamma_M(const std::vector<ZeroData>& zeros) {
  double g = std::numeric_limits<double>::infinity();
  for (auto& z : zeros) g = std::min(g, z.gap);
  return g;
}

namespace {

// L == want * (1 - u)^j for some j >= 0.
bool matches_up_to_trivial(std::vector<std::int64_t> L, const std::vector<std::int64_t>& want) {
  while (L.size() > want.size()) {
    // divide by (1 - u): b_i = sum_{k<=i} L_k
    std::vector<std::int64_t> b(L.size() - 1);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = acc += L[i];
    if (acc + L.back() != 0) return false;
    L = std::move(b);
  }
  return L == want;
}

}  // namespace

FieldRepresentation resolve_field_representation(std::uint32_t p, unsigned e, const std::string& pattern,
                                                 const std::vector<std::int64_t>& expected_L, const Limits& limits) {
  std::vector<std::int64_t> want = expected_L;
  while (!want.empty() && want.back() == 0) want.pop_back();
  std::vector<std::pair<FieldPtr, Fq>> reps;
  if (!mentions_generator(pattern)) {
    auto F = Field::make(p, e);
    reps.emplace_back(F, F->generator());
  } else {
    for (auto& def : prime_field_irreducibles(p, e)) {
      auto F = Field::make(p, e, def);
      for (std::uint32_t c = 1; c < F->q(); ++c) {
        if (F->order(Fq(c)) == F->q() - 1) reps.emplace_back(F, Fq(c));
      }
    }
  }
  std::vector<std::optional<FieldRepresentation>> computed(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto& [F, g] = reps[i];
    Poly M = parse_poly_expr(pattern, F, g);
    if (!M.is_monic() || M.degree() < 1 || !is_squarefree(M)) continue;
    auto ctx = ModulusContext::make(M, limits);
    auto chi = quadratic_character(ctx, (1ULL << ctx->omega()) - 1);
    computed[i] = FieldRepresentation{F, g, M, compute_l_polynomial(chi, limits)};
    if (computed[i]->L.integer_coeffs == want) return *computed[i];
  }
  // Expected data may omit the trivial zeros at u = 1 coming from the place at infinity.
  for (auto& r : computed) {
    if (r && matches_up_to_trivial(r->L.integer_coeffs, want)) return *r;
  }
  throw Error(ErrorCode::NoMatch, "no field representation reproduces the expected L-polynomial");
}

}  // namespace fqbias
