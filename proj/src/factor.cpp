#include <algorithm>
#include <random>

#include "fqbias/errors.hpp"
#include "fqbias/poly.hpp"

namespace fqbias {

namespace {

using FactorList = std::vector<std::pair<Poly, unsigned>>;

Poly pth_root(const Poly& f) {
  const Field& F = f.F();
  const unsigned p = F.p();
  std::vector<Fq> v(f.degree() / p + 1, Fq(0));
  const std::int64_t r = F.q() / p;  // c^{q/p} is the p-th root of c
  for (int i = 0; i <= f.degree(); i += p) v[i / p] = F.pow(f.coeff(i), r);
  return Poly(f.field(), std::move(v));
}

void squarefree_parts(const Poly& f, unsigned mult, FactorList& out) {
  if (f.degree() < 1) return;
  const unsigned p = f.F().p();
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c.monic()), mult * p, out);
}

FactorList distinct_degree(Poly f) {
  FactorList out;
  const Poly t = Poly::t(f.field());
  Poly h = t % f;
  unsigned i = 1;
  while (f.degree() >= 2 * static_cast<int>(i)) {
    h = pow_mod(h, f.F().q(), f);
    Poly g = gcd(h - t, f);
    if (!g.is_one()) {
      out.push_back({g, i});
      f = f / g;
      h = h % f;
    }
    ++i;
  }
  if (f.degree() > 0) out.push_back({f.monic(), static_cast<unsigned>(f.degree())});
  return out;
}

Poly random_poly(const FieldPtr& F, int below_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, F->q() - 1);
  std::vector<Fq> v(below_deg);
  for (auto& c : v) c = Fq(dist(rng));
  return Poly(F, std::move(v));
}

void equal_degree(const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const Field& F = f.F();
  const FieldPtr& fp = f.field();
  for (;;) {
    Poly a = random_poly(fp, f.degree(), rng);
    if (a.degree() < 1) continue;
    Poly b;
    if (F.p() == 2) {
      Poly s = a, tr = a;
      for (unsigned i = 1; i < F.degree() * d; ++i) {
        s = mulmod(s, s, f);
        tr += s;
      }
      b = tr;
    } else {
      Poly s = a, acc = a;
      for (unsigned i = 1; i < d; ++i) {
        s = pow_mod(s, F.q(), f);
        acc = mulmod(acc, s, f);
      }
      b = pow_mod(acc, (F.q() - 1) / 2, f) - Poly::constant(fp, Fq(1));
    }
    Poly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

FactorList trial_division(Poly f) {
  FactorList out;
  for (unsigned d = 1; f.degree() >= 2 * static_cast<int>(d); ++d) {
    for (const Poly& P : enumerate_irreducibles(f.field(), d)) {
      if (f.degree() < 2 * static_cast<int>(d)) break;
      unsigned e = 0;
      for (;;) {
        auto [qq, r] = divrem(f, P);
        if (!r.is_zero()) break;
        f = qq;
        ++e;
      }
      if (e) out.push_back({P, e});
    }
  }
  if (f.degree() > 0) {
    // What remains is irreducible; it may coincide with a factor already found.
    Poly m = f.monic();
    auto it = std::find_if(out.begin(), out.end(), [&](auto& pe) { return pe.first == m; });
    if (it != out.end()) {
      ++it->second;
    } else {
      out.push_back({m, 1});
    }
  }
  return out;
}

}  // namespace

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPoly, "squarefree test of zero");
  if (f.degree() < 1) return true;
  return gcd(f, f.derivative()).is_one();
}

Factorization factorize(const Poly& f, FactorMethod method, std::uint64_t seed) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPoly, "cannot factor the zero polynomial");
  Factorization out;
  out.unit = f.lead();
  Poly g = f.monic();
  if (method == FactorMethod::TrialDivision) {
    out.factors = trial_division(g);
  } else {
    std::mt19937_64 rng(seed);
    FactorList sq;
    squarefree_parts(g, 1, sq);
    for (auto& [part, mult] : sq) {
      for (auto& [block, d] : distinct_degree(part)) {
        std::vector<Poly> irr;
        equal_degree(block, d, rng, irr);
        for (auto& P : irr) out.factors.push_back({P, mult});
      }
    }
    // Squarefree parts of different p-power levels can repeat a prime.
    std::sort(out.factors.begin(), out.factors.end(),
              [](auto& a, auto& b) { return canonical_less(a.first, b.first); });
    FactorList merged;
    for (auto& pe : out.factors) {
      if (!merged.empty() && merged.back().first == pe.first) {
        merged.back().second += pe.second;
      } else {
        merged.push_back(pe);
      }
    }
    out.factors = std::move(merged);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](auto& a, auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

}  // namespace fqbias
