#include "fqbias/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fqbias/errors.hpp"

namespace fqbias {

namespace {

constexpr std::uint64_t kLocalTableLimit = 1u << 22;
constexpr std::uint64_t kResidueTableLimit = 1u << 20;
constexpr std::uint64_t kMemberLimit = 1u << 24;

std::uint64_t residue_code(const Poly& a) { return a.code(); }

Poly find_cyclic_generator(const Poly& P, std::uint64_t qd) {
  const std::uint64_t n = qd - 1;
  const auto primes = prime_factors(n);
  for (std::uint64_t c = 1; c < qd; ++c) {
    Poly g = Poly::from_code(P.field(), c);
    bool ok = true;
    for (auto r : primes) {
      if (pow_mod(g, n / r, P).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error(ErrorCode::InvalidArgument, "no generator modulo irreducible");
}

struct U1Basis {
  std::vector<Poly> gens;
  std::vector<std::uint64_t> orders;
  // element code -> packed coordinates (first generator fastest)
  std::vector<std::pair<Poly, std::uint64_t>> elements;
};

// Basis of the p-group 1 + P (F_q[t]/P^e): repeatedly adjoin an element of
// maximal order modulo the subgroup built so far, corrected to have the same
// order in the group.
U1Basis decompose_u1(const Poly& P, const Poly& m, unsigned e) {
  const FieldPtr& f = P.field();
  const std::uint64_t p = f->p();
  const unsigned rdeg = static_cast<unsigned>(P.degree()) * (e - 1);
  const std::uint64_t count = checked_power(f->q(), rdeg);
  std::vector<Poly> U;
  U.reserve(count);
  const Poly one = Poly::constant(f, Fq(1));
  for (std::uint64_t r = 0; r < count; ++r) U.push_back((one + P * Poly::from_code(f, r)) % m);

  U1Basis out;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> H;
  H[residue_code(one)] = {};
  std::vector<std::pair<Poly, std::vector<std::uint64_t>>> Hlist{{one, {}}};
  while (H.size() < count) {
    unsigned best_k = 0;
    const Poly* best = nullptr;
    for (const Poly& u : U) {
      if (H.count(residue_code(u))) continue;
      Poly y = u;
      unsigned k = 0;
      do {
        y = pow_mod(y, p, m);
        ++k;
      } while (!H.count(residue_code(y)));
      if (k > best_k) {
        best_k = k;
        best = &u;
      }
    }
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < best_k; ++i) pk *= p;
    Poly h = pow_mod(*best, pk, m);
    const auto& c = H.at(residue_code(h));
    Poly g = *best;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] % pk != 0) throw Error(ErrorCode::InvalidArgument, "U1 decomposition failed");
      std::uint64_t o = out.orders[i];
      std::uint64_t ex = (o - (c[i] / pk) % o) % o;
      g = mulmod(g, pow_mod(out.gens[i], ex, m), m);
    }
    out.gens.push_back(g);
    out.orders.push_back(pk);
    std::vector<std::pair<Poly, std::vector<std::uint64_t>>> next;
    next.reserve(Hlist.size() * pk);
    H.clear();
    for (auto& [z0, coords] : Hlist) {
      Poly z = z0;
      for (std::uint64_t j = 0; j < pk; ++j) {
        auto cc = coords;
        cc.push_back(j);
        H[residue_code(z)] = cc;
        next.push_back({z, std::move(cc)});
        z = mulmod(z, g, m);
      }
    }
    Hlist = std::move(next);
  }
  for (auto& [z, coords] : Hlist) {
    std::uint64_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      idx += coords[i] * stride;
      stride *= out.orders[i];
    }
    out.elements.push_back({z, idx});
  }
  return out;
}

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace

ContextPtr ModulusContext::make(const Poly& M, const Limits& limits) {
  if (M.is_zero() || !M.is_monic()) throw Error(ErrorCode::NonMonic, "modulus must be monic");
  if (M.degree() < 1) throw Error(ErrorCode::ConstantPoly, "modulus must have degree >= 1");
  auto ctx = std::shared_ptr<ModulusContext>(new ModulusContext());
  ctx->M_ = M;
  ctx->build(limits);
  return ctx;
}

void ModulusContext::build(const Limits& limits) {
  const FieldPtr& f = M_.field();
  const std::uint64_t q = f->q();
  if (checked_power(q, degree()) >= (1ULL << 62)) {
    throw Error(ErrorCode::ResourceLimit, "modulus too large for 64-bit group indexing");
  }
  (void)limits;
  fact_ = factorize(M_);
  for (auto& [P, e] : fact_.factors) {
    if (e > 1) squarefree_ = false;
    LocalComponent c;
    c.prime = P;
    c.exponent = e;
    c.modulus = pow(P, e);
    c.degree = static_cast<unsigned>(c.modulus.degree());
    const unsigned d = static_cast<unsigned>(P.degree());
    const std::uint64_t qd = checked_power(q, d);
    const std::uint64_t ncyc = qd - 1;
    Poly g = find_cyclic_generator(P, qd);
    Poly w = g % c.modulus;
    for (unsigned i = 0; i < d * (e - 1); ++i) w = pow_mod(w, q, c.modulus);
    c.generators.push_back(w);
    c.orders.push_back(ncyc);
    U1Basis u1;
    if (e >= 2) {
      u1 = decompose_u1(P, c.modulus, e);
      for (std::size_t i = 0; i < u1.gens.size(); ++i) {
        c.generators.push_back(u1.gens[i]);
        c.orders.push_back(u1.orders[i]);
      }
    } else {
      u1.elements.push_back({Poly::constant(f, Fq(1)), 0});
    }
    c.size = ncyc * checked_power(q, d * (e - 1));
    const std::uint64_t qD = checked_power(q, c.degree);
    if (qD <= kLocalTableLimit) {
      c.table.assign(qD, -1);
      Poly x = Poly::constant(f, Fq(1));
      for (std::uint64_t i = 0; i < ncyc; ++i) {
        for (auto& [u, idx] : u1.elements) {
          Poly y = e >= 2 ? mulmod(x, u, c.modulus) : x;
          c.table[residue_code(y)] = static_cast<std::int32_t>(i + ncyc * idx);
        }
        x = mulmod(x, w, c.modulus);
      }
    } else if (e == 1) {
      std::uint64_t m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(ncyc))));
      if (m > kLocalTableLimit) throw Error(ErrorCode::ResourceLimit, "local unit group too large");
      c.bsgs_m = m;
      Poly x = Poly::constant(f, Fq(1));
      for (std::uint64_t j = 0; j < m; ++j) {
        c.baby.emplace(residue_code(x), j);
        x = mulmod(x, w, c.modulus);
      }
      c.giant = inverse_mod(x, c.modulus);
    } else {
      throw Error(ErrorCode::ResourceLimit, "non-squarefree component too large for discrete logs");
    }
    c.first_generator = orders_.size();
    c.stride = phi_;
    for (auto o : c.orders) {
      strides_.push_back(strides_.empty() ? 1 : strides_.back() * orders_.back());
      orders_.push_back(o);
      lambda_ = lcm64(lambda_, o);
    }
    phi_ *= c.size;
    components_.push_back(std::move(c));
  }
  for (auto& c : components_) {
    Poly cof = M_ / c.modulus;
    if (cof.degree() == 0) {
      crt_basis_.push_back(Poly::constant(f, Fq(1)));
    } else {
      crt_basis_.push_back((cof * inverse_mod(cof, c.modulus)) % M_);
    }
  }
  const std::uint64_t qM = checked_power(q, degree());
  if (qM <= kResidueTableLimit) {
    std::vector<std::int64_t> table(qM, -1);
    for (std::uint64_t code = 0; code < qM; ++code) {
      auto g = group_index(Poly::from_code(f, code));
      if (g) table[code] = static_cast<std::int64_t>(*g);
    }
    residue_table_ = std::move(table);
  }
}

std::int64_t ModulusContext::local_index(std::size_t i, std::uint64_t code) const {
  const LocalComponent& c = components_[i];
  if (!c.table.empty()) return c.table[code];
  Poly a = Poly::from_code(field(), code);
  if (a.is_zero() || !gcd(a, c.prime).is_one()) return -1;
  Poly y = a;
  for (std::uint64_t i2 = 0; i2 <= c.bsgs_m; ++i2) {
    auto it = c.baby.find(residue_code(y));
    if (it != c.baby.end()) return static_cast<std::int64_t>((i2 * c.bsgs_m + it->second) % c.orders[0]);
    y = mulmod(y, c.giant, c.modulus);
  }
  throw Error(ErrorCode::InvalidArgument, "discrete log failed");
}

std::optional<std::uint64_t> ModulusContext::group_index(const Poly& a) const {
  if (!residue_table_.empty() && a.degree() < static_cast<int>(degree())) {
    auto v = residue_table_[residue_code(a)];
    if (v < 0) return std::nullopt;
    return static_cast<std::uint64_t>(v);
  }
  std::uint64_t g = 0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::int64_t li = local_index(i, residue_code(a % components_[i].modulus));
    if (li < 0) return std::nullopt;
    g += static_cast<std::uint64_t>(li) * components_[i].stride;
  }
  return g;
}

std::vector<std::uint64_t> ModulusContext::exponents_of(std::uint64_t g) const {
  std::vector<std::uint64_t> x(orders_.size());
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    x[j] = g % orders_[j];
    g /= orders_[j];
  }
  return x;
}

std::uint64_t ModulusContext::index_of(const std::vector<std::uint64_t>& exps) const {
  std::uint64_t g = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) g += (exps[j] % orders_[j]) * strides_[j];
  return g;
}

std::uint64_t ModulusContext::multiply(std::uint64_t g, std::uint64_t h) const {
  auto a = exponents_of(g), b = exponents_of(h);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = (a[j] + b[j]) % orders_[j];
  return index_of(a);
}

Poly ModulusContext::element(std::uint64_t g) const {
  auto x = exponents_of(g);
  Poly r(field());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const LocalComponent& c = components_[i];
    Poly local = Poly::constant(field(), Fq(1));
    for (std::size_t j = 0; j < c.generators.size(); ++j) {
      local = mulmod(local, pow_mod(c.generators[j], x[c.first_generator + j], c.modulus), c.modulus);
    }
    r += crt_basis_[i] * local;
  }
  return r % M_;
}

std::vector<std::uint64_t> ModulusContext::canonical_unit_codes() const {
  require_budget(field()->q(), degree(), Limits{});
  std::vector<std::uint64_t> out;
  const std::uint64_t qM = checked_power(field()->q(), degree());
  for (std::uint64_t code = 0; code < qM; ++code) {
    if (group_index(Poly::from_code(field(), code))) out.push_back(code);
  }
  return out;
}

Character::Character(ContextPtr ctx, std::vector<std::uint64_t> exps) : ctx_(std::move(ctx)), exps_(std::move(exps)) {
  const auto& o = ctx_->generator_orders();
  if (exps_.size() != o.size()) throw Error(ErrorCode::InvalidArgument, "character exponent vector has wrong length");
  order_ = 1;
  for (std::size_t j = 0; j < o.size(); ++j) {
    exps_[j] %= o[j];
    order_ = lcm64(order_, o[j] / std::gcd(o[j], exps_[j]));
  }
  weights_.resize(o.size());
  for (std::size_t j = 0; j < o.size(); ++j) {
    // a_j / o_j has denominator dividing order, so a_j * order / o_j is an integer.
    unsigned __int128 num = static_cast<unsigned __int128>(exps_[j]) * order_;
    weights_[j] = static_cast<std::uint64_t>((num / o[j]) % order_);
  }
}

Character Character::principal(ContextPtr ctx) {
  std::vector<std::uint64_t> z(ctx->num_generators(), 0);
  return Character(std::move(ctx), std::move(z));
}

std::uint64_t Character::phase(std::uint64_t g) const {
  if (order_ == 1) return 0;
  const auto& o = ctx_->generator_orders();
  unsigned __int128 s = 0;
  for (std::size_t j = 0; j < o.size(); ++j) {
    std::uint64_t x = g % o[j];
    g /= o[j];
    if (weights_[j]) s += static_cast<unsigned __int128>(x) * weights_[j];
  }
  return static_cast<std::uint64_t>(s % order_);
}

std::complex<double> Character::value(std::uint64_t g) const {
  std::uint64_t ph = phase(g);
  if (ph == 0) return {1.0, 0.0};
  if (2 * ph == order_) return {-1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(ph) / static_cast<double>(order_));
}

std::complex<double> Character::evaluate(const Poly& a) const {
  auto g = ctx_->group_index(a);
  if (!g) return {0.0, 0.0};
  return value(*g);
}

int Character::real_value(const Poly& a) const {
  if (!is_real()) throw Error(ErrorCode::InvalidArgument, "real_value of a non-real character");
  auto g = ctx_->group_index(a);
  if (!g) return 0;
  return phase(*g) == 0 ? 1 : -1;
}

Character Character::pow(std::int64_t j) const {
  const auto& o = ctx_->generator_orders();
  std::vector<std::uint64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::int64_t m = static_cast<std::int64_t>(o[i]);
    std::int64_t jj = j % m;
    if (jj < 0) jj += m;
    e[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(exps_[i]) * jj) % o[i]);
  }
  return Character(ctx_, std::move(e));
}

Character Character::operator*(const Character& other) const {
  const auto& o = ctx_->generator_orders();
  std::vector<std::uint64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (exps_[i] + other.exps_[i]) % o[i];
  return Character(ctx_, std::move(e));
}

std::string Character::key() const {
  std::string s;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exps_[i]);
  }
  return s;
}

std::vector<Character> all_characters(const ContextPtr& ctx) {
  if (ctx->phi() > kMemberLimit) throw Error(ErrorCode::ResourceLimit, "too many characters");
  std::vector<Character> out;
  out.reserve(ctx->phi());
  for (std::uint64_t g = 0; g < ctx->phi(); ++g) out.emplace_back(ctx, ctx->exponents_of(g));
  return out;
}

std::vector<Character> quadratic_characters(const ContextPtr& ctx) {
  const auto& o = ctx->generator_orders();
  std::vector<std::size_t> even;
  for (std::size_t j = 0; j < o.size(); ++j) {
    if (o[j] % 2 == 0) even.push_back(j);
  }
  std::vector<Character> out;
  for (std::uint64_t mask = 1; mask < (1ULL << even.size()); ++mask) {
    std::vector<std::uint64_t> e(o.size(), 0);
    for (std::size_t b = 0; b < even.size(); ++b) {
      if (mask >> b & 1) e[even[b]] = o[even[b]] / 2;
    }
    out.emplace_back(ctx, std::move(e));
  }
  return out;
}

Character quadratic_character(const ContextPtr& ctx, std::uint64_t mask) {
  if (!ctx->is_squarefree()) throw Error(ErrorCode::NotSquarefree, "quadratic race requires squarefree M");
  if (ctx->field()->p() == 2) throw Error(ErrorCode::EvenCharacteristic, "quadratic characters need odd q");
  std::vector<std::uint64_t> e(ctx->num_generators(), 0);
  const auto& comps = ctx->components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (mask >> i & 1) e[comps[i].first_generator] = comps[i].orders[0] / 2;
  }
  return Character(ctx, std::move(e));
}

Poly conductor(const Character& chi) {
  const ContextPtr& ctx = chi.context();
  const FieldPtr& f = ctx->field();
  Poly D = Poly::constant(f, Fq(1));
  const auto& comps = ctx->components();
  const auto& o = ctx->generator_orders();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const LocalComponent& c = comps[i];
    auto local_trivial_on = [&](unsigned fexp) {
      // Is chi trivial on {a == 1 mod P^fexp} inside this component?
      Poly Pf = pow(c.prime, fexp);
      const unsigned rdeg = c.degree - static_cast<unsigned>(Pf.degree());
      const std::uint64_t count = checked_power(f->q(), rdeg);
      const Poly one = Poly::constant(f, Fq(1));
      for (std::uint64_t r = 0; r < count; ++r) {
        Poly a = (one + Pf * Poly::from_code(f, r)) % c.modulus;
        std::int64_t li = ctx->local_index(i, a.code());
        if (li < 0) continue;
        std::uint64_t g = static_cast<std::uint64_t>(li) * c.stride;
        if (chi.phase(g) != 0) return false;
      }
      return true;
    };
    bool trivial = true;
    for (std::size_t j = 0; j < c.orders.size(); ++j) {
      if (chi.exponents()[c.first_generator + j] % o[c.first_generator + j]) trivial = false;
    }
    if (trivial) continue;
    unsigned fexp = 1;
    while (fexp < c.exponent && !local_trivial_on(fexp)) ++fexp;
    D *= pow(c.prime, fexp);
  }
  return D;
}

ResidueSet::ResidueSet(ContextPtr ctx, std::string label, std::vector<std::uint64_t> members, Kind kind)
    : ctx_(std::move(ctx)), label_(std::move(label)), members_(std::move(members)), kind_(kind) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) throw Error(ErrorCode::InvalidArgument, "residue set must be nonempty");
}

ResidueSet ResidueSet::from_representatives(const ContextPtr& ctx, const std::vector<Poly>& reps, std::string label) {
  std::vector<std::uint64_t> m;
  for (const Poly& r : reps) {
    auto g = ctx->group_index(r);
    if (!g) throw Error(ErrorCode::InvalidArgument, "representative is not coprime to the modulus");
    m.push_back(*g);
  }
  return ResidueSet(ctx, std::move(label), std::move(m));
}

bool ResidueSet::contains(std::uint64_t g) const { return std::binary_search(members_.begin(), members_.end(), g); }

std::pair<ResidueSet, ResidueSet> quadratic_residues(const ContextPtr& ctx) {
  if (ctx->field()->p() == 2) throw Error(ErrorCode::EvenCharacteristic, "quadratic residues need odd q");
  if (ctx->phi() > kMemberLimit) throw Error(ErrorCode::ResourceLimit, "unit group too large to list residues");
  const auto& o = ctx->generator_orders();
  std::vector<std::uint64_t> sq, nsq;
  for (std::uint64_t g = 0; g < ctx->phi(); ++g) {
    std::uint64_t h = g;
    bool square = true;
    for (std::size_t j = 0; j < o.size(); ++j) {
      std::uint64_t x = h % o[j];
      h /= o[j];
      if (o[j] % 2 == 0 && x % 2 == 1) square = false;
    }
    (square ? sq : nsq).push_back(g);
  }
  return {ResidueSet(ctx, "squares", std::move(sq), ResidueSet::Kind::Squares),
          ResidueSet(ctx, "nonsquares", std::move(nsq), ResidueSet::Kind::NonSquares)};
}

std::complex<double> c_coefficient(const Character& chi, const ResidueSet& A, const ResidueSet& B) {
  auto avg = [&](const ResidueSet& S) {
    std::complex<double> s = 0;
    if (chi.is_real()) {
      long long t = 0;
      for (auto g : S.members()) t += chi.phase(g) == 0 ? 1 : -1;
      return std::complex<double>(static_cast<double>(t) / static_cast<double>(S.size()), 0.0);
    }
    for (auto g : S.members()) s += std::conj(chi.value(g));
    return s / static_cast<double>(S.size());
  };
  return (avg(A) - avg(B)) / static_cast<double>(chi.context()->phi());
}

std::vector<WeightedCharacter> race_weights(const ResidueSet& A, const ResidueSet& B) {
  const ContextPtr& ctx = A.context();
  std::vector<WeightedCharacter> out;
  if (A.kind() == ResidueSet::Kind::Squares && B.kind() == ResidueSet::Kind::NonSquares) {
    if (!ctx->is_squarefree()) throw Error(ErrorCode::NotSquarefree, "quadratic race requires squarefree M");
    const double w = 1.0 / static_cast<double>(B.size());
    for (auto& chi : quadratic_characters(ctx)) out.push_back({chi, w});
    return out;
  }
  for (auto& chi : all_characters(ctx)) {
    auto c = c_coefficient(chi, A, B);
    if (std::abs(c) > 1e-14) out.push_back({chi, c});
  }
  return out;
}

ClassWalker::ClassWalker(const ContextPtr& ctx, unsigned n, const Limits& limits) : ctx_(ctx.get()), n_(n) {
  const FieldPtr& f = ctx->field();
  require_budget(f->q(), n, limits);
  total_ = checked_power(f->q(), n);
  digits_.assign(n, 0);
  auto make_target = [&](std::size_t comp, const Poly& m) {
    Target t;
    t.component = comp;
    t.degree = static_cast<unsigned>(m.degree());
    Poly x = Poly::constant(f, Fq(1)) % m;
    const Poly tt = Poly::t(f);
    for (unsigned i = 0; i <= n; ++i) {
      std::vector<std::uint32_t> d(t.degree, 0);
      for (unsigned k = 0; k < t.degree; ++k) d[k] = x.coeff(k).code;
      t.tpow.push_back(std::move(d));
      x = (x * tt) % m;
    }
    t.res = t.tpow[n];
    targets_.push_back(std::move(t));
  };
  if (!ctx->residue_table().empty()) {
    make_target(SIZE_MAX, ctx->modulus());
  } else {
    for (std::size_t i = 0; i < ctx->components().size(); ++i) make_target(i, ctx->components()[i].modulus);
  }
  recompute();
}

void ClassWalker::recompute() {
  const std::uint64_t q = ctx_->field()->q();
  std::uint64_t g = 0;
  for (const Target& t : targets_) {
    std::uint64_t code = 0;
    for (unsigned k = t.degree; k-- > 0;) code = code * q + t.res[k];
    if (t.component == SIZE_MAX) {
      current_ = ctx_->residue_table()[code];
      return;
    }
    std::int64_t li = ctx_->local_index(t.component, code);
    if (li < 0) {
      current_ = -1;
      return;
    }
    g += static_cast<std::uint64_t>(li) * ctx_->components()[t.component].stride;
  }
  current_ = static_cast<std::int64_t>(g);
}

void ClassWalker::next() {
  ++idx_;
  if (idx_ >= total_) return;
  const Field& F = *ctx_->field();
  const std::uint32_t q = F.q();
  for (unsigned i = 0; i < n_; ++i) {
    std::uint32_t old = digits_[i];
    std::uint32_t nw = old + 1 == q ? 0 : old + 1;
    digits_[i] = nw;
    Fq delta = F.sub(Fq(nw), Fq(old));
    for (Target& t : targets_) {
      const auto& tp = t.tpow[i];
      for (unsigned k = 0; k < t.degree; ++k) {
        if (tp[k]) t.res[k] = F.add(Fq(t.res[k]), F.mul(delta, Fq(tp[k]))).code;
      }
    }
    if (nw != 0) break;
  }
  recompute();
}

}  // namespace fqbias
