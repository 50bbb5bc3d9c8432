#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fqbias/bias.hpp"
#include "fqbias/cache.hpp"
#include "fqbias/errors.hpp"
#include "fqbias/expr.hpp"
#include "fqbias/golden.hpp"

using namespace fqbias;
using json = nlohmann::json;

namespace {

constexpr std::uint64_t kNMaxCap = 2000000000ULL;

struct Config {
  std::string field = "q=5";
  std::string modulus;
  std::string f = "Omega";
  unsigned k = 1;
  unsigned x_max = 12;
  std::uint64_t n_max = 10000000;
  std::string format = "csv";
  std::string cache_dir;
  std::uint64_t seed = 0x5eedULL;
  std::uint64_t budget = 2'000'000'000ULL;
};

// Tabular report: CSV is the header plus rows; JSON adds the metadata.
struct Report {
  std::string command;
  json meta = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_cell(v[i]);
    return s;
  }
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  return v.dump();
}

void emit(const Report& r, const std::string& format) {
  if (format == "json") {
    json out = {{"schema", 1}, {"command", r.command}};
    for (auto& [key, val] : r.meta.items()) out[key] = val;
    json rows = json::array();
    for (auto& row : r.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < r.columns.size(); ++i) o[r.columns[i]] = row[i];
      rows.push_back(o);
    }
    out["rows"] = rows;
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < r.columns.size(); ++i) std::cout << (i ? "," : "") << r.columns[i];
  std::cout << "\n";
  for (auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_cell(row[i]);
    std::cout << "\n";
  }
}

struct Session {
  Config cfg;
  FieldPtr field;
  Limits limits;
  std::unique_ptr<LCache> cache;

  void init() {
    field = parse_field_spec(cfg.field);
    limits.enumeration = cfg.budget;
    if (!cfg.cache_dir.empty()) {
      set_irreducible_cache_dir(cfg.cache_dir);
      cache = std::make_unique<LCache>(cfg.cache_dir);
    }
    if (cfg.k < 1 || cfg.k > 16) throw Error(ErrorCode::InvalidArgument, "--k must lie in 1..16");
    if (cfg.n_max < 1 || cfg.n_max > kNMaxCap) throw Error(ErrorCode::InvalidArgument, "--n-max must lie in 1..2e9");
    if (cfg.budget == 0) throw Error(ErrorCode::InvalidArgument, "--budget must be positive");
  }

  FactorFunction f() const { return parse_factor_function(cfg.f); }

  ContextPtr context() const {
    if (cfg.modulus.empty()) throw Error(ErrorCode::InvalidArgument, "--modulus is required");
    return ModulusContext::make(parse_poly_expr(cfg.modulus, field), limits);
  }

  std::vector<LPolynomial> l_polynomials(const std::vector<Character>& chars) const {
    return cache ? cache->get_all(chars, limits) : compute_l_polynomials(chars, limits);
  }

  QuadraticZeros quadratic_zeros(const ContextPtr& ctx) const { return quadratic_zero_data(ctx, limits, cache.get()); }

  json modulus_meta(const ContextPtr& ctx) const {
    json factors = json::array();
    for (auto& [P, e] : factorize(ctx->modulus(), FactorMethod::Auto, cfg.seed).factors) {
      factors.push_back({{"factor", format_poly(P)}, {"exponent", e}});
    }
    return {{"field", ctx->field()->describe()},
            {"modulus", format_poly(ctx->modulus())},
            {"degree", ctx->degree()},
            {"phi", ctx->phi()},
            {"omega", ctx->omega()},
            {"factors", factors}};
  }
};

std::vector<Character> selected_characters(const ContextPtr& ctx, bool all) {
  std::vector<Character> out;
  for (auto& c : all ? all_characters(ctx) : quadratic_characters(ctx))
    if (!c.is_principal()) out.push_back(c);
  return out;
}

json exponents_json(const Character& chi) { return json(chi.exponents()); }

json coefficients_json(const LPolynomial& L) {
  if (L.exact) return json(L.integer_coeffs);
  json a = json::array();
  for (auto& c : L.coeffs) a.push_back(json::array({c.real(), c.imag()}));
  return a;
}

std::string rational_pi_string(double gamma) {
  auto r = rational_multiple_of_pi(gamma);
  if (!r) return "";
  return std::to_string(r->first) + "/" + std::to_string(r->second);
}

Report cmd_lfunc(const Session& s, bool all) {
  auto ctx = s.context();
  auto chars = selected_characters(ctx, all);
  auto Ls = s.l_polynomials(chars);
  Report r{"lfunc", s.modulus_meta(ctx), {"character", "order", "conductor", "degree", "coefficients"}, {}};
  for (std::size_t i = 0; i < chars.size(); ++i) {
    r.rows.push_back({exponents_json(chars[i]), chars[i].order(), format_poly(conductor(chars[i])),
                      Ls[i].degree(), coefficients_json(Ls[i])});
  }
  return r;
}

Report cmd_zeros(const Session& s, bool all) {
  auto ctx = s.context();
  auto chars = selected_characters(ctx, all);
  auto Ls = s.l_polynomials(chars);
  Report r{"zeros",
           s.modulus_meta(ctx),
           {"character", "m_plus", "m_minus", "d_chi", "gamma", "multiplicity", "gamma_over_pi", "unit_zeros"},
           {}};
  for (std::size_t i = 0; i < chars.size(); ++i) {
    auto z = extract_zeros(Ls[i], ctx->field()->q());
    json g = json::array(), m = json::array(), rp = json::array();
    for (auto& sp : z.spectral) {
      g.push_back(sp.gamma);
      m.push_back(sp.multiplicity);
      rp.push_back(rational_pi_string(sp.gamma));
    }
    r.rows.push_back({exponents_json(chars[i]), z.m_plus, z.m_minus, z.d_chi, g, m, rp, z.unit_zeros.size()});
  }
  return r;
}

Report cmd_race(const Session& s, bool oracle) {
  auto ctx = s.context();
  auto [A, B] = quadratic_residues(ctx);
  auto series = delta_fk_exact(A, B, s.f(), s.cfg.k, s.cfg.x_max,
                               oracle ? CountMethod::Enumeration : CountMethod::Recursion, s.limits);
  Report r{"race", s.modulus_meta(ctx), {"X", "delta", "sign"}, {}};
  r.meta["f"] = to_string(s.f());
  r.meta["k"] = s.cfg.k;
  r.meta["method"] = series.method;
  for (std::size_t i = 0; i < series.X.size(); ++i) {
    const double d = series.delta[i];
    r.rows.push_back({series.X[i], d, d > 0 ? 1 : (d < 0 ? -1 : 0)});
  }
  return r;
}

MainTermSpec main_term(const Session& s, const QuadraticZeros& z, bool printed) {
  return quadratic_main_term(z, s.f(), s.cfg.k, printed ? AngleConvention::PrintedDisplay : AngleConvention::ZeroDerived);
}

Report cmd_main_term(const Session& s, bool printed) {
  auto ctx = s.context();
  auto z = s.quadratic_zeros(ctx);
  auto spec = main_term(s, z, printed);
  Report r{"main-term", s.modulus_meta(ctx), {"gamma", "c_re", "c_im", "gamma_over_pi"}, {}};
  r.meta["f"] = to_string(spec.f);
  r.meta["k"] = spec.k;
  r.meta["sign"] = spec.sign;
  r.meta["c0"] = spec.C0;
  r.meta["c1"] = spec.c1;
  r.meta["nonsquares"] = z.nonsquares;
  r.meta["angle_convention"] = printed ? "printed" : "zero_derived";
  r.meta["warnings"] = spec.warnings;
  for (auto& o : spec.oscillators) r.rows.push_back({o.gamma, o.c.real(), o.c.imag(), rational_pi_string(o.gamma)});
  return r;
}

Report cmd_compare(const Session& s, std::uint64_t mask) {
  auto ctx = s.context();
  if (mask == 0) mask = (std::uint64_t{1} << ctx->omega()) - 1;
  auto chi = quadratic_character(ctx, mask);
  auto L = s.cache ? s.cache->get_all({chi}, s.limits).front() : compute_l_polynomial(chi, s.limits);
  auto z = extract_zeros(L, ctx->field()->q());
  auto table = count_table(chi, s.f(), s.cfg.k, s.cfg.x_max, s.limits);
  Report r{"compare", s.modulus_meta(ctx), {"n", "exact", "asymptotic", "diff"}, {}};
  r.meta["character"] = exponents_json(chi);
  r.meta["f"] = to_string(s.f());
  r.meta["k"] = s.cfg.k;
  for (unsigned n = 2; n <= s.cfg.x_max; ++n) {
    const double exact = table.at(s.cfg.k, n).value.real();
    const double main = pi_fk_asymptotic(z, chi.is_real(), n, s.cfg.k, s.f()).real();
    r.rows.push_back({n, table.exact ? json(to_string(table.exact_values[s.cfg.k][n])) : json(exact), main, exact - main});
  }
  return r;
}

json density_json(const DensityReport& d) {
  return {{"n", d.N},
          {"positive", d.positive_count},
          {"negative", d.negative_count},
          {"zero", d.zero_count},
          {"near_zero_flags", d.near_zero_flags},
          {"density", d.density},
          {"exact", d.exact},
          {"period", d.period},
          {"numerator", d.numerator},
          {"denominator", d.denominator}};
}

const std::vector<std::string> kDensityColumns = {"n",     "positive", "negative", "zero",      "near_zero_flags",
                                                  "density", "exact",  "period",   "numerator", "denominator"};

std::vector<json> density_row(const DensityReport& d) {
  auto j = density_json(d);
  std::vector<json> row;
  for (auto& c : kDensityColumns) row.push_back(j[c]);
  return row;
}

Report cmd_density(const Session& s, int orientation, bool printed) {
  auto ctx = s.context();
  auto z = s.quadratic_zeros(ctx);
  auto d = density_scan(main_term(s, z, printed), s.cfg.n_max, orientation);
  Report r{"density", s.modulus_meta(ctx), kDensityColumns, {density_row(d)}};
  r.meta["f"] = s.cfg.f;
  r.meta["k"] = s.cfg.k;
  r.meta["orientation"] = orientation;
  return r;
}

Report cmd_table(const Session& s, unsigned k_max, bool printed) {
  auto ctx = s.cfg.modulus.empty() ? two_cubics_f5() : s.context();
  auto z = s.quadratic_zeros(ctx);
  Report r{"table", s.modulus_meta(ctx), {"k", "f", "positive", "n", "density"}, {}};
  const auto conv = printed ? AngleConvention::PrintedDisplay : AngleConvention::ZeroDerived;
  for (unsigned k = 1; k <= k_max; ++k) {
    for (auto f : {FactorFunction::BigOmega, FactorFunction::SmallOmega}) {
      auto d = table1_scan(z, f, k, s.cfg.n_max, conv);
      r.rows.push_back({k, to_string(f), d.positive_count, d.N, d.density});
    }
  }
  return r;
}

Report cmd_classify(const Session& s) {
  auto ctx = s.context();
  auto z = s.quadratic_zeros(ctx);
  auto kl = k_limit_classify(z, s.f());
  auto bi = B_I_report(z, s.f(), s.cfg.k);
  Report r{"classify",
           s.modulus_meta(ctx),
           {"k_limit", "m_f_max", "d_plus", "d_minus", "d_nonreal", "symmetry_defect", "mean", "variance",
            "chebyshev_bound", "b", "b_closed", "i_nonreal", "i_all", "i_approx"},
           {}};
  r.meta["f"] = to_string(s.f());
  r.meta["k"] = s.cfg.k;
  r.rows.push_back({to_string(kl.kind), kl.m_f_max, kl.d_plus, kl.d_minus, kl.d_nonreal, kl.symmetry_defect,
                    quadratic_race_mean(z, s.f(), s.cfg.k), variance_nu(z, s.cfg.k), chebyshev_bound(z, s.cfg.k),
                    bi.B, bi.B_closed, bi.I_nonreal, bi.I_all, bi.I_approx});
  return r;
}

Report cmd_li_scan(const Session& s, std::int64_t Q, bool printed) {
  auto ctx = s.context();
  auto z = s.quadratic_zeros(ctx);
  auto spec = main_term(s, z, printed);
  std::vector<double> angles{std::numbers::pi};
  for (auto& o : spec.oscillators) angles.push_back(o.gamma);
  Report r{"li-scan", s.modulus_meta(ctx), {"relation"}, {}};
  r.meta["angles"] = angles;
  r.meta["bound"] = Q;
  r.meta["relation_order"] = "pi, angles";
  for (auto& rel : li_heuristic_scan(angles, Q)) r.rows.push_back({json(rel)});
  return r;
}

Report cmd_construct(const Session& s, double c, unsigned omega) {
  auto M = construct_modulus(s.field, c, omega);
  auto ctx = ModulusContext::make(M, s.limits);
  Report r{"construct-modulus", s.modulus_meta(ctx), {"factor", "degree"}, {}};
  r.meta["c"] = c;
  r.meta["requested_omega"] = omega;
  for (auto& [P, e] : ctx->factorization().factors) r.rows.push_back({format_poly(P), P.degree()});
  return r;
}

int cmd_verify(const Session& s, bool full_table) {
  GoldenOptions opt;
  opt.table_n = std::min<std::uint64_t>(s.cfg.n_max, kNMaxCap);
  opt.full_table = full_table;
  Report r{"verify-examples", json::object(), {"criterion", "name", "status", "detail"}, {}};
  bool all = true;
  for (auto& [id, check] : golden_checks(opt)) {
    CheckResult c;
    try {
      c = check();
    } catch (const std::exception& e) {
      c.id = id;
      c.name = "check";
      c.detail = std::string("exception: ") + e.what();
    }
    all = all && c.passed;
    const auto known = known_failure_reason(c);
    std::string status = c.passed ? "pass" : (known ? "fail (known: " + *known + ")" : "fail");
    r.rows.push_back({id, c.name, status, c.detail});
  }
  r.meta["all_passed"] = all;
  emit(r, s.cfg.format);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chebyshev-bias races for polynomials with k irreducible factors over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Session s;
  Config& c = s.cfg;
  app.add_option("--field", c.field, "field, e.g. q=5 or q=9;def=x^2+1")->capture_default_str();
  app.add_option("--modulus", c.modulus, "modulus expression in t (and a)");
  app.add_option("--f", c.f, "Omega or omega")->check(CLI::IsMember({"Omega", "omega"}))->capture_default_str();
  app.add_option("--k", c.k, "number of irreducible factors")->capture_default_str();
  app.add_option("--x-max", c.x_max, "largest degree for exact counts")->capture_default_str();
  app.add_option("--n-max", c.n_max, "scan length")->capture_default_str();
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--cache-dir", c.cache_dir, "directory for irreducible and L-function caches");
  app.add_option("--seed", c.seed, "seed for randomized factorization")->capture_default_str();
  app.add_option("--budget", c.budget, "maximum polynomials per enumeration")->capture_default_str();

  bool all_chars = false, oracle = false, printed = false, zero_derived = false, full_table = false;
  int orientation = 1;
  std::uint64_t mask = 0;
  unsigned k_max = 10, omega = 2;
  std::int64_t Q = 100;
  double cval = 1.0;

  auto* lfunc = app.add_subcommand("lfunc", "L-polynomials of the quadratic (or all) characters");
  lfunc->add_flag("--all-characters", all_chars, "every non-principal character");
  auto* zeros = app.add_subcommand("zeros", "inverse zeros on the circle of radius sqrt q");
  zeros->add_flag("--all-characters", all_chars, "every non-principal character");
  auto* race = app.add_subcommand("race", "normalized squares vs non-squares race, X = 2..x-max");
  race->add_flag("--oracle", oracle, "count by enumeration instead of the recursion");
  auto* mt = app.add_subcommand("main-term", "limiting main term of the race");
  mt->add_flag("--printed-angles", printed, "pair Re(alpha) < 0 coefficients with the conjugate angle");
  auto* cmp = app.add_subcommand("compare", "exact pi_{f_k}(n, chi) against the main term");
  cmp->add_option("--mask", mask, "quadratic character by component mask (default: all components)");
  auto* dens = app.add_subcommand("density", "density of X with orientation * main term > 0");
  dens->add_option("--orientation", orientation, "+1 or -1")->check(CLI::IsMember({1, -1}));
  dens->add_flag("--printed-angles", printed, "pair Re(alpha) < 0 coefficients with the conjugate angle");
  auto* table = app.add_subcommand("table", "positive counts for k = 1..k-max and both f");
  table->add_option("--k-max", k_max, "largest k")->capture_default_str();
  table->add_flag("--zero-derived", zero_derived, "use zero-derived angles");
  auto* cls = app.add_subcommand("classify", "k-limit class, moments and bias bounds");
  auto* li = app.add_subcommand("li-scan", "search integer relations among pi and the angles");
  li->add_option("--bound", Q, "largest coefficient")->capture_default_str();
  li->add_flag("--printed-angles", printed, "pair Re(alpha) < 0 coefficients with the conjugate angle");
  auto* cons = app.add_subcommand("construct-modulus", "modulus with omega factors and degree about 2^omega / c");
  cons->add_option("--c", cval, "degree constant")->required();
  cons->add_option("--omega", omega, "number of irreducible factors")->required();
  auto* ver = app.add_subcommand("verify-examples", "golden checks of the worked examples");
  ver->add_flag("--full-table", full_table, "also scan 10^9 terms per table entry");

  CLI11_PARSE(app, argc, argv);
  try {
    s.init();
    if (*lfunc) emit(cmd_lfunc(s, all_chars), c.format);
    if (*zeros) emit(cmd_zeros(s, all_chars), c.format);
    if (*race) emit(cmd_race(s, oracle), c.format);
    if (*mt) emit(cmd_main_term(s, printed), c.format);
    if (*cmp) emit(cmd_compare(s, mask), c.format);
    if (*dens) emit(cmd_density(s, orientation, printed), c.format);
    if (*table) emit(cmd_table(s, k_max, !zero_derived), c.format);
    if (*cls) emit(cmd_classify(s), c.format);
    if (*li) emit(cmd_li_scan(s, Q, printed), c.format);
    if (*cons) emit(cmd_construct(s, cval, omega), c.format);
    if (*ver) return cmd_verify(s, full_table);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
