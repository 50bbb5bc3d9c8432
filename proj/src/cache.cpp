#include "fqbias/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fqbias/expr.hpp"

namespace fqbias {

namespace {

std::string identity(const Character& chi) {
  const auto& ctx = chi.context();
  std::string s = ctx->field()->describe() + "|" + format_poly(ctx->modulus()) + "|";
  for (auto e : chi.exponents()) s += std::to_string(e) + ",";
  return s;
}

nlohmann::json to_json(const Character& chi, const LPolynomial& L) {
  nlohmann::json j;
  j["schema"] = 1;
  j["identity"] = identity(chi);
  j["field"] = chi.context()->field()->describe();
  j["modulus"] = format_poly(chi.context()->modulus());
  j["exponents"] = chi.exponents();
  j["conductor"] = format_poly(conductor(chi));
  j["character_order"] = L.character_order;
  j["exact"] = L.exact;
  j["integer_coeffs"] = L.integer_coeffs;
  j["cyclotomic"] = L.cyclotomic;
  auto c = nlohmann::json::array();
  for (auto& z : L.coeffs) c.push_back({z.real(), z.imag()});
  j["coeffs"] = c;
  const ZeroData zd = extract_zeros(L, chi.context()->field()->q());
  nlohmann::json zj;
  zj["m_plus"] = zd.m_plus;
  zj["m_minus"] = zd.m_minus;
  zj["d_chi"] = zd.d_chi;
  auto sp = nlohmann::json::array();
  for (auto& s : zd.spectral) sp.push_back({{"gamma", s.gamma}, {"multiplicity", s.multiplicity}});
  zj["spectral"] = sp;
  zj["unit_zeros"] = zd.unit_zeros.size();
  j["zeros"] = zj;
  return j;
}

}  // namespace

std::string lfunc_cache_key(const Character& chi) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : identity(chi)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string LCache::path(const Character& chi) const {
  return (std::filesystem::path(dir_) / "lfunc" / (lfunc_cache_key(chi) + ".json")).string();
}

std::optional<LPolynomial> LCache::load(const Character& chi) const {
  if (dir_.empty()) return std::nullopt;
  std::ifstream in(path(chi));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j;
    in >> j;
    if (j.value("schema", 0) != 1 || j.at("identity") != identity(chi)) return std::nullopt;
    LPolynomial L;
    L.character_order = j.at("character_order");
    L.exact = j.at("exact");
    L.integer_coeffs = j.at("integer_coeffs").get<std::vector<std::int64_t>>();
    L.cyclotomic = j.at("cyclotomic").get<std::vector<std::vector<std::int64_t>>>();
    for (auto& z : j.at("coeffs")) L.coeffs.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    return L;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void LCache::store(const Character& chi, const LPolynomial& L) const {
  if (dir_.empty()) return;
  std::error_code ec;
  const auto p = std::filesystem::path(path(chi));
  std::filesystem::create_directories(p.parent_path(), ec);
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << to_json(chi, L).dump(1) << "\n";
  }
  std::filesystem::rename(tmp, p, ec);
}

std::vector<LPolynomial> LCache::get_all(const std::vector<Character>& chars, const Limits& limits) const {
  std::vector<LPolynomial> out(chars.size());
  std::vector<Character> missing;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (auto L = load(chars[i])) {
      out[i] = std::move(*L);
    } else {
      missing.push_back(chars[i]);
      where.push_back(i);
    }
  }
  if (!missing.empty()) {
    auto Ls = compute_l_polynomials(missing, limits);
    for (std::size_t i = 0; i < Ls.size(); ++i) {
      store(missing[i], Ls[i]);
      out[where[i]] = std::move(Ls[i]);
    }
  }
  return out;
}

}  // namespace fqbias
