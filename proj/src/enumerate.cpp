#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

#include <json.hpp>

#include "fqbias/errors.hpp"
#include "fqbias/poly.hpp"

namespace fqbias {

namespace {

std::mutex g_mutex;
std::string g_cache_dir;
std::map<std::pair<std::string, unsigned>, std::vector<Poly>> g_memo;

std::filesystem::path cache_path(const Field& F, unsigned n) {
  return std::filesystem::path(g_cache_dir) / "irreducibles" /
         ("q" + std::to_string(F.q()) + "_d" + std::to_string(n) + ".json");
}

bool load_cached(const FieldPtr& f, unsigned n, std::vector<Poly>& out) {
  if (g_cache_dir.empty()) return false;
  std::ifstream in(cache_path(*f, n));
  if (!in) return false;
  try {
    nlohmann::json j;
    in >> j;
    if (j.value("schema", 0) != 1 || j.at("field") != f->describe() || j.at("degree") != n) return false;
    std::vector<Poly> v;
    for (auto& arr : j.at("irreducibles")) {
      std::vector<Fq> c;
      for (auto& x : arr) c.push_back(Fq(x.get<std::uint32_t>()));
      v.emplace_back(f, std::move(c));
    }
    if (v.size() != count_irreducibles(f->q(), n)) return false;
    out = std::move(v);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void store_cached(const Field& F, unsigned n, const std::vector<Poly>& v) {
  if (g_cache_dir.empty()) return;
  std::error_code ec;
  auto path = cache_path(F, n);
  std::filesystem::create_directories(path.parent_path(), ec);
  nlohmann::json j;
  j["schema"] = 1;
  j["field"] = F.describe();
  j["degree"] = n;
  auto arr = nlohmann::json::array();
  for (auto& P : v) {
    auto c = nlohmann::json::array();
    for (Fq x : P.coeffs()) c.push_back(x.code);
    arr.push_back(c);
  }
  j["irreducibles"] = arr;
  std::ofstream out(path);
  if (out) out << j.dump() << "\n";
}

// Irreducibles of degree n by striking out every product P*g with P
// irreducible of degree <= n/2.
std::vector<Poly> sieve_irreducibles(const FieldPtr& f, unsigned n,
                                     const std::vector<const std::vector<Poly>*>& lower) {
  const Field& F = *f;
  const std::uint32_t q = F.q();
  const std::uint64_t total = checked_power(q, n);
  std::vector<bool> composite(total, false);
  std::vector<std::uint64_t> qpow(n + 1, 1);
  for (unsigned i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * q;
  std::vector<std::uint32_t> g, prod(n + 1);
  for (unsigned d = 1; 2 * d <= n; ++d) {
    const unsigned m = n - d;
    const std::uint64_t gcount = qpow[m];
    for (const Poly& P : *lower[d]) {
      const auto& pc = P.coeffs();
      g.assign(m + 1, 0);
      g[m] = 1;
      for (std::uint64_t gi = 0; gi < gcount; ++gi) {
        std::fill(prod.begin(), prod.end(), 0);
        for (unsigned i = 0; i <= d; ++i) {
          if (pc[i].is_zero()) continue;
          for (unsigned j = 0; j <= m; ++j) {
            if (g[j] == 0) continue;
            prod[i + j] = F.add(Fq(prod[i + j]), F.mul(pc[i], Fq(g[j]))).code;
          }
        }
        std::uint64_t idx = 0;
        for (unsigned i = n; i-- > 0;) idx = idx * q + prod[i];
        composite[idx] = true;
        for (unsigned i = 0; i < m; ++i) {
          if (++g[i] < q) break;
          g[i] = 0;
        }
      }
    }
  }
  std::vector<Poly> out;
  out.reserve(count_irreducibles(q, n));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (!composite[idx]) out.push_back(Poly::monic_from_index(f, n, idx));
  }
  return out;
}

}  // namespace

void set_irreducible_cache_dir(const std::string& dir) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_cache_dir = dir;
}

const std::vector<Poly>& enumerate_irreducibles(const FieldPtr& f, unsigned n, const Limits& limits) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "irreducible degree must be >= 1");
  require_budget(f->q(), n, limits);
  std::lock_guard<std::mutex> lock(g_mutex);
  const std::string key = f->describe();
  auto it = g_memo.find({key, n});
  if (it != g_memo.end()) return it->second;

  // Fill lower degrees first (the sieve needs them).
  std::vector<const std::vector<Poly>*> lower(n + 1, nullptr);
  for (unsigned d = 1; d <= n; ++d) {
    auto jt = g_memo.find({key, d});
    if (jt != g_memo.end()) {
      lower[d] = &jt->second;
      continue;
    }
    if (2 * d > n && d != n) continue;
    std::vector<Poly> v;
    if (!load_cached(f, d, v)) {
      if (checked_power(f->q(), d) <= 4096) {
        v = enumerate_irreducibles_rabin(f, d);
      } else {
        v = sieve_irreducibles(f, d, lower);
      }
      store_cached(*f, d, v);
    }
    auto [pos, ok] = g_memo.emplace(std::make_pair(key, d), std::move(v));
    lower[d] = &pos->second;
  }
  return g_memo.at({key, n});
}

}  // namespace fqbias
