#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqbias/lfunc.hpp"

namespace fqbias {

// On-disk L-data keyed by (field, modulus, character exponents):
// <dir>/lfunc/<hash>.json holding coefficients, zero data and conductor.
class LCache {
 public:
  explicit LCache(std::string dir) : dir_(std::move(dir)) {}

  std::string path(const Character& chi) const;
  std::optional<LPolynomial> load(const Character& chi) const;
  void store(const Character& chi, const LPolynomial& L) const;

  // Missing entries are computed in one shared enumeration and stored.
  std::vector<LPolynomial> get_all(const std::vector<Character>& chars, const Limits& limits = {}) const;

 private:
  std::string dir_;
};

// 64-bit FNV-1a of field, modulus and exponent vector, as 16 hex digits.
std::string lfunc_cache_key(const Character& chi);

}  // namespace fqbias
