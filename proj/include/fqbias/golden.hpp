#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fqbias/bias.hpp"

namespace fqbias {

// Worked example moduli.
ContextPtr two_cubics_f5();              // t^6+2t^4+3t+1 over F_5
ContextPtr irreducible_quintic_f5();     // t^5+3t^4+4t^3+2t+2 over F_5
ContextPtr central_zero_quartic_f9();    // t^4+2t^3+2t+a^7 over F_9, resolved representation
ContextPtr split_cubic_f9();             // t^3-t over F_9

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::string> notes;  // informational lines
};

struct GoldenOptions {
  std::uint64_t table_n = 10000000;
  bool full_table = false;  // additionally scan 10^9 terms per published entry
};

CheckResult check_l_polynomials();
CheckResult check_quintic_zeros();
CheckResult check_counting_oracle();
CheckResult check_periodic_densities();
CheckResult check_table1(const GoldenOptions& opt);
CheckResult check_main_term_residuals();
CheckResult check_distribution();
CheckResult check_k_limit();
CheckResult check_gaussian_limit();
CheckResult check_geometric_sums();

// Published positive counts for two_cubics_f5 out of 10^9, [k-1][0 = Omega, 1 = omega].
extern const std::uint64_t kTable1[10][2];

using Check = std::function<CheckResult()>;
// Reason for a criterion listed as a known failure, if r is such a failure (or listed and passed).
std::optional<std::string> known_failure_reason(const CheckResult& r);
std::vector<std::pair<int, Check>> golden_checks(const GoldenOptions& opt);

}  // namespace fqbias
