#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "fqbias/golden.hpp"

using namespace fqbias;

int main() {
  GoldenOptions opt;
  if (const char* full = std::getenv("FQBIAS_FULL_TABLE")) opt.full_table = std::strcmp(full, "1") == 0;

  int unexpected = 0;
  for (auto& [id, check] : golden_checks(opt)) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "check";
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto known = known_failure_reason(r);
    std::string status;
    if (r.passed) {
      status = known ? "PASS (XPASS: listed as a known failure)" : "PASS";
    } else if (known) {
      status = "FAIL (known: " + *known + ")";
    } else {
      status = "FAIL";
      ++unexpected;
    }
    std::printf("criterion %2d %-52s %s | %s [%.1f s]\n", id, r.name.c_str(), status.c_str(), r.detail.c_str(), secs);
    for (auto& n : r.notes) std::printf("    info: %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d unexpected failure(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
