// Runs every acceptance check and prints one PASS/FAIL line per criterion.
// Exit status is non-zero if any check fails.

#include <cstdio>

#include "layered_advect/acceptance.hpp"

int main() {
  int failed = 0;
  const auto results = lad::run_acceptance(0, [&](const lad::CheckResult& r) {
    std::printf("%s\n", lad::format_check(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
