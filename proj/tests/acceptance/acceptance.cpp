// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "surgerylab/verify.hpp"

#include <cstdio>

int main() {
  const auto results = surgerylab::verify_all();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %d. %s: %s (%zu cases, %.2fs)\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.cases, r.seconds);
    failed += !r.passed;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
