#include <cstdio>

#include "wstruct/acceptance.hpp"

int main() {
  double total = 0;
  bool all = true;
  wstruct::run_acceptance(0, [&](const wstruct::CriterionOutcome& c) {
    std::printf("%s (%.2fs)\n", wstruct::outcome_line(c).c_str(), c.seconds);
    std::fflush(stdout);
    total += c.seconds;
    all = all && c.passed;
  });
  std::printf("%s: total %.2fs\n", all ? "ALL PASS" : "SOME FAILED", total);
  return all ? 0 : 1;
}
