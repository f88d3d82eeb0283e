#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wstruct {

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// The ten release criteria with fixed seeds derived from `seed`.
/// `on_result` (if set) sees each outcome as soon as it is known.
std::vector<CriterionOutcome> run_acceptance(std::uint64_t seed = 0,
                                             const std::function<void(const CriterionOutcome&)>& on_result = {});

/// "PASS [3] name: detail" style line, without timing.
std::string outcome_line(const CriterionOutcome& c);

}  // namespace wstruct
