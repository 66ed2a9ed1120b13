#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fsr::acceptance {

struct Options {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool corrupt_lambda = false;  // perturb the inverting functions fed to the Radon checks
  std::vector<int> only;        // criterion ids to run; empty runs all
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0 when the criterion has no time limit
  std::string detail;
};

inline constexpr int kCriterionCount = 14;

/// Runs the acceptance criteria in id order. A criterion passes when its check
/// holds and it finished within its time limit. `on_result` fires as each one
/// completes.
std::vector<CriterionResult> run(const Options& options,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace fsr::acceptance
