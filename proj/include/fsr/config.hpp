#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "fsr/cyclo.hpp"
#include "fsr/multiset.hpp"
#include "fsr/search.hpp"

namespace fsr {

enum class OutputMode { Text, Json };

struct Config {
  std::size_t fs_cap = kDefaultSubsetSumsCap;
  std::uint64_t cyclo_cap = cyclo::kDefaultRankCap;
  std::uint64_t search_budget = search::kDefaultBudget;
  double tolerance = cyclo::kDefaultRankTolerance;
  unsigned precision_bits = cyclo::kNumericPrecisionBits;
  unsigned jobs = 1;
  OutputMode output = OutputMode::Text;
  std::uint64_t seed = 0;

  /// Throws StructuralError when a cap is zero, the tolerance lies outside
  /// (0, 1), or more precision is requested than the numeric backend carries.
  void validate() const;
};

/// Applies `key = value` lines from a TOML-style file. Blank lines, `#`
/// comments and `[section]` headers are skipped; string values may be quoted.
void load_config_file(Config& config, const std::filesystem::path& path);
void apply_config_text(Config& config, const std::string& text);

/// FS_RECON_JOBS, when set, replaces the job count.
void apply_environment(Config& config);

}  // namespace fsr
