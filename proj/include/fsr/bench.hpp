#pragma once

#include <cstdint>
#include <string>

#include "fsr/io.hpp"

namespace fsr::bench {

/// Runs a parameter sweep and returns {"suite", "seed", "rows":[...]}. Fields
/// named `seconds` or ending in `_seconds` carry wall time; everything else is
/// deterministic for a given seed. Suites: radon, fs, search.
io::Json run(const std::string& suite, std::uint64_t seed, unsigned jobs);

/// One radon row: forward and invert timings on a random table for (n, d).
io::Json radon_row(std::uint64_t n, std::size_t d, std::uint64_t seed, unsigned jobs);

}  // namespace fsr::bench
