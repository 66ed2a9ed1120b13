#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "fsr/multiset.hpp"

// Explicit witnesses that Z/nZ is not FS-regular when n is outside O_FS:
// A = {2^0, ..., 2^(d-1)} and A' = k*A with k a unit outside {±2^j}.
namespace fsr::counterexample {

enum class ExponentMode {
  Order,    // d = ord_n(2), the least d with n | 2^d - 1
  Totient,  // d = phi(n)
};

std::string_view to_string(ExponentMode m);
ExponentMode mode_from_string(std::string_view s);

struct CounterexamplePair {
  std::uint64_t n = 0;
  std::optional<std::uint64_t> d;  // absent for the Z/2 pair
  std::optional<std::uint64_t> k;
  Multiset a;
  Multiset a_prime;
  bool verified = false;
};

/// Builds and verifies (FS(A) == FS(A'), not A ~0 A') the pair for odd n not in O_FS.
/// Throws DomainError for even n or n in O_FS, ResourceError if d exceeds fs_cap,
/// InvariantViolation if verification fails.
CounterexamplePair build(std::int64_t n, ExponentMode mode = ExponentMode::Order,
                         std::size_t fs_cap = kDefaultSubsetSumsCap);

/// ({0,1}, {1,1}) over Z/2, verified.
CounterexamplePair z2_pair();

/// Re-runs the exact checks on a pair.
bool verify(const CounterexamplePair& pair, std::size_t fs_cap = kDefaultSubsetSumsCap);

}  // namespace fsr::counterexample
