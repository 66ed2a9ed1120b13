#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fsr/multiset.hpp"

// Brute-force oracles over small groups. Infinite cyclic factors are searched
// inside a symmetric coordinate box [-bound, bound], so results over such groups
// are bounded evidence only.
namespace fsr::search {

inline constexpr std::uint64_t kDefaultBudget = 5'000'000;
/// Largest dense encoding (elements tracked by the subset-sum counters) a search may use.
inline constexpr std::uint64_t kMaxDenseSize = std::uint64_t{1} << 22;

/// Elements of g, lexicographic, with each Z coordinate restricted to [-bound, bound].
/// Throws UnsupportedError if g has a Z factor and no bound is given.
std::vector<GroupElement> bounded_elements(const GroupSpec& g, std::optional<std::int64_t> bound);

/// C(pool + size - 1, size), saturating at UINT64_MAX.
std::uint64_t multiset_count(std::uint64_t pool, std::size_t size);

/// Visits every multiset of exactly `size` elements once, in nondecreasing element
/// order. Stops early when fn returns false.
void for_each_multiset(const GroupSpec& g, std::size_t size, std::optional<std::int64_t> bound,
                       const std::function<bool(const Multiset&)>& fn);
std::vector<Multiset> enumerate_multisets(const GroupSpec& g, std::size_t size, std::optional<std::int64_t> bound);

struct PreimageOptions {
  bool prune = true;
  std::size_t cap = kDefaultSubsetSumsCap;
};

/// Multisets A with FS(A) = S, grouped into ~0 classes. Members of a class are sorted,
/// classes are ordered by their first member. Throws DomainError unless |S| = 2^m,
/// ResourceError if m exceeds the cap.
std::vector<std::vector<Multiset>> fs_preimages(const Multiset& s, std::optional<std::int64_t> bound,
                                                const PreimageOptions& options = {});

struct Violation {
  Multiset a;
  Multiset a_prime;
};

struct ScanOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
  /// Extra pairs to test directly, such as constructed counterexamples.
  std::vector<std::pair<Multiset, Multiset>> candidates;
};

struct ScanReport {
  GroupSpec group;
  std::size_t max_size = 0;
  std::optional<std::int64_t> bound;
  std::vector<Violation> violations;
  bool exhaustive = false;  // false over Z factors or once the budget ran out
  bool budget_exceeded = false;
  std::uint64_t multisets_examined = 0;
  std::size_t sizes_completed = 0;
  /// Smallest |A| among violations found by the exhaustive part, if any.
  std::optional<std::size_t> first_violation_size;
};

/// Looks for A, A' with |A| = |A'| <= max_size, FS(A) = FS(A') and A not ~0 A'.
/// Sizes are scanned in increasing order until the budget (multisets examined) runs out.
/// Every reported violation is re-verified with the exact multiset operations.
ScanReport regularity_scan(const GroupSpec& g, std::size_t max_size, std::optional<std::int64_t> bound,
                           const ScanOptions& options = {});

struct AddSubsetSumsReport {
  bool holds = true;
  std::uint64_t random_trials = 0;
  std::uint64_t exhaustive_cases = 0;
  struct Witness {
    Multiset a, a_prime, b;
  };
  std::optional<Witness> counterexample;
};

/// Tests that A + FS(B) = A' + FS(B) forces A = A': `trials` random triples with
/// |A| = |A'| <= 4 and |B| <= 4, then every A, A', B of size <= 2 when g is finite.
/// Throws DomainError if g has an element of order 2.
AddSubsetSumsReport verify_add_subset_sums(const GroupSpec& g, std::uint64_t trials, std::uint64_t seed,
                                           std::optional<std::int64_t> bound = 2);

}  // namespace fsr::search
