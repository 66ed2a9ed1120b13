#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "fsr/group.hpp"

namespace fsr {

/// Largest |A| accepted by subset_sums unless the caller raises it.
inline constexpr std::size_t kDefaultSubsetSumsCap = 24;

/// A finite multiset over a group: a map from canonical elements to positive
/// multiplicities. Multiplicities are arbitrary precision since subset sums
/// of an n-element multiset carry counts up to 2^n.
class Multiset {
 public:
  using Entries = std::map<GroupElement, mpz_class>;

  Multiset() = default;
  explicit Multiset(GroupSpec group) : group_(std::move(group)) {}
  Multiset(GroupSpec group, const std::vector<GroupElement>& elements);
  /// Convenience for one-dimensional groups: each integer is reduced into the group.
  static Multiset of(const GroupSpec& group, std::initializer_list<std::int64_t> values);

  const GroupSpec& group() const noexcept { return group_; }
  const Entries& entries() const noexcept { return entries_; }

  /// Adds `count` copies of x. x must be a canonical element of the group; count >= 0.
  void insert(const GroupElement& x, const mpz_class& count = 1);

  mpz_class multiplicity(const GroupElement& x) const;
  mpz_class cardinality() const;
  /// Cardinality as a machine integer; throws ResourceError if it does not fit.
  std::size_t size() const;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t distinct() const noexcept { return entries_.size(); }

  /// this ⊆ other, pointwise on multiplicities.
  bool is_subset_of(const Multiset& other) const;
  GroupElement sum() const;
  /// Elements listed with repetition, ascending.
  std::vector<GroupElement> expanded() const;

  friend bool operator==(const Multiset& a, const Multiset& b) {
    return a.group_ == b.group_ && a.entries_ == b.entries_;
  }
  friend bool operator<(const Multiset& a, const Multiset& b);

 private:
  GroupSpec group_;
  Entries entries_;
};

std::string to_string(const Multiset& a);

/// Multiplicities add. Throws StructuralError on group mismatch.
Multiset multiset_union(const Multiset& a, const Multiset& b);

/// b \ a for a ⊆ b. Throws StructuralError naming an element where a exceeds b.
Multiset difference(const Multiset& b, const Multiset& a);

/// Image multiset f(A) in `target`, summing multiplicities over fibres.
Multiset pushforward(const Multiset& a, const GroupSpec& target,
                     const std::function<GroupElement(const GroupElement&)>& f);

/// {x + g : x in S}
Multiset shift(const Multiset& s, const GroupElement& g);
/// {-x : x in A}
Multiset negate(const Multiset& a);
/// {a + b : (a, b) in A x B}
Multiset sumset(const Multiset& a, const Multiset& b);
/// (A \ B) ∪ (-B), for B ⊆ A.
Multiset flip(const Multiset& a, const Multiset& b);

/// FS(A): the 2^|A| subset sums with multiplicity. Computed by convolving
/// {0} with (1 + t^a)^m for each distinct element a of multiplicity m.
/// Throws ResourceError when |A| > cap.
Multiset subset_sums(const Multiset& a, std::size_t cap = kDefaultSubsetSumsCap);

/// A ~ A': A' arises from A by negating some sub-multiset.
/// Equivalent to mu_A(x) + mu_A(-x) == mu_A'(x) + mu_A'(-x) for every x.
bool sim_check(const Multiset& a, const Multiset& a_prime);

struct Sim0Witness {
  Multiset flip_set;       // B ⊆ A with A' = (A \ B) ∪ (-B)
  GroupElement sum_check;  // ΣB, always zero
};

struct Sim0Result {
  bool equivalent = false;
  std::optional<Sim0Witness> witness;
};

/// A ~0 A': as sim_check, with a flip set B of zero sum.
///
/// For each pair {x, -x} with x != -x the net number of flips is forced,
/// so B's sum is s0 = Σ max(0, mu_A(x) - mu_A'(x)) x plus any subset of the
/// distinct order-2 elements of A (flipping those leaves A unchanged).
/// The second part is decided by a reachability search over the subgroup
/// they generate.
Sim0Result sim0_check(const Multiset& a, const Multiset& a_prime);

}  // namespace fsr
