#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fsr/numtheory.hpp"

// Membership in O_FS: odd n whose unit group (Z/nZ)* is covered by {±2^j}.
namespace fsr::ofs {

using nt::ord_mod;

/// Which clause of the order-of-2 characterization decided membership.
enum class Branch {
  FullOrder,          // ord_n(2) = phi(n)
  HalfOrderOk,        // ord_n(2) = phi(n)/2 and 2^j never hits -1
  HalfOrderMinusOne,  // ord_n(2) = phi(n)/2 but 2^(phi(n)/4) = -1: not a member
  LowOrder,           // ord_n(2) < phi(n)/2: not a member
};

std::string_view to_string(Branch b);
Branch branch_from_string(std::string_view s);

struct Verdict {
  std::uint64_t n = 1;
  bool member = true;
  std::uint64_t ord2 = 1;
  std::uint64_t phi = 1;
  Branch branch = Branch::FullOrder;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline constexpr std::uint64_t kBruteforceCap = 1'000'000;

/// Decides membership via ord_n(2) and phi(n). Throws DomainError for even or nonpositive n.
Verdict is_member(std::int64_t n);

/// Literal covering check: every unit mod n is ±2^j for some j.
/// Throws DomainError for even/nonpositive n, ResourceError above `cap`.
bool is_member_bruteforce(std::int64_t n, std::uint64_t cap = kBruteforceCap);

/// Odd members <= limit, ascending.
std::vector<std::uint64_t> list_up_to(std::uint64_t limit);
/// Odd non-members <= limit, ascending.
std::vector<std::uint64_t> list_missing_up_to(std::uint64_t limit);

}  // namespace fsr::ofs
