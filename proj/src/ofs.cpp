#include "fsr/ofs.hpp"

#include <string>

#include "fsr/error.hpp"

namespace fsr::ofs {

namespace {

std::uint64_t require_odd(std::int64_t n, const char* op) {
  if (n <= 0 || n % 2 == 0) {
    throw DomainError(std::string(op) + ": expected an odd positive integer, got " + std::to_string(n));
  }
  return static_cast<std::uint64_t>(n);
}

}  // namespace

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::FullOrder: return "full-order";
    case Branch::HalfOrderOk: return "half-order-ok";
    case Branch::HalfOrderMinusOne: return "half-order-minus-one";
    case Branch::LowOrder: return "low-order";
  }
  return "?";
}

Branch branch_from_string(std::string_view s) {
  for (Branch b : {Branch::FullOrder, Branch::HalfOrderOk, Branch::HalfOrderMinusOne, Branch::LowOrder}) {
    if (to_string(b) == s) return b;
  }
  throw StructuralError("unknown O_FS branch '" + std::string(s) + "'");
}

Verdict is_member(std::int64_t n_signed) {
  const std::uint64_t n = require_odd(n_signed, "is_member");
  Verdict v;
  v.n = n;
  v.phi = nt::totient(n);
  v.ord2 = nt::ord_mod(2, n);
  if (v.ord2 == v.phi) {
    v.branch = Branch::FullOrder;
    v.member = true;
  } else if (2 * v.ord2 == v.phi) {
    const bool minus_one = v.phi % 4 == 0 && nt::pow_mod(2, v.phi / 4, n) == n - 1;
    v.branch = minus_one ? Branch::HalfOrderMinusOne : Branch::HalfOrderOk;
    v.member = !minus_one;
  } else {
    v.branch = Branch::LowOrder;
    v.member = false;
  }
  return v;
}

bool is_member_bruteforce(std::int64_t n_signed, std::uint64_t cap) {
  const std::uint64_t n = require_odd(n_signed, "is_member_bruteforce");
  if (n > cap) throw ResourceError("is_member_bruteforce: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (n == 1) return true;
  std::vector<bool> covered(n, false);
  std::uint64_t p = 1;
  do {
    covered[p] = true;
    covered[n - p] = true;
    p = p * 2 % n;
  } while (p != 1);
  for (std::uint64_t x = 1; x < n; ++x) {
    if (nt::gcd(x, n) == 1 && !covered[x]) return false;
  }
  return true;
}

std::vector<std::uint64_t> list_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= limit; n += 2)
    if (is_member(static_cast<std::int64_t>(n)).member) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> list_missing_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= limit; n += 2)
    if (!is_member(static_cast<std::int64_t>(n)).member) out.push_back(n);
  return out;
}

}  // namespace fsr::ofs
