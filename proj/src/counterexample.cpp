#include "fsr/counterexample.hpp"

#include <string>

#include "fsr/error.hpp"
#include "fsr/numtheory.hpp"
#include "fsr/ofs.hpp"

namespace fsr::counterexample {

std::string_view to_string(ExponentMode m) { return m == ExponentMode::Order ? "order" : "totient"; }

ExponentMode mode_from_string(std::string_view s) {
  if (s == "order") return ExponentMode::Order;
  if (s == "totient") return ExponentMode::Totient;
  throw StructuralError("unknown exponent mode '" + std::string(s) + "' (expected order|totient)");
}

bool verify(const CounterexamplePair& pair, std::size_t fs_cap) {
  return subset_sums(pair.a, fs_cap) == subset_sums(pair.a_prime, fs_cap) && !sim0_check(pair.a, pair.a_prime).equivalent;
}

CounterexamplePair build(std::int64_t n_signed, ExponentMode mode, std::size_t fs_cap) {
  if (n_signed <= 0 || n_signed % 2 == 0) {
    throw DomainError("counterexample: n must be odd and positive, got " + std::to_string(n_signed));
  }
  const auto n = static_cast<std::uint64_t>(n_signed);
  if (ofs::is_member(n_signed).member) {
    throw DomainError("counterexample: " + std::to_string(n) + " is in O_FS, so Z/nZ is FS-regular");
  }

  std::vector<bool> powers(n, false);
  for (std::uint64_t p = 1;;) {
    powers[p] = powers[n - p] = true;
    p = p * 2 % n;
    if (p == 1) break;
  }
  std::uint64_t k = 0;
  for (std::uint64_t x = 1; x < n; ++x) {
    if (nt::gcd(x, n) == 1 && !powers[x]) {
      k = x;
      break;
    }
  }
  if (k == 0) throw InvariantViolation("counterexample: no unit outside ±2^j although n is not in O_FS");

  const std::uint64_t d = mode == ExponentMode::Order ? nt::ord_mod(2, n) : nt::totient(n);
  if (d > fs_cap) {
    throw ResourceError("counterexample: d = " + std::to_string(d) + " exceeds the subset-sum cap " +
                        std::to_string(fs_cap));
  }

  const GroupSpec G = GroupSpec::cyclic(n_signed);
  CounterexamplePair pair{n, d, k, Multiset(G), Multiset(G), false};
  std::uint64_t p = 1 % n;
  for (std::uint64_t j = 0; j < d; ++j) {
    pair.a.insert(G.element({static_cast<std::int64_t>(p)}));
    pair.a_prime.insert(G.element({static_cast<std::int64_t>(nt::mul_mod(p, k, n))}));
    p = p * 2 % n;
  }
  pair.verified = verify(pair, fs_cap);
  if (!pair.verified) {
    throw InvariantViolation("counterexample: verification failed for n = " + std::to_string(n));
  }
  return pair;
}

CounterexamplePair z2_pair() {
  const GroupSpec G = GroupSpec::cyclic(2);
  CounterexamplePair pair{2, std::nullopt, std::nullopt, Multiset::of(G, {0, 1}), Multiset::of(G, {1, 1}), false};
  pair.verified = verify(pair);
  if (!pair.verified) throw InvariantViolation("counterexample: Z/2 pair failed verification");
  return pair;
}

}  // namespace fsr::counterexample
