#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fsr/group.hpp"
#include "fsr/multiset.hpp"

namespace fsr::testing {

inline GroupElement random_element(const GroupSpec& g, std::mt19937_64& rng, std::int64_t z_bound = 5) {
  std::vector<std::int64_t> c;
  for (std::int64_t m : g.moduli()) {
    if (m == 0) {
      c.push_back(std::uniform_int_distribution<std::int64_t>(-z_bound, z_bound)(rng));
    } else {
      c.push_back(std::uniform_int_distribution<std::int64_t>(0, m - 1)(rng));
    }
  }
  return GroupElement(std::move(c));
}

inline Multiset random_multiset(const GroupSpec& g, std::size_t size, std::mt19937_64& rng, std::int64_t z_bound = 5) {
  Multiset a(g);
  for (std::size_t i = 0; i < size; ++i) a.insert(random_element(g, rng, z_bound));
  return a;
}

// FS by listing every subset of the expanded multiset.
inline Multiset subset_sums_by_enumeration(const Multiset& a) {
  const auto xs = a.expanded();
  const GroupSpec& g = a.group();
  Multiset out(g);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    GroupElement s = g.zero();
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (mask >> i & 1) s = g.add(s, xs[i]);
    out.insert(s);
  }
  return out;
}

// Every sub-multiset B ⊆ A, each once.
inline std::vector<Multiset> all_submultisets(const Multiset& a) {
  std::vector<Multiset> out{Multiset(a.group())};
  for (const auto& [x, m] : a.entries()) {
    std::vector<Multiset> next;
    for (const Multiset& b : out) {
      for (unsigned long k = 0; k <= m.get_ui(); ++k) {
        Multiset c = b;
        if (k > 0) c.insert(x, k);
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

struct FlipOracle {
  bool sim = false;
  bool sim0 = false;
};

// Decides ~ and ~0 by trying every flip set.
inline FlipOracle flip_oracle(const Multiset& a, const Multiset& a_prime) {
  FlipOracle r;
  for (const Multiset& b : all_submultisets(a)) {
    if (flip(a, b) == a_prime) {
      r.sim = true;
      if (b.sum() == a.group().zero()) r.sim0 = true;
    }
  }
  return r;
}

}  // namespace fsr::testing

namespace fsr::testing {

// All multisets of exactly `size` elements of a finite group, nondecreasing order.
inline std::vector<Multiset> all_multisets(const GroupSpec& g, std::size_t size) {
  const auto xs = g.elements();
  std::vector<Multiset> out;
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (idx.size() == size) {
      Multiset a(g);
      for (std::size_t i : idx) a.insert(xs[i]);
      out.push_back(std::move(a));
      return;
    }
    for (std::size_t i = start; i < xs.size(); ++i) {
      idx.push_back(i);
      self(self, i);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace fsr::testing
