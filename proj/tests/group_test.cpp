#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fsr/error.hpp"
#include "fsr/group.hpp"
#include "fsr/numtheory.hpp"
#include "support.hpp"

using fsr::GroupElement;
using fsr::GroupSpec;

TEST(Group, AddReducesModulo) {
  const GroupSpec z5 = GroupSpec::cyclic(5);
  EXPECT_EQ(z5.add({3}, {4}), GroupElement({2}));

  const GroupSpec mixed({0, 3});
  EXPECT_EQ(mixed.add({2, 2}, {-2, 2}), GroupElement({0, 1}));
}

TEST(Group, AddZeroIsIdentity) {
  std::mt19937_64 rng(1);
  const GroupSpec g({0, 6, 4});
  for (int i = 0; i < 100; ++i) {
    const GroupElement x = fsr::testing::random_element(g, rng, 1000);
    EXPECT_EQ(g.add(x, g.zero()), x);
  }
}

TEST(Group, Negation) {
  EXPECT_EQ(GroupSpec::cyclic(7).neg({3}), GroupElement({4}));
  EXPECT_EQ(GroupSpec::integers().neg({5}), GroupElement({-5}));
  const GroupSpec g({0, 4});
  EXPECT_EQ(g.neg(g.zero()), g.zero());
}

TEST(Group, MismatchedOperandsAreStructuralErrors) {
  const GroupSpec z5 = GroupSpec::cyclic(5);
  EXPECT_THROW(z5.add({1}, {1, 0}), fsr::StructuralError);
  EXPECT_THROW(z5.add({1}, {5}), fsr::StructuralError);
  EXPECT_THROW(z5.neg({-1}), fsr::StructuralError);
  EXPECT_THROW(GroupSpec({3, -1}), fsr::StructuralError);
}

TEST(Group, Order) {
  EXPECT_EQ(GroupSpec::cyclic(9).order({3}), 3u);
  EXPECT_EQ(GroupSpec({6, 4}).order({2, 2}), 6u);
  EXPECT_EQ(GroupSpec::integers().order({1}), std::nullopt);
  EXPECT_EQ(GroupSpec({0, 5}).order({0, 2}), 5u);
  EXPECT_EQ(GroupSpec::cyclic(1).order({0}), 1u);
}

TEST(Group, OrderMatchesDirectIteration) {
  const GroupSpec g({6, 4});
  g.for_each_element([&](const GroupElement& x) {
    std::uint64_t k = 1;
    GroupElement y = x;
    while (y != g.zero()) {
      y = g.add(y, x);
      ++k;
    }
    EXPECT_EQ(g.order(x), k) << fsr::to_string(x);
  });
}

TEST(Group, EnumerateLexicographic) {
  EXPECT_EQ(GroupSpec::cyclic(3).elements(), (std::vector<GroupElement>{{0}, {1}, {2}}));
  EXPECT_EQ(GroupSpec::power(2, 2).elements(), (std::vector<GroupElement>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(GroupSpec::power(3, 2).elements().size(), 9u);
  EXPECT_THROW(GroupSpec({3, 0}).elements(), fsr::UnsupportedError);
  EXPECT_THROW(GroupSpec::integers().size(), fsr::UnsupportedError);
}

TEST(Group, TwoTorsion) {
  EXPECT_TRUE(GroupSpec::cyclic(2).has_two_torsion());
  EXPECT_TRUE(GroupSpec({9, 4}).has_two_torsion());
  EXPECT_FALSE(GroupSpec({9, 0, 5}).has_two_torsion());
}

// Every group of size <= 200 built from up to three factors.
static std::vector<GroupSpec> small_groups() {
  std::vector<GroupSpec> out;
  for (std::int64_t a = 1; a <= 200; ++a) out.push_back(GroupSpec::cyclic(a));
  for (std::int64_t a = 2; a <= 100; ++a)
    for (std::int64_t b = 2; a * b <= 200; ++b) out.push_back(GroupSpec({a, b}));
  for (std::int64_t a = 2; a <= 6; ++a)
    for (std::int64_t b = 2; b <= 6; ++b)
      for (std::int64_t c = 2; a * b * c <= 200; ++c) out.push_back(GroupSpec({a, b, c}));
  return out;
}

TEST(GroupProperty, OrderDividesExponent) {
  for (const GroupSpec& g : small_groups()) {
    const std::uint64_t e = g.exponent();
    g.for_each_element([&](const GroupElement& x) { ASSERT_EQ(e % *g.order(x), 0u) << g.to_string(); });
  }
}

TEST(GroupProperty, EnumerateYieldsEachElementOnce) {
  for (const GroupSpec& g : small_groups()) {
    const auto xs = g.elements();
    std::uint64_t expected = 1;
    for (auto m : g.moduli()) expected *= static_cast<std::uint64_t>(m);
    ASSERT_EQ(xs.size(), expected);
    ASSERT_TRUE(std::is_sorted(xs.begin(), xs.end()));
    ASSERT_EQ(std::set<GroupElement>(xs.begin(), xs.end()).size(), expected);
  }
}

TEST(GroupProperty, AdditionAxioms) {
  std::mt19937_64 rng(7);
  const std::vector<GroupSpec> groups{GroupSpec({12}), GroupSpec({0, 5}), GroupSpec({4, 6, 0}), GroupSpec::power(3, 3)};
  for (const GroupSpec& g : groups) {
    for (int i = 0; i < 500; ++i) {
      const auto x = fsr::testing::random_element(g, rng, 1 << 20);
      const auto y = fsr::testing::random_element(g, rng, 1 << 20);
      const auto z = fsr::testing::random_element(g, rng, 1 << 20);
      ASSERT_EQ(g.add(g.add(x, y), z), g.add(x, g.add(y, z)));
      ASSERT_EQ(g.add(x, y), g.add(y, x));
      ASSERT_EQ(g.neg(g.neg(x)), x);
      ASSERT_EQ(g.add(x, g.neg(x)), g.zero());
    }
  }
}

TEST(NumberTheory, OrdMod) {
  EXPECT_EQ(fsr::nt::ord_mod(2, 17), 8u);
  EXPECT_EQ(fsr::nt::ord_mod(1, 35), 1u);
  EXPECT_EQ(3510 % fsr::nt::ord_mod(2, 3511ull * 3511ull), 0u);
  EXPECT_THROW(fsr::nt::ord_mod(3, 9), fsr::DomainError);
  EXPECT_THROW(fsr::nt::ord_mod(2, 0), fsr::DomainError);
}

TEST(NumberTheory, OrdModMatchesIteration) {
  for (std::uint64_t n = 2; n < 400; ++n) {
    for (std::uint64_t a = 1; a < n; ++a) {
      if (fsr::nt::gcd(a, n) != 1) continue;
      std::uint64_t k = 1, p = a % n;
      while (p != 1) {
        p = p * a % n;
        ++k;
      }
      ASSERT_EQ(fsr::nt::ord_mod(static_cast<std::int64_t>(a), n), k) << a << " mod " << n;
    }
  }
}

TEST(NumberTheory, TotientAndFactorization) {
  EXPECT_EQ(fsr::nt::totient(1), 1u);
  EXPECT_EQ(fsr::nt::totient(45), 24u);
  EXPECT_EQ(fsr::nt::totient(3511ull * 3511ull), 3510ull * 3511ull);
  EXPECT_EQ(fsr::nt::divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(fsr::nt::prime_divisors(90), (std::vector<std::uint64_t>{2, 3, 5}));
  for (std::uint64_t n = 1; n < 500; ++n) {
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k <= n; ++k) count += fsr::nt::gcd(k, n) == 1;
    ASSERT_EQ(fsr::nt::totient(n), count);
  }
}
