#include <gtest/gtest.h>

#include <random>

#include "fsr/error.hpp"
#include "fsr/numtheory.hpp"
#include "fsr/radon.hpp"

namespace rd = fsr::radon;
using fsr::GroupElement;
using rd::FunctionTable;
using rd::Hom;
using rd::RadonImage;

namespace {

FunctionTable random_table(std::uint64_t n, std::size_t d, std::mt19937_64& rng, long num_bound = 50, long den_bound = 12) {
  FunctionTable f(n, d);
  std::uniform_int_distribution<long> num(-num_bound, num_bound), den(1, den_bound);
  for (auto& v : f.values()) {
    v = mpq_class(num(rng), den(rng));
    v.canonicalize();
  }
  return f;
}

GroupElement point(std::uint64_t idx, std::uint64_t n, std::size_t d) {
  std::vector<std::int64_t> c;
  for (auto x : rd::coords_of(idx, n, d)) c.push_back(static_cast<std::int64_t>(x));
  return GroupElement(std::move(c));
}

// Rf(ψ, c) straight from the definition.
RadonImage naive_forward(const FunctionTable& f) {
  const std::uint64_t n = f.n();
  const std::size_t d = f.d();
  RadonImage rf(n, d);
  const std::uint64_t points = f.values().size();
  for (std::uint64_t a = 0; a < points; ++a) {
    const Hom psi = rd::hom_at(a, n, d);
    for (std::uint64_t x = 0; x < points; ++x) rf.at(psi, psi.apply(point(x, n, d))) += f.values()[x];
  }
  return rf;
}

bool naive_verify(const rd::InvertingFunction& lambda) {
  const std::uint64_t n = lambda.n(), points = lambda.weights().size();
  for (std::uint64_t x = 0; x < points; ++x) {
    mpq_class s;
    for (std::uint64_t a = 0; a < points; ++a)
      if (rd::hom_at(a, n, lambda.d()).apply(point(x, n, lambda.d())) == 0) s += lambda.weights()[a];
    if (s != (x == 0 ? 1 : 0)) return false;
  }
  return true;
}

}  // namespace

TEST(Radon, ForwardExamples) {
  FunctionTable delta(4, 2);
  delta.at({0, 0}) = 1;
  const RadonImage rd0 = rd::forward(delta);
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t c = 0; c < 4; ++c) EXPECT_EQ(rd0.at(rd::hom_at(a, 4, 2), c), c == 0 ? 1 : 0);

  const RadonImage r2 = rd::forward(FunctionTable(2, 1, {1, 2}));
  EXPECT_EQ(r2.at({2, {1}}, 0), 1);
  EXPECT_EQ(r2.at({2, {1}}, 1), 2);
  EXPECT_EQ(r2.at({2, {0}}, 0), 3);
  EXPECT_EQ(r2.at({2, {0}}, 1), 0);

  const RadonImage r3 = rd::forward(FunctionTable(3, 2, std::vector<mpq_class>(9, 1)));
  for (std::uint64_t a = 1; a < 9; ++a)
    for (std::uint64_t c = 0; c < 3; ++c) EXPECT_EQ(r3.at(rd::hom_at(a, 3, 2), c), 3);
  EXPECT_EQ(r3.at({3, {0, 0}}, 0), 9);
}

TEST(RadonProperty, FastForwardMatchesDefinition) {
  std::mt19937_64 rng(41);
  const std::vector<std::pair<std::uint64_t, std::size_t>> grid{{1, 1}, {2, 1}, {7, 1}, {12, 1}, {1, 3}, {2, 2}, {5, 2},
                                                                 {6, 2}, {2, 3}, {3, 3}, {4, 3}, {5, 3}, {2, 5}, {3, 4}};
  for (auto [n, d] : grid) {
    const FunctionTable f = random_table(n, d, rng);
    ASSERT_EQ(rd::forward(f), naive_forward(f)) << n << '^' << d;
    ASSERT_EQ(rd::forward(f, 3), rd::forward(f, 1));
  }
}

TEST(RadonProperty, WideAccumulators) {
  // Numerators near 2^70 and 2^200 exercise the 128-bit and arbitrary-precision paths.
  std::mt19937_64 rng(42);
  for (unsigned bits : {70u, 200u}) {
    for (auto [n, d] : std::vector<std::pair<std::uint64_t, std::size_t>>{{5, 2}, {3, 3}}) {
      FunctionTable f = random_table(n, d, rng);
      for (auto& v : f.values()) v *= mpz_class(1) << bits;
      ASSERT_EQ(rd::forward(f), naive_forward(f));
      ASSERT_EQ(rd::invert(rd::forward(f)), f);
    }
  }
}

TEST(Radon, DividesHom) {
  EXPECT_TRUE(rd::divides_hom(3, {9, {3, 6}}));
  EXPECT_FALSE(rd::divides_hom(3, {9, {1, 3}}));
  for (std::uint64_t p : {3u, 5u}) EXPECT_TRUE(rd::divides_hom(p, {15, {0, 0}}));
  EXPECT_THROW(rd::divides_hom(5, {9, {1, 3}}), fsr::DomainError);
}

TEST(RadonProperty, DividesHomMatchesImage) {
  for (std::uint64_t n : {4u, 6u, 9u, 12u, 15u}) {
    for (std::size_t d = 1; d <= 2; ++d) {
      const std::uint64_t points = rd::point_count(n, d);
      for (std::uint64_t a = 0; a < points; ++a) {
        const Hom psi = rd::hom_at(a, n, d);
        for (std::uint64_t p : fsr::nt::prime_divisors(n)) {
          bool all = true;
          for (std::uint64_t x = 0; x < points; ++x) all = all && psi.apply(point(x, n, d)) % p == 0;
          ASSERT_EQ(rd::divides_hom(p, psi), all);
        }
      }
    }
  }
}

TEST(Radon, InversionWeights) {
  for (std::uint64_t p : {2u, 3u, 7u}) {
    EXPECT_EQ(rd::inversion_weight(p, 1, {p, {1}}), mpq_class(1, p - 1));
    EXPECT_EQ(rd::inversion_weight(p, 1, {p, {0}}), 0);
  }
  EXPECT_EQ(rd::inversion_weight(3, 2, {3, {0, 0}}), mpq_class(-1, 3));
  EXPECT_EQ(rd::inversion_weight(3, 2, {3, {1, 2}}), mpq_class(1, 6));
  EXPECT_EQ(rd::inversion_weight(1, 3, {1, {0, 0, 0}}), 1);
  const auto table = rd::inverting_function(12, 2);
  for (std::uint64_t a = 0; a < 144; ++a) ASSERT_EQ(table.weights()[a], rd::inversion_weight(12, 2, rd::hom_at(a, 12, 2)));
}

TEST(Radon, InvertExamples) {
  std::mt19937_64 rng(43);
  const FunctionTable f = random_table(5, 2, rng);
  EXPECT_EQ(rd::invert(rd::forward(f)), f);

  FunctionTable delta(6, 2);
  delta.at({4, 1}) = mpq_class(7, 3);
  EXPECT_EQ(rd::invert(rd::forward(delta)), delta);

  FunctionTable g(9, 2);
  std::uniform_int_distribution<long> v(-1000, 1000);
  for (auto& x : g.values()) x = v(rng);
  EXPECT_EQ(rd::invert(rd::forward(g)), g);
}

TEST(RadonProperty, RoundTripSmallGrid) {
  std::mt19937_64 rng(44);
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (std::size_t d = 1; rd::point_count(n, d) <= 4096 && d <= 12; ++d) {
      for (int t = 0; t < 3; ++t) {
        const FunctionTable f = random_table(n, d, rng);
        ASSERT_EQ(rd::invert(rd::forward(f)), f) << n << '^' << d;
      }
      if (n == 1) break;
    }
  }
}

TEST(RadonProperty, DilationInvariance) {
  std::mt19937_64 rng(45);
  for (auto [n, d] : std::vector<std::pair<std::uint64_t, std::size_t>>{{9, 2}, {10, 2}, {5, 3}}) {
    const RadonImage rf = rd::forward(random_table(n, d, rng));
    const std::uint64_t points = rd::point_count(n, d);
    for (std::uint64_t u = 1; u < n; ++u) {
      if (fsr::nt::gcd(u, n) != 1) continue;
      for (std::uint64_t a = 0; a < points; ++a) {
        Hom psi = rd::hom_at(a, n, d), scaled = psi;
        for (auto& c : scaled.coeffs) c = c * u % n;
        for (std::uint64_t c = 0; c < n; ++c) ASSERT_EQ(rf.at(scaled, c * u % n), rf.at(psi, c));
      }
    }
  }
}

TEST(RadonProperty, MassConservation) {
  std::mt19937_64 rng(46);
  const RadonImage rf = rd::forward(random_table(6, 2, rng));
  EXPECT_TRUE(rd::is_consistent(rf));
  RadonImage bad = rf;
  bad.at({6, {1, 1}}, 2) += 1;
  EXPECT_FALSE(rd::is_consistent(bad));
}

TEST(RadonProperty, SliceLocality) {
  std::mt19937_64 rng(47);
  const std::uint64_t n = 5;
  const std::size_t d = 2;
  const RadonImage rf = rd::forward(random_table(n, d, rng));
  const FunctionTable base = rd::invert(rf);
  for (int t = 0; t < 20; ++t) {
    const Hom psi = rd::hom_at(std::uniform_int_distribution<std::uint64_t>(0, 24)(rng), n, d);
    const std::uint64_t c = std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
    RadonImage perturbed = rf;
    perturbed.at(psi, c) += mpq_class(3, 7);
    const FunctionTable changed = rd::invert(perturbed);
    for (std::uint64_t x = 0; x < 25; ++x) {
      const bool reads = psi.apply(point(x, n, d)) == c;
      const bool weighted = rd::inversion_weight(n, d, psi) != 0;
      ASSERT_EQ(changed.values()[x] != base.values()[x], reads && weighted);
    }
  }
}

TEST(Radon, VerifyInverting) {
  EXPECT_TRUE(rd::verify_inverting(rd::inverting_function(3, 2)));
  EXPECT_FALSE(rd::verify_inverting(rd::InvertingFunction(3, 2)));
  EXPECT_TRUE(rd::verify_inverting(rd::inverting_function(15, 2)));
  auto corrupted = rd::inverting_function(5, 3);
  corrupted.weights()[17] += mpq_class(1, 1000);
  EXPECT_FALSE(rd::verify_inverting(corrupted));
}

TEST(RadonProperty, VerifyMatchesDefinition) {
  std::mt19937_64 rng(48);
  for (auto [n, d] : std::vector<std::pair<std::uint64_t, std::size_t>>{{3, 2}, {4, 2}, {6, 2}, {3, 3}, {5, 3}, {2, 4}}) {
    auto lambda = rd::inverting_function(n, d);
    ASSERT_TRUE(naive_verify(lambda));
    ASSERT_TRUE(rd::verify_inverting(lambda));
    lambda.weights()[std::uniform_int_distribution<std::size_t>(0, lambda.weights().size() - 1)(rng)] += 1;
    ASSERT_FALSE(naive_verify(lambda));
    ASSERT_FALSE(rd::verify_inverting(lambda));
  }
}

TEST(RadonProperty, CriterionForSmallModuli) {
  for (std::uint64_t n = 1; n <= 30; ++n)
    for (std::size_t d = 1; d <= 3; ++d) ASSERT_TRUE(rd::verify_inverting(rd::inverting_function(n, d))) << n << ' ' << d;
}

TEST(Radon, ProductLift) {
  EXPECT_EQ(rd::product_lift(rd::inverting_function(3, 2), rd::inverting_function(5, 2)), rd::inverting_function(15, 2));
  EXPECT_THROW(rd::product_lift(rd::inverting_function(3, 2), rd::inverting_function(3, 2)), fsr::DomainError);
  EXPECT_THROW(rd::product_lift(rd::inverting_function(3, 2), rd::inverting_function(5, 1)), fsr::StructuralError);
  const auto l7 = rd::inverting_function(7, 2);
  EXPECT_EQ(rd::product_lift(rd::inverting_function(1, 2), l7), l7);
  EXPECT_EQ(rd::product_lift(rd::inverting_function(4, 2), rd::inverting_function(9, 2)), rd::inverting_function(36, 2));
  EXPECT_TRUE(rd::verify_inverting(rd::product_lift(rd::inverting_function(2, 3), rd::inverting_function(7, 3))));
}

TEST(Radon, FourierAtZero) {
  FunctionTable delta(7, 2);
  delta.at({0, 0}) = 1;
  EXPECT_EQ(rd::fourier_invert_at_zero(rd::forward(delta)), 1);

  std::mt19937_64 rng(49);
  const FunctionTable f = random_table(3, 1, rng);
  EXPECT_EQ(rd::fourier_invert_at_zero(rd::forward(f)), f.values()[0]);

  for (int t = 0; t < 50; ++t) {
    const std::uint64_t n = std::vector<std::uint64_t>{3, 5, 9}[t % 3];
    const std::size_t d = 1 + t % 2;
    const RadonImage rf = rd::forward(random_table(n, d, rng));
    ASSERT_EQ(rd::fourier_invert_at_zero(rf), rd::invert(rf).values()[0]);
  }

  RadonImage bad = rd::forward(f);
  bad.at({3, {1}}, 1) += 1;
  EXPECT_THROW(rd::fourier_invert_at_zero(bad), fsr::DomainError);
}

TEST(Radon, SizeChecks) {
  EXPECT_THROW(FunctionTable(3, 2, std::vector<mpq_class>(8)), fsr::StructuralError);
  EXPECT_THROW(rd::point_count(0, 1), fsr::DomainError);
  EXPECT_THROW(rd::point_count(2, 40), fsr::ResourceError);
  FunctionTable f(3, 1);
  EXPECT_THROW(f.at({1, 1}), fsr::StructuralError);
}
