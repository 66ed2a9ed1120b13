#include "fsr/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "fsr/counterexample.hpp"
#include "fsr/cyclo.hpp"
#include "fsr/error.hpp"
#include "fsr/multiset.hpp"
#include "fsr/numtheory.hpp"
#include "fsr/ofs.hpp"
#include "fsr/radon.hpp"
#include "fsr/search.hpp"

namespace fsr::acceptance {

namespace {

using u64 = std::uint64_t;

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string join(const std::vector<u64>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

radon::FunctionTable random_table(u64 n, std::size_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<unsigned long> den(1, 12);
  radon::FunctionTable f(n, d);
  for (auto& v : f.values()) {
    v = mpq_class(num(rng), den(rng));
    v.canonicalize();
  }
  return f;
}

radon::InvertingFunction lambda_for(u64 n, std::size_t d, const Options& o) {
  auto lambda = radon::inverting_function(n, d);
  if (o.corrupt_lambda) lambda.weights().back() += mpq_class(1, 7);
  return lambda;
}

Outcome ofs_lists() {
  const std::vector<u64> members{1, 3, 5, 7, 9, 11, 13, 15, 19, 21, 23, 25, 27, 29, 35, 37, 39, 45, 47, 49, 53, 55};
  const std::vector<u64> missing{17, 31, 33, 41, 43, 51, 57, 63, 65, 73, 85, 89, 91, 93, 97, 99, 105};
  if (ofs::list_up_to(55) != members) return fail("members up to 55: " + join(ofs::list_up_to(55)));
  if (ofs::list_missing_up_to(105) != missing) return fail("missing up to 105: " + join(ofs::list_missing_up_to(105)));
  return {true, "22 members to 55, 17 non-members to 105"};
}

Outcome characterization() {
  u64 checked = 0;
  for (std::int64_t n = 1; n <= 2000; n += 2, ++checked) {
    if (ofs::is_member(n).member != ofs::is_member_bruteforce(n)) return fail("mismatch at n=" + std::to_string(n));
  }
  return {true, std::to_string(checked) + " odd n agree"};
}

Outcome wieferich() {
  if (!ofs::is_member(3 * 3511).member) return fail("3*3511 should be a member");
  if (ofs::is_member(9 * 3511).member) return fail("9*3511 should not be a member");
  if (ofs::is_member(3511LL * 3511).member) return fail("3511^2 should not be a member");
  return {true, "3*3511 in, 9*3511 and 3511^2 out"};
}

Outcome z2() {
  const auto p = counterexample::z2_pair();
  const Multiset expected = Multiset::of(GroupSpec::cyclic(2), {0, 0, 1, 1});
  if (subset_sums(p.a) != expected || subset_sums(p.a_prime) != expected) return fail("FS differs from {0,0,1,1}");
  if (sim0_check(p.a, p.a_prime).equivalent) return fail("pair is ~0-equivalent");
  return {true, "FS({0,1}) = FS({1,1}) = {0,0,1,1}, not ~0"};
}

Outcome constructed() {
  std::vector<u64> built;
  for (std::int64_t n = 3; n <= 65; n += 2) {
    const auto v = ofs::is_member(n);
    if (v.member || v.ord2 > 14) continue;
    const auto p = counterexample::build(n, counterexample::ExponentMode::Order);
    if (subset_sums(p.a) != subset_sums(p.a_prime)) return fail("FS differs for n=" + std::to_string(n));
    if (sim0_check(p.a, p.a_prime).equivalent) return fail("~0 holds for n=" + std::to_string(n));
    built.push_back(static_cast<u64>(n));
  }
  return {true, "verified n=" + join(built)};
}

Outcome round_trip(const Options& o) {
  std::mt19937_64 rng(o.seed ^ 0x6a09e667f3bcc908ULL);
  std::vector<std::pair<u64, std::size_t>> grid;
  for (u64 n = 1; n <= 64; ++n) {
    u64 size = n;
    for (std::size_t d = 1; size <= 4096; ++d, size *= n) {
      grid.emplace_back(n, d);
      if (n == 1) break;
    }
  }
  for (u64 n : {81, 100, 128, 243, 256, 512, 1024}) grid.emplace_back(n, 1);
  u64 tables = 0;
  for (auto [n, d] : grid) {
    const auto lambda = lambda_for(n, d, o);
    for (int t = 0; t < 20; ++t, ++tables) {
      const auto f = random_table(n, d, rng);
      if (radon::invert(radon::forward(f, o.jobs), lambda, o.jobs) != f) {
        return fail("round trip failed at n=" + std::to_string(n) + " d=" + std::to_string(d));
      }
    }
  }
  return {true, std::to_string(tables) + " tables over " + std::to_string(grid.size()) + " (n,d) shapes"};
}

Outcome inverting_criterion(const Options& o) {
  u64 shapes = 0;
  for (u64 n = 1; n <= 45; n += 2) {
    u64 size = 1;
    for (std::size_t d = 1; d <= 3; ++d) {
      size *= n;
      if (size > 100'000) break;
      if (!radon::verify_inverting(lambda_for(n, d, o))) {
        return fail("criterion sums fail at n=" + std::to_string(n) + " d=" + std::to_string(d));
      }
      ++shapes;
    }
  }
  return {true, std::to_string(shapes) + " (n,d) shapes"};
}

Outcome product() {
  const auto lifted = radon::product_lift(radon::inverting_function(3, 2), radon::inverting_function(5, 2));
  if (lifted != radon::inverting_function(15, 2)) return fail("lift differs from the direct weights for n=15");
  return {true, "225 weights agree"};
}

Outcome fourier(const Options& o) {
  std::mt19937_64 rng(o.seed ^ 0xbb67ae8584caa73bULL);
  const std::vector<std::pair<u64, std::size_t>> shapes{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {9, 1}, {12, 1},
                                                        {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}, {3, 3}, {2, 4}};
  for (int t = 0; t < 50; ++t) {
    const auto [n, d] = shapes[static_cast<std::size_t>(t) % shapes.size()];
    const auto f = random_table(n, d, rng);
    const auto rf = radon::forward(f);
    const mpq_class via_fourier = radon::fourier_invert_at_zero(rf);
    if (via_fourier != radon::invert(rf).values()[0] || via_fourier != f.values()[0]) {
      return fail("disagreement at n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
  }
  return {true, "50 cases agree"};
}

Outcome distribution() {
  u64 checks = 0;
  for (u64 n = 1; n <= 45; n += 2) {
    for (u64 p : nt::prime_divisors(n)) {
      for (u64 j = 0; j < n / p; ++j, ++checks) {
        if (!cyclo::verify_distribution(n, p, j)) {
          return fail("n=" + std::to_string(n) + " p=" + std::to_string(p) + " j=" + std::to_string(j));
        }
      }
    }
  }
  return {true, std::to_string(checks) + " relations"};
}

std::vector<Multiset> multisets_up_to(const GroupSpec& g, std::size_t max_size) {
  std::vector<Multiset> out;
  for (std::size_t s = 0; s <= max_size; ++s) {
    auto level = search::enumerate_multisets(g, s, std::nullopt);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Outcome bridge(const Options& o) {
  std::mt19937_64 rng(o.seed ^ 0x3c6ef372fe94f82bULL);
  u64 pairs = 0, equal = 0;
  for (std::int64_t n : {3, 5, 9, 15}) {
    const GroupSpec g = GroupSpec::cyclic(n);
    const auto all = multisets_up_to(g, 3);
    std::vector<Multiset> fs;
    for (const auto& a : all) fs.push_back(subset_sums(a));
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t k = 0; k < all.size(); ++k, ++pairs) {
        const bool same = fs[i] == fs[k];
        equal += same;
        if (same != cyclo::kernel_test(static_cast<u64>(n), cyclo::multiplicity_difference(all[i], all[k]))) {
          return fail("exhaustive mismatch: " + to_string(all[i]) + " vs " + to_string(all[k]));
        }
      }
    }
    std::uniform_int_distribution<std::int64_t> coord(0, n - 1);
    std::uniform_int_distribution<std::size_t> size(0, 5);
    for (int t = 0; t < 200; ++t, ++pairs) {
      Multiset a(g);
      const std::size_t s = size(rng);
      for (std::size_t i = 0; i < s; ++i) a.insert(GroupElement{coord(rng)});
      // Alternate between an unrelated multiset and a random sign flip of A.
      Multiset b(g);
      if (t % 2 == 0) {
        for (const auto& x : a.expanded())
          if (rng() & 1) b.insert(x);
        b = flip(a, b);
      } else {
        for (std::size_t i = 0; i < s; ++i) b.insert(GroupElement{coord(rng)});
      }
      const bool same = subset_sums(a) == subset_sums(b);
      equal += same;
      if (same != cyclo::kernel_test(static_cast<u64>(n), cyclo::multiplicity_difference(a, b))) {
        return fail("random mismatch: " + to_string(a) + " vs " + to_string(b));
      }
    }
  }
  return {true, std::to_string(pairs) + " pairs, " + std::to_string(equal) + " with equal FS"};
}

Outcome ranks(double tolerance) {
  for (u64 n : {1, 3, 5, 7, 9, 15, 21, 25, 27}) {
    const auto s = cyclo::surjectivity_check(n);
    if (!s.surjective) return fail("surjectivity fails at n=" + std::to_string(n));
    const auto k = cyclo::kernel_rank_check(n);
    if (!k.consistent || k.lattice_rank != (n - 1) / 2) return fail("kernel rank wrong at n=" + std::to_string(n));
    if (n >= 3) {
      const auto r = cyclo::unit_group_rank_numeric(n, tolerance);
      if (r.numeric_rank != nt::totient(n) / 2) return fail("numeric rank wrong at n=" + std::to_string(n));
    }
  }
  return {true, "9 moduli: surjective, kernel rank (n-1)/2, numeric rank phi(n)/2"};
}

Outcome scans(const Options& o) {
  search::ScanOptions so;
  so.jobs = o.jobs;
  so.budget = std::uint64_t{1} << 40;
  auto clean = [&](const GroupSpec& g, std::size_t k, std::optional<std::int64_t> bound) -> std::optional<std::string> {
    const auto r = search::regularity_scan(g, k, bound, so);
    if (!r.violations.empty()) return "violation in " + g.to_string() + ": " + to_string(r.violations[0].a);
    if (r.budget_exceeded || r.sizes_completed != k) return "scan of " + g.to_string() + " incomplete";
    return std::nullopt;
  };
  for (std::int64_t n : {3, 5, 7, 9, 15})
    if (auto e = clean(GroupSpec::cyclic(n), 4, std::nullopt)) return fail(*e);
  if (auto e = clean(GroupSpec::power(3, 2), 3, std::nullopt)) return fail(*e);
  if (auto e = clean(GroupSpec({3, 0}), 3, 2)) return fail(*e);

  if (search::regularity_scan(GroupSpec::cyclic(2), 2, std::nullopt, so).violations.empty()) {
    return fail("no violation found over Z/2");
  }
  const auto pair = counterexample::build(17);
  search::ScanOptions with_pair = so;
  with_pair.candidates.emplace_back(pair.a, pair.a_prime);
  if (search::regularity_scan(GroupSpec::cyclic(17), 2, std::nullopt, with_pair).violations.empty()) {
    return fail("constructed Z/17 pair not confirmed");
  }
  return {true, "clean: Z/3,5,7,9,15 (size 4), (Z/3)^2 and Z/3+Z (size 3); violations: Z/2, Z/17 pair"};
}

Outcome add_subset_sums(const Options& o) {
  for (std::int64_t n : {9, 7}) {
    const auto r = search::verify_add_subset_sums(GroupSpec::cyclic(n), 500, o.seed);
    if (!r.holds) return fail("counterexample over Z/" + std::to_string(n));
  }
  return {true, "500 random trials plus exhaustive cases over Z/9 and Z/7"};
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome(const Options&)> check;
};

}  // namespace

std::vector<CriterionResult> run(const Options& options, const std::function<void(const CriterionResult&)>& on_result) {
  const std::vector<Criterion> criteria{
      {1, "ofs lists", 1, [](const Options&) { return ofs_lists(); }},
      {2, "ofs characterization vs definition", 30, [](const Options&) { return characterization(); }},
      {3, "wieferich case", 5, [](const Options&) { return wieferich(); }},
      {4, "z2 counterexample", 0, [](const Options&) { return z2(); }},
      {5, "constructed counterexamples", 60, [](const Options&) { return constructed(); }},
      {6, "radon round trip", 120, round_trip},
      {7, "inverting function criterion", 120, inverting_criterion},
      {8, "product composition", 0, [](const Options&) { return product(); }},
      {9, "fourier oracle", 0, fourier},
      {10, "distribution relations", 60, [](const Options&) { return distribution(); }},
      {11, "fs/kernel bridge", 0, bridge},
      {12, "rank checks", 300, [](const Options&) { return ranks(cyclo::kDefaultRankTolerance); }},
      {13, "regularity scans", 600, scans},
      {14, "add subset sums", 0, add_subset_sums},
  };

  std::vector<CriterionResult> out;
  for (const auto& c : criteria) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.limit_seconds = c.limit;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check(options);
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = outcome.pass;
    r.detail = std::move(outcome.detail);
    if (r.pass && c.limit > 0 && r.seconds > c.limit) {
      r.pass = false;
      r.detail += "; exceeded time limit";
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fsr::acceptance
