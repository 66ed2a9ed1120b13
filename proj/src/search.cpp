#include "fsr/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "fsr/error.hpp"
#include "fsr/parallel.hpp"

namespace fsr::search {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Mixed-radix encoding of g in which each Z factor becomes Z/(2h+1) with
// representatives [-h, h]. Faithful for sums whose Z coordinates stay within [-h, h].
class Dense {
 public:
  Dense(const GroupSpec& g, std::int64_t half) : half_(half) {
    for (std::int64_t m : g.moduli()) {
      radix_.push_back(m == 0 ? static_cast<u64>(2 * half + 1) : static_cast<u64>(m));
      if (size_ > kMaxDenseSize / radix_.back()) {
        throw ResourceError("search: encoding of " + g.to_string() + " exceeds " + std::to_string(kMaxDenseSize) + " cells");
      }
      size_ *= radix_.back();
      infinite_.push_back(m == 0);
    }
  }

  u64 size() const { return size_; }

  std::optional<u32> index(const GroupElement& x) const {
    u64 idx = 0;
    for (std::size_t i = 0; i < radix_.size(); ++i) {
      std::int64_t c = x[i];
      if (infinite_[i]) {
        if (c < -half_ || c > half_) return std::nullopt;
        if (c < 0) c += static_cast<std::int64_t>(radix_[i]);
      }
      idx = idx * radix_[i] + static_cast<u64>(c);
    }
    return static_cast<u32>(idx);
  }

  // index(y - x) for every cell y.
  std::vector<u32> minus_table(const GroupElement& x) const {
    std::vector<u64> shift(radix_.size());
    for (std::size_t i = 0; i < radix_.size(); ++i) {
      const auto r = static_cast<std::int64_t>(radix_[i]);
      shift[i] = static_cast<u64>(((-x[i]) % r + r) % r);
    }
    std::vector<u32> out(size_);
    std::vector<u64> coords(radix_.size(), 0);
    for (u64 y = 0; y < size_; ++y) {
      u64 idx = 0;
      for (std::size_t i = 0; i < radix_.size(); ++i) idx = idx * radix_[i] + (coords[i] + shift[i]) % radix_[i];
      out[y] = static_cast<u32>(idx);
      for (std::size_t i = radix_.size(); i-- > 0;) {
        if (++coords[i] < radix_[i]) break;
        coords[i] = 0;
      }
    }
    return out;
  }

 private:
  std::int64_t half_;
  std::vector<u64> radix_;
  std::vector<bool> infinite_;
  u64 size_ = 1;
};

// counts <- counts ∪ (counts + x), given the minus table of x.
void convolve(std::vector<u64>& counts, std::vector<u64>& scratch, const std::vector<u32>& minus) {
  scratch = counts;
  for (u64 y = 0; y < counts.size(); ++y) counts[y] += scratch[minus[y]];
}

std::int64_t half_width(const GroupSpec& g, std::optional<std::int64_t> bound, std::size_t terms) {
  if (g.is_finite()) return 0;
  if (!bound) throw UnsupportedError("search: " + g.to_string() + " has an infinite factor and no coordinate bound was given");
  if (*bound < 0) throw DomainError("search: coordinate bound must be nonnegative");
  return *bound * static_cast<std::int64_t>(std::max<std::size_t>(terms, 1));
}

Multiset from_indices(const GroupSpec& g, const std::vector<GroupElement>& pool, const u32* idx, std::size_t k) {
  Multiset a(g);
  for (std::size_t i = 0; i < k; ++i) a.insert(pool[idx[i]]);
  return a;
}

// Advances a nondecreasing sequence over [0, pool); false after the last one.
bool next_sequence(std::vector<u32>& seq, u32 pool) {
  for (std::size_t i = seq.size(); i-- > 0;) {
    if (seq[i] + 1 < pool) {
      const u32 v = seq[i] + 1;
      for (std::size_t j = i; j < seq.size(); ++j) seq[j] = v;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<Multiset>> sim0_classes(std::vector<Multiset> members) {
  std::sort(members.begin(), members.end());
  std::vector<std::vector<Multiset>> classes;
  for (auto& a : members) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return sim0_check(c.front(), a).equivalent; });
    if (it == classes.end()) {
      classes.push_back({std::move(a)});
    } else {
      it->push_back(std::move(a));
    }
  }
  return classes;
}

u64 mix(u64 h, u64 v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h;
}

}  // namespace

std::vector<GroupElement> bounded_elements(const GroupSpec& g, std::optional<std::int64_t> bound) {
  const std::int64_t b = half_width(g, bound, 1);
  std::vector<GroupElement> out;
  std::vector<std::int64_t> lo, hi;
  for (std::int64_t m : g.moduli()) {
    lo.push_back(m == 0 ? -b : 0);
    hi.push_back(m == 0 ? b : m - 1);
  }
  std::vector<std::int64_t> c = lo;
  while (true) {
    out.emplace_back(c);
    std::size_t i = c.size();
    while (i-- > 0) {
      if (c[i] < hi[i]) {
        ++c[i];
        break;
      }
      c[i] = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::uint64_t multiset_count(std::uint64_t pool, std::size_t size) {
  if (pool == 0) return size == 0 ? 1 : 0;
  // C(pool + size - 1, size) = Π_{i=1..size} (pool - 1 + i) / i, exact at every step.
  unsigned __int128 c = 1;
  for (std::size_t i = 1; i <= size; ++i) {
    c = c * (pool - 1 + i) / i;
    if (c > std::numeric_limits<u64>::max()) return std::numeric_limits<u64>::max();
  }
  return static_cast<u64>(c);
}

void for_each_multiset(const GroupSpec& g, std::size_t size, std::optional<std::int64_t> bound,
                       const std::function<bool(const Multiset&)>& fn) {
  const auto pool = bounded_elements(g, bound);
  std::vector<u32> seq(size, 0);
  do {
    if (!fn(from_indices(g, pool, seq.data(), size))) return;
  } while (next_sequence(seq, static_cast<u32>(pool.size())));
}

std::vector<Multiset> enumerate_multisets(const GroupSpec& g, std::size_t size, std::optional<std::int64_t> bound) {
  std::vector<Multiset> out;
  for_each_multiset(g, size, bound, [&](const Multiset& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

std::vector<std::vector<Multiset>> fs_preimages(const Multiset& s, std::optional<std::int64_t> bound,
                                                const PreimageOptions& options) {
  const mpz_class card = s.cardinality();
  if (card == 0 || mpz_popcount(card.get_mpz_t()) != 1) {
    throw DomainError("fs_preimages: |S| = " + card.get_str() + " is not a power of two");
  }
  const std::size_t m = mpz_sizeinbase(card.get_mpz_t(), 2) - 1;
  if (m > options.cap) throw ResourceError("fs_preimages: |A| = " + std::to_string(m) + " exceeds the cap " + std::to_string(options.cap));

  const GroupSpec& g = s.group();
  const auto pool = bounded_elements(g, bound);
  const Dense dense(g, half_width(g, bound, m));
  std::vector<u64> target(dense.size(), 0);
  for (const auto& [x, mult] : s.entries()) {
    const auto idx = dense.index(x);
    if (!idx) return {};  // FS of elements in the box never leaves the encoded range
    target[*idx] = mult.get_ui();
  }
  GroupElement target_sum = g.zero();
  for (const auto& [x, mult] : s.entries()) target_sum = g.add(target_sum, g.scale(mult, x));

  std::vector<std::vector<u32>> minus;
  for (const auto& x : pool) minus.push_back(dense.minus_table(x));

  std::vector<Multiset> found;
  std::vector<u32> seq;
  std::vector<std::vector<u64>> level(m + 1, std::vector<u64>(dense.size(), 0));
  level[0][*dense.index(g.zero())] = 1;
  std::vector<u64> scratch;

  auto dfs = [&](auto&& self, std::size_t depth, u32 start) -> void {
    if (depth == m) {
      const Multiset a = from_indices(g, pool, seq.data(), m);
      if (options.prune && m >= 1 && g.scale(mpz_class(1) << (m - 1), a.sum()) != target_sum) return;
      if (level[m] == target) found.push_back(a);
      return;
    }
    for (u32 i = start; i < pool.size(); ++i) {
      level[depth + 1] = level[depth];
      convolve(level[depth + 1], scratch, minus[i]);
      if (options.prune) {
        bool fits = true;
        for (u64 y = 0; y < target.size() && fits; ++y) fits = level[depth + 1][y] <= target[y];
        if (!fits) continue;
      }
      seq.push_back(i);
      self(self, depth + 1, i);
      seq.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  return sim0_classes(std::move(found));
}

ScanReport regularity_scan(const GroupSpec& g, std::size_t max_size, std::optional<std::int64_t> bound,
                           const ScanOptions& options) {
  if (max_size > kDefaultSubsetSumsCap) {
    throw ResourceError("regularity_scan: max_size " + std::to_string(max_size) + " exceeds the subset-sum cap");
  }
  ScanReport report;
  report.group = g;
  report.max_size = max_size;
  report.bound = g.is_finite() ? std::nullopt : bound;

  const auto pool = bounded_elements(g, bound);
  const Dense dense(g, half_width(g, bound, max_size));
  const auto pool_size = static_cast<u32>(pool.size());
  std::vector<std::vector<u32>> minus;
  for (const auto& x : pool) minus.push_back(dense.minus_table(x));
  const u32 zero = *dense.index(g.zero());

  auto signature = [&](const u32* seq, std::size_t k, std::vector<u64>& counts, std::vector<u64>& scratch) {
    counts.assign(dense.size(), 0);
    counts[zero] = 1;
    for (std::size_t i = 0; i < k; ++i) convolve(counts, scratch, minus[seq[i]]);
  };

  for (std::size_t k = 1; k <= max_size; ++k) {
    const u64 count = multiset_count(pool_size, k);
    if (count > options.budget - report.multisets_examined) {
      report.budget_exceeded = true;
      break;
    }
    std::vector<u32> seqs;
    seqs.reserve(count * k);
    std::vector<u32> seq(k, 0);
    do {
      seqs.insert(seqs.end(), seq.begin(), seq.end());
    } while (next_sequence(seq, pool_size));

    std::vector<u64> hashes(count);
    parallel_for(count, options.jobs, [&](std::size_t begin, std::size_t end) {
      std::vector<u64> counts, scratch;
      for (std::size_t i = begin; i < end; ++i) {
        signature(&seqs[i * k], k, counts, scratch);
        u64 h = 0;
        for (u64 y = 0; y < counts.size(); ++y)
          if (counts[y] != 0) h = mix(mix(h, y), counts[y]);
        hashes[i] = h;
      }
    });
    std::vector<u64> order(count);
    std::iota(order.begin(), order.end(), u64{0});
    std::sort(order.begin(), order.end(), [&](u64 a, u64 b) { return std::tie(hashes[a], a) < std::tie(hashes[b], b); });

    std::vector<u64> counts, scratch;
    for (u64 lo = 0; lo < count;) {
      u64 hi = lo + 1;
      while (hi < count && hashes[order[hi]] == hashes[order[lo]]) ++hi;
      if (hi - lo > 1) {
        // Equal hashes: split by exact subset-sum counts, then by ~0.
        std::vector<std::pair<std::vector<u64>, u64>> exact;
        for (u64 i = lo; i < hi; ++i) {
          signature(&seqs[order[i] * k], k, counts, scratch);
          exact.emplace_back(counts, order[i]);
        }
        std::sort(exact.begin(), exact.end());
        for (std::size_t a = 0; a < exact.size();) {
          std::size_t b = a + 1;
          while (b < exact.size() && exact[b].first == exact[a].first) ++b;
          if (b - a > 1) {
            std::vector<Multiset> fibre;
            for (std::size_t i = a; i < b; ++i) fibre.push_back(from_indices(g, pool, &seqs[exact[i].second * k], k));
            const auto classes = sim0_classes(std::move(fibre));
            for (std::size_t c = 1; c < classes.size(); ++c) report.violations.push_back({classes[0].front(), classes[c].front()});
            if (classes.size() > 1 && !report.first_violation_size) report.first_violation_size = k;
          }
          a = b;
        }
      }
      lo = hi;
    }
    report.multisets_examined += count;
    report.sizes_completed = k;
  }

  for (const auto& [a, ap] : options.candidates) {
    if (a.group() != g || ap.group() != g) throw StructuralError("regularity_scan: candidate pair lives in another group");
    if (subset_sums(a) == subset_sums(ap) && !sim0_check(a, ap).equivalent) {
      const bool known = std::any_of(report.violations.begin(), report.violations.end(), [&](const Violation& v) {
        return (v.a == a && v.a_prime == ap) || (v.a == ap && v.a_prime == a);
      });
      if (!known) report.violations.push_back({a, ap});
    }
  }

  for (const auto& v : report.violations) {
    if (subset_sums(v.a) != subset_sums(v.a_prime) || sim0_check(v.a, v.a_prime).equivalent) {
      throw InvariantViolation("regularity_scan: reported pair " + to_string(v.a) + ", " + to_string(v.a_prime) + " does not re-verify");
    }
  }
  std::sort(report.violations.begin(), report.violations.end(), [](const Violation& x, const Violation& y) {
    const auto sx = x.a.size(), sy = y.a.size();
    if (sx != sy) return sx < sy;
    if (x.a != y.a) return x.a < y.a;
    return x.a_prime < y.a_prime;
  });
  report.exhaustive = g.is_finite() && !report.budget_exceeded;
  return report;
}

AddSubsetSumsReport verify_add_subset_sums(const GroupSpec& g, std::uint64_t trials, std::uint64_t seed,
                                           std::optional<std::int64_t> bound) {
  if (g.has_two_torsion()) throw DomainError("verify_add_subset_sums: " + g.to_string() + " has an element of order 2");
  const auto pool = bounded_elements(g, bound);
  AddSubsetSumsReport report;

  auto check = [&](const Multiset& a, const Multiset& ap, const Multiset& b, const Multiset& fs_b) {
    if (sumset(a, fs_b) == sumset(ap, fs_b)) {
      report.holds = false;
      if (!report.counterexample) report.counterexample = AddSubsetSumsReport::Witness{a, ap, b};
    }
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), size_a(1, 4), size_b(0, 4);
  auto draw = [&](std::size_t k) {
    Multiset a(g);
    for (std::size_t i = 0; i < k; ++i) a.insert(pool[pick(rng)]);
    return a;
  };
  for (u64 t = 0; t < trials && pool.size() > 1; ++t) {
    const std::size_t k = size_a(rng);
    const Multiset a = draw(k);
    Multiset ap = draw(k);
    while (ap == a) ap = draw(k);
    const Multiset b = draw(size_b(rng));
    check(a, ap, b, subset_sums(b));
    ++report.random_trials;
  }

  if (g.is_finite()) {
    std::vector<Multiset> small;
    for (std::size_t k = 0; k <= 2; ++k)
      for (auto& a : enumerate_multisets(g, k, bound)) small.push_back(std::move(a));
    std::vector<Multiset> fs;
    for (const auto& b : small) fs.push_back(subset_sums(b));
    for (std::size_t i = 0; i < small.size(); ++i)
      for (std::size_t j = i + 1; j < small.size(); ++j) {
        if (small[i].size() != small[j].size()) continue;
        for (std::size_t b = 0; b < small.size(); ++b) {
          check(small[i], small[j], small[b], fs[b]);
          ++report.exhaustive_cases;
        }
      }
  }
  return report;
}

}  // namespace fsr::search
