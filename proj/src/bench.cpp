#include "fsr/bench.hpp"

#include <chrono>
#include <random>

#include "fsr/error.hpp"
#include "fsr/radon.hpp"
#include "fsr/search.hpp"

namespace fsr::bench {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

io::Json fs_row(std::size_t size, std::mt19937_64& rng) {
  const GroupSpec g = GroupSpec::cyclic(101);
  std::uniform_int_distribution<std::int64_t> coord(0, 100);
  Multiset a(g);
  for (std::size_t i = 0; i < size; ++i) a.insert(GroupElement{coord(rng)});
  const auto start = Clock::now();
  const Multiset s = subset_sums(a, size);
  io::Json row = io::Json::object();
  row["group"] = io::to_json(g);
  row["size"] = size;
  row["distinct_inputs"] = a.distinct();
  row["distinct_sums"] = s.distinct();
  row["total_multiplicity"] = s.cardinality().get_str();
  row["seconds"] = since(start);
  return row;
}

io::Json search_row(const GroupSpec& g, std::size_t k, std::optional<std::int64_t> bound, unsigned jobs) {
  search::ScanOptions so;
  so.jobs = jobs;
  const auto start = Clock::now();
  const auto r = search::regularity_scan(g, k, bound, so);
  io::Json row = io::Json::object();
  row["group"] = io::to_json(g);
  row["max_size"] = k;
  row["bound"] = bound ? io::Json(*bound) : io::Json(nullptr);
  row["multisets_examined"] = r.multisets_examined;
  row["violations"] = r.violations.size();
  row["seconds"] = since(start);
  return row;
}

}  // namespace

io::Json radon_row(std::uint64_t n, std::size_t d, std::uint64_t seed, unsigned jobs) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<unsigned long> den(1, 12);
  radon::FunctionTable f(n, d);
  for (auto& v : f.values()) {
    v = mpq_class(num(rng), den(rng));
    v.canonicalize();
  }
  auto start = Clock::now();
  const auto lambda = radon::inverting_function(n, d);
  const double lambda_seconds = since(start);
  start = Clock::now();
  const auto rf = radon::forward(f, jobs);
  const double forward_seconds = since(start);
  start = Clock::now();
  const auto back = radon::invert(rf, lambda, jobs);
  const double invert_seconds = since(start);

  io::Json row = io::Json::object();
  row["n"] = n;
  row["d"] = d;
  row["points"] = f.values().size();
  row["image_entries"] = rf.entries().size();
  row["round_trip"] = back == f;
  row["lambda_seconds"] = lambda_seconds;
  row["forward_seconds"] = forward_seconds;
  row["invert_seconds"] = invert_seconds;
  return row;
}

io::Json run(const std::string& suite, std::uint64_t seed, unsigned jobs) {
  io::Json rows = io::Json::array();
  if (suite == "radon") {
    const std::pair<std::uint64_t, std::size_t> sweep[] = {{3, 4}, {9, 2}, {5, 3}, {3, 8}};
    for (auto [n, d] : sweep) rows.push_back(radon_row(n, d, seed, jobs));
  } else if (suite == "fs") {
    std::mt19937_64 rng(seed);
    for (std::size_t size : {8, 12, 16, 20}) rows.push_back(fs_row(size, rng));
  } else if (suite == "search") {
    rows.push_back(search_row(GroupSpec::cyclic(3), 4, std::nullopt, jobs));
    rows.push_back(search_row(GroupSpec::cyclic(5), 4, std::nullopt, jobs));
    rows.push_back(search_row(GroupSpec::cyclic(2), 3, std::nullopt, jobs));
    rows.push_back(search_row(GroupSpec::power(3, 2), 3, std::nullopt, jobs));
    rows.push_back(search_row(GroupSpec({3, 0}), 3, 2, jobs));
  } else {
    throw StructuralError("unknown bench suite \"" + suite + "\" (expected radon, fs or search)");
  }
  io::Json out = io::Json::object();
  out["suite"] = suite;
  out["seed"] = seed;
  out["rows"] = std::move(rows);
  return out;
}

}  // namespace fsr::bench
