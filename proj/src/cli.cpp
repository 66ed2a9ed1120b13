#include "fsr/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

#include "fsr/acceptance.hpp"
#include "fsr/bench.hpp"
#include "fsr/config.hpp"
#include "fsr/counterexample.hpp"
#include "fsr/cyclo.hpp"
#include "fsr/error.hpp"
#include "fsr/io.hpp"
#include "fsr/numtheory.hpp"
#include "fsr/ofs.hpp"
#include "fsr/radon.hpp"
#include "fsr/search.hpp"

namespace fsr::cli {

namespace {

using io::Json;

struct Context {
  Config config;
  std::ostream& out;
  std::ostream& err;

  bool json() const { return config.output == OutputMode::Json; }
};

void emit(Context& ctx, const Json& j, const std::string& path = {}) {
  if (path.empty()) {
    ctx.out << j.dump() << '\n';
  } else {
    io::write_file(path, j);
  }
}

// fs ------------------------------------------------------------------------

struct FsArgs {
  std::string in, out;
};

int run_fs(Context& ctx, const FsArgs& a) {
  const Multiset input = io::multiset_from_json(io::read_file(a.in));
  const Multiset s = subset_sums(input, ctx.config.fs_cap);
  if (!a.out.empty()) {
    io::write_file(a.out, io::to_json(s));
  } else if (ctx.json()) {
    emit(ctx, io::to_json(s));
  } else {
    ctx.out << to_string(s) << '\n';
  }
  return kSuccess;
}

// sim0 ----------------------------------------------------------------------

struct Sim0Args {
  std::string a, b;
  bool plain = false;
};

int run_sim0(Context& ctx, const Sim0Args& args) {
  const Multiset a = io::multiset_from_json(io::read_file(args.a));
  const Multiset b = io::multiset_from_json(io::read_file(args.b));
  Sim0Result r;
  if (args.plain) {
    r.equivalent = sim_check(a, b);
  } else {
    r = sim0_check(a, b);
  }
  if (ctx.json()) {
    emit(ctx, io::to_json(r, args.plain));
  } else {
    ctx.out << (r.equivalent ? "equivalent" : "not equivalent");
    if (r.witness) ctx.out << " (flip " << to_string(r.witness->flip_set) << ")";
    ctx.out << '\n';
  }
  return r.equivalent ? kSuccess : kVerdictFalse;
}

// ofs -----------------------------------------------------------------------

struct OfsArgs {
  std::int64_t n = 0;
  std::uint64_t limit = 0;
  bool complement = false;
};

std::string verdict_line(const ofs::Verdict& v) {
  std::ostringstream os;
  os << v.n << ": " << (v.member ? "member" : "not member") << " (ord2=" << v.ord2 << ", phi=" << v.phi
     << ", " << ofs::to_string(v.branch) << ")";
  return os.str();
}

int run_ofs_test(Context& ctx, const OfsArgs& a) {
  const auto v = ofs::is_member(a.n);
  if (ctx.json()) {
    emit(ctx, io::to_json(v));
  } else {
    ctx.out << verdict_line(v) << '\n';
  }
  return v.member ? kSuccess : kVerdictFalse;
}

int run_ofs_list(Context& ctx, const OfsArgs& a) {
  const auto values = a.complement ? ofs::list_missing_up_to(a.limit) : ofs::list_up_to(a.limit);
  if (ctx.json()) {
    Json j = Json::object();
    j["limit"] = a.limit;
    j["complement"] = a.complement;
    j["values"] = values;
    emit(ctx, j);
  } else {
    for (auto n : values) ctx.out << n << '\n';
  }
  return kSuccess;
}

// counterexample -------------------------------------------------------------

struct CounterexampleArgs {
  std::int64_t n = 0;
  std::string mode = "order";
  std::string out;
};

int run_counterexample(Context& ctx, const CounterexampleArgs& a) {
  const auto mode = counterexample::mode_from_string(a.mode);
  const auto pair = a.n == 2 ? counterexample::z2_pair() : counterexample::build(a.n, mode, ctx.config.fs_cap);
  const Json j = io::to_json(pair, mode);
  if (!a.out.empty()) {
    io::write_file(a.out, j);
  } else if (ctx.json()) {
    emit(ctx, j);
  }
  if (!ctx.json()) {
    ctx.out << "n=" << pair.n;
    if (pair.d) ctx.out << " d=" << *pair.d << " k=" << *pair.k;
    ctx.out << "\nA  = " << to_string(pair.a) << "\nA' = " << to_string(pair.a_prime)
            << "\nFS(A) = FS(A'): " << (pair.verified ? "yes" : "no") << ", A ~0 A': " << (pair.verified ? "no" : "?")
            << '\n';
  }
  return pair.verified ? kSuccess : kInternalError;
}

// radon ---------------------------------------------------------------------

struct RadonArgs {
  std::uint64_t n = 0;
  std::size_t d = 0;
  std::string in, out, lambda;
};

void check_shape(const RadonArgs& a, std::uint64_t n, std::size_t d) {
  if ((a.n && a.n != n) || (a.d && a.d != d)) {
    throw StructuralError("input has n=" + std::to_string(n) + " d=" + std::to_string(d) + ", flags disagree");
  }
}

void require_nd(const RadonArgs& a) {
  if (a.n == 0 || a.d == 0) throw StructuralError("--n and --d are required");
}

int run_radon_forward(Context& ctx, const RadonArgs& a) {
  const auto f = io::function_table_from_json(io::read_file(a.in));
  check_shape(a, f.n(), f.d());
  emit(ctx, io::to_json(radon::forward(f, ctx.config.jobs)), a.out);
  return kSuccess;
}

int run_radon_invert(Context& ctx, const RadonArgs& a) {
  const auto rf = io::radon_image_from_json(io::read_file(a.in));
  check_shape(a, rf.n(), rf.d());
  const auto lambda = a.lambda.empty() ? radon::inverting_function(rf.n(), rf.d())
                                       : io::inverting_function_from_json(io::read_file(a.lambda));
  emit(ctx, io::to_json(radon::invert(rf, lambda, ctx.config.jobs)), a.out);
  return kSuccess;
}

int run_radon_lambda(Context& ctx, const RadonArgs& a) {
  require_nd(a);
  emit(ctx, io::to_json(radon::inverting_function(a.n, a.d)), a.out);
  return kSuccess;
}

int run_radon_verify(Context& ctx, const RadonArgs& a) {
  radon::InvertingFunction lambda(1, 1);
  if (a.in.empty()) {
    require_nd(a);
    lambda = radon::inverting_function(a.n, a.d);
  } else {
    lambda = io::inverting_function_from_json(io::read_file(a.in));
    check_shape(a, lambda.n(), lambda.d());
  }
  const bool ok = radon::verify_inverting(lambda);
  if (ctx.json()) {
    Json j = Json::object();
    j["n"] = lambda.n();
    j["d"] = lambda.d();
    j["inverting"] = ok;
    emit(ctx, j);
  } else {
    ctx.out << "n=" << lambda.n() << " d=" << lambda.d() << ": " << (ok ? "inverting" : "not inverting") << '\n';
  }
  return ok ? kSuccess : kVerdictFalse;
}

int run_radon_bench(Context& ctx, const RadonArgs& a) {
  require_nd(a);
  const Json row = bench::radon_row(a.n, a.d, ctx.config.seed, ctx.config.jobs);
  emit(ctx, row);
  return row["round_trip"].get<bool>() ? kSuccess : kInternalError;
}

// cyclo ---------------------------------------------------------------------

struct CycloArgs {
  std::uint64_t n = 0;
  std::string vector;
};

Json report(const std::string& command, std::uint64_t n, Json checks) {
  bool pass = true;
  for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
  Json j = Json::object();
  j["command"] = command;
  j["n"] = n;
  j["checks"] = std::move(checks);
  j["pass"] = pass;
  return j;
}

int finish(Context& ctx, const Json& j) {
  emit(ctx, j);
  return j["pass"].get<bool>() ? kSuccess : kVerdictFalse;
}

int run_cyclo_dist(Context& ctx, const CycloArgs& a) {
  Json checks = Json::array();
  for (std::uint64_t p : nt::prime_divisors(a.n)) {
    for (std::uint64_t j = 0; j < a.n / p; ++j) {
      Json c = Json::object();
      c["p"] = p;
      c["j"] = j;
      c["pass"] = cyclo::verify_distribution(a.n, p, j);
      checks.push_back(std::move(c));
    }
  }
  return finish(ctx, report("dist", a.n, std::move(checks)));
}

cyclo::ExponentVector parse_vector(std::uint64_t n, const std::string& csv) {
  std::vector<std::int64_t> entries;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      entries.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw StructuralError("--vector: bad entry \"" + item + "\"");
    }
  }
  return cyclo::ExponentVector(n, std::move(entries));
}

int run_cyclo_kernel(Context& ctx, const CycloArgs& a) {
  const auto x = parse_vector(a.n, a.vector);
  Json checks = Json::array();
  Json c = Json::object();
  c["check"] = "kernel";
  c["vector"] = x.entries;
  c["pass"] = cyclo::kernel_test(a.n, x);
  checks.push_back(std::move(c));
  return finish(ctx, report("kernel-test", a.n, std::move(checks)));
}

int run_cyclo_ranks(Context& ctx, const CycloArgs& a) {
  const auto cap = ctx.config.cyclo_cap;
  Json checks = Json::array();

  const auto s = cyclo::surjectivity_check(a.n, cap);
  Json sj = Json::object();
  sj["check"] = "surjectivity";
  sj["rank"] = s.rank;
  sj["codomain_dim"] = s.codomain_dim;
  sj["pass"] = s.surjective;
  checks.push_back(std::move(sj));

  if (ofs::is_member(static_cast<std::int64_t>(a.n)).member) {
    const auto k = cyclo::kernel_rank_check(a.n, cap);
    Json kj = Json::object();
    kj["check"] = "kernel_rank";
    kj["lattice_rank"] = k.lattice_rank;
    kj["expected"] = k.expected;
    kj["constraint_nullity"] = k.constraint_nullity;
    kj["basis_in_lattice"] = k.basis_in_lattice;
    kj["basis_in_kernel"] = k.basis_in_kernel;
    kj["pass"] = k.consistent;
    checks.push_back(std::move(kj));
  }

  if (a.n >= 3) {
    const auto r = cyclo::unit_group_rank_numeric(a.n, ctx.config.tolerance, cap);
    Json rj = Json::object();
    rj["check"] = "unit_rank_numeric";
    rj["numeric_rank"] = r.numeric_rank;
    rj["expected"] = r.expected ? Json(*r.expected) : Json(nullptr);
    rj["tolerance"] = r.tolerance;
    Json sv = Json::array();
    for (double v : r.singular_values) sv.push_back(v);
    rj["singular_values"] = std::move(sv);
    // Without an expected value the rank is reported but not judged.
    rj["pass"] = !r.expected || *r.expected == r.numeric_rank;
    checks.push_back(std::move(rj));
  }
  return finish(ctx, report("ranks", a.n, std::move(checks)));
}

// search --------------------------------------------------------------------

struct SearchArgs {
  std::string group;
  std::size_t max_size = 0;
  std::optional<std::int64_t> bound;
  std::optional<std::uint64_t> budget;
  std::string in, out;
};

int run_search_scan(Context& ctx, const SearchArgs& a) {
  const GroupSpec g = io::group_from_json(io::parse(a.group));
  search::ScanOptions so;
  so.jobs = ctx.config.jobs;
  so.budget = a.budget.value_or(ctx.config.search_budget);
  const auto r = search::regularity_scan(g, a.max_size, a.bound, so);
  emit(ctx, io::to_json(r), a.out);
  if (!r.violations.empty()) return kVerdictFalse;
  return r.budget_exceeded ? kResourceError : kSuccess;
}

int run_search_invert(Context& ctx, const SearchArgs& a) {
  const Multiset s = io::multiset_from_json(io::read_file(a.in));
  search::PreimageOptions po;
  po.cap = ctx.config.fs_cap;
  const auto classes = search::fs_preimages(s, a.bound, po);
  emit(ctx, io::preimages_to_json(s.group(), classes), a.out);
  return classes.empty() ? kVerdictFalse : kSuccess;
}

// selftest ------------------------------------------------------------------

struct SelftestArgs {
  bool corrupt_lambda = false;
  std::vector<int> only;
};

int run_selftest(Context& ctx, const SelftestArgs& a) {
  acceptance::Options o;
  o.seed = ctx.config.seed;
  o.jobs = ctx.config.jobs;
  o.corrupt_lambda = a.corrupt_lambda;
  o.only = a.only;
  const auto results = acceptance::run(o, [&](const acceptance::CriterionResult& r) {
    if (ctx.json()) return;
    ctx.out << (r.pass ? "PASS" : "FAIL") << ' ' << std::setw(2) << r.id << ' ' << r.name << " (" << std::fixed
            << std::setprecision(2) << r.seconds << "s) " << r.detail << '\n'
            << std::defaultfloat;
  });
  bool pass = true;
  Json items = Json::array();
  for (const auto& r : results) {
    pass = pass && r.pass;
    Json item = Json::object();
    item["id"] = r.id;
    item["name"] = r.name;
    item["pass"] = r.pass;
    item["seconds"] = r.seconds;
    item["limit_seconds"] = r.limit_seconds;
    item["detail"] = r.detail;
    items.push_back(std::move(item));
  }
  if (ctx.json()) {
    Json j = Json::object();
    j["items"] = std::move(items);
    j["count"] = results.size();
    j["pass"] = pass;
    emit(ctx, j);
  }
  return pass ? kSuccess : kVerdictFalse;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Subset-sums reconstruction toolkit", "fsr");
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::string config_path;
  app.add_flag("--json", json, "Emit JSON instead of text");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized work");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", config_path, "TOML-style config file")->check(CLI::ExistingFile);

  FsArgs fs_args;
  auto* fs = app.add_subcommand("fs", "Subset-sums multiset of a multiset file");
  fs->add_option("--in", fs_args.in, "Multiset JSON")->required();
  fs->add_option("--out", fs_args.out, "Write the result here");

  Sim0Args sim0_args;
  auto* sim0 = app.add_subcommand("sim0", "Decide zero-sum sign-flip equivalence");
  sim0->add_option("--a", sim0_args.a, "First multiset JSON")->required();
  sim0->add_option("--b", sim0_args.b, "Second multiset JSON")->required();
  sim0->add_flag("--plain", sim0_args.plain, "Drop the zero-sum requirement");

  OfsArgs ofs_args;
  auto* ofs = app.add_subcommand("ofs", "Membership in the odd set covered by +-2^j");
  ofs->require_subcommand(1);
  auto* ofs_test = ofs->add_subcommand("test", "Test one odd n");
  ofs_test->add_option("n", ofs_args.n)->required();
  auto* ofs_list = ofs->add_subcommand("list", "List members up to N");
  ofs_list->add_option("N", ofs_args.limit)->required();
  ofs_list->add_flag("--complement", ofs_args.complement, "List odd non-members instead");

  CounterexampleArgs ce_args;
  auto* ce = app.add_subcommand("counterexample", "Build a pair with equal subset sums that is not ~0");
  ce->add_option("n", ce_args.n)->required();
  ce->add_option("--mode", ce_args.mode, "order or totient")->check(CLI::IsMember({"order", "totient"}));
  ce->add_option("--out", ce_args.out, "Write the pair here");

  RadonArgs radon_args;
  auto* radon = app.add_subcommand("radon", "Discrete Radon transform on (Z/n)^d");
  radon->require_subcommand(1);
  auto add_nd = [&](CLI::App* sub) {
    sub->add_option("--n", radon_args.n, "Modulus")->check(CLI::PositiveNumber);
    sub->add_option("--d", radon_args.d, "Dimension")->check(CLI::PositiveNumber);
  };
  auto* r_forward = radon->add_subcommand("forward", "Function table to Radon image");
  add_nd(r_forward);
  r_forward->add_option("--in", radon_args.in)->required();
  r_forward->add_option("--out", radon_args.out);
  auto* r_invert = radon->add_subcommand("invert", "Radon image back to a function table");
  add_nd(r_invert);
  r_invert->add_option("--in", radon_args.in)->required();
  r_invert->add_option("--out", radon_args.out);
  r_invert->add_option("--lambda", radon_args.lambda, "Inverting function JSON to use");
  auto* r_lambda = radon->add_subcommand("lambda", "Write the closed-form inverting function");
  add_nd(r_lambda);
  r_lambda->add_option("--out", radon_args.out);
  auto* r_verify = radon->add_subcommand("verify", "Check the inversion criterion for an inverting function");
  add_nd(r_verify);
  r_verify->add_option("--in", radon_args.in, "Inverting function JSON; defaults to the closed form");
  auto* r_bench = radon->add_subcommand("bench", "Time forward and invert for one (n, d)");
  add_nd(r_bench);

  CycloArgs cyclo_args;
  auto* cyclo = app.add_subcommand("cyclo", "Cyclotomic unit relation checks");
  cyclo->require_subcommand(1);
  auto* c_dist = cyclo->add_subcommand("dist", "Distribution relations for every p | n and j");
  c_dist->add_option("n", cyclo_args.n)->required()->check(CLI::PositiveNumber);
  auto* c_kernel = cyclo->add_subcommand("kernel-test", "Is the exponent vector in the kernel");
  c_kernel->add_option("n", cyclo_args.n)->required()->check(CLI::PositiveNumber);
  c_kernel->add_option("--vector", cyclo_args.vector, "Comma-separated exponents x_0..x_{n-1}")->required();
  auto* c_ranks = cyclo->add_subcommand("ranks", "Exact and numeric rank checks");
  c_ranks->add_option("n", cyclo_args.n)->required()->check(CLI::PositiveNumber);

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "Brute-force regularity scans and FS inversion");
  search->require_subcommand(1);
  auto* s_scan = search->add_subcommand("scan", "Look for pairs with equal FS that are not ~0");
  s_scan->add_option("--group", search_args.group, "Group JSON, e.g. {\"moduli\":[5]}")->required();
  s_scan->add_option("--max-size", search_args.max_size)->required();
  s_scan->add_option("--bound", search_args.bound, "Coordinate bound for Z factors");
  s_scan->add_option("--budget", search_args.budget, "Maximum multisets to examine")->check(CLI::PositiveNumber);
  s_scan->add_option("--out", search_args.out);
  auto* s_invert = search->add_subcommand("invert-fs", "All preimages of a subset-sums multiset");
  s_invert->add_option("--in", search_args.in)->required();
  s_invert->add_option("--bound", search_args.bound, "Coordinate bound for Z factors");
  s_invert->add_option("--out", search_args.out);

  std::string suite;
  auto* bench = app.add_subcommand("bench", "Timing sweeps");
  bench->add_option("suite", suite)->required()->check(CLI::IsMember({"radon", "fs", "search"}));

  SelftestArgs selftest_args;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_flag("--corrupt-lambda", selftest_args.corrupt_lambda, "Perturb the inverting functions");
  selftest->add_option("--only", selftest_args.only, "Criterion ids to run")->delimiter(',');

  std::vector<std::string> argv_store{"fsr"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  Context ctx{Config{}, out, err};
  try {
    if (!config_path.empty()) load_config_file(ctx.config, config_path);
    apply_environment(ctx.config);
    if (json) ctx.config.output = OutputMode::Json;
    if (seed_opt->count()) ctx.config.seed = seed;
    if (jobs_opt->count()) ctx.config.jobs = jobs;
    ctx.config.validate();

    if (fs->parsed()) return run_fs(ctx, fs_args);
    if (sim0->parsed()) return run_sim0(ctx, sim0_args);
    if (ofs_test->parsed()) return run_ofs_test(ctx, ofs_args);
    if (ofs_list->parsed()) return run_ofs_list(ctx, ofs_args);
    if (ce->parsed()) return run_counterexample(ctx, ce_args);
    if (r_forward->parsed()) return run_radon_forward(ctx, radon_args);
    if (r_invert->parsed()) return run_radon_invert(ctx, radon_args);
    if (r_lambda->parsed()) return run_radon_lambda(ctx, radon_args);
    if (r_verify->parsed()) return run_radon_verify(ctx, radon_args);
    if (r_bench->parsed()) return run_radon_bench(ctx, radon_args);
    if (c_dist->parsed()) return run_cyclo_dist(ctx, cyclo_args);
    if (c_kernel->parsed()) return run_cyclo_kernel(ctx, cyclo_args);
    if (c_ranks->parsed()) return run_cyclo_ranks(ctx, cyclo_args);
    if (s_scan->parsed()) return run_search_scan(ctx, search_args);
    if (s_invert->parsed()) return run_search_invert(ctx, search_args);
    if (bench->parsed()) {
      emit(ctx, bench::run(suite, ctx.config.seed, ctx.config.jobs));
      return kSuccess;
    }
    if (selftest->parsed()) return run_selftest(ctx, selftest_args);
    err << "error: no command\n";
    return kUsageError;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kResourceError;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace fsr::cli
