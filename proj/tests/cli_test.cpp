#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fsr/cli.hpp"
#include "fsr/config.hpp"
#include "fsr/error.hpp"
#include "fsr/io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using fsr::io::Json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fsr::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fsr_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const Json& j) const {
    fsr::io::write_file(path(name), j);
    return path(name);
  }
  std::string write_text(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

Json strip_timing(Json j) {
  if (j.is_object()) {
    Json out = Json::object();
    for (auto& [k, v] : j.items()) {
      if (k == "seconds" || (k.size() > 8 && k.substr(k.size() - 8) == "_seconds")) continue;
      out[k] = strip_timing(v);
    }
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (auto& v : j) out.push_back(strip_timing(v));
    return out;
  }
  return j;
}

fsr::Multiset z2(std::initializer_list<std::int64_t> xs) { return fsr::Multiset::of(fsr::GroupSpec::cyclic(2), xs); }

}  // namespace

TEST_F(CliTest, FsOfZeroOneOverZ2) {
  const auto in = write("a.json", fsr::io::to_json(z2({0, 1})));
  auto r = run({"fs", "--in", in, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fsr::io::multiset_from_json(fsr::io::parse(r.out)), z2({0, 0, 1, 1}));

  r = run({"fs", "--in", in, "--out", path("fs.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(fsr::io::multiset_from_json(fsr::io::read_file(path("fs.json"))), z2({0, 0, 1, 1}));
}

TEST_F(CliTest, ExitCodeMatrix) {
  const auto a = write("a.json", fsr::io::to_json(z2({0, 1})));
  const auto b = write("b.json", fsr::io::to_json(z2({1, 1})));
  const auto one = write("one.json", fsr::io::to_json(fsr::Multiset::of(fsr::GroupSpec::cyclic(5), {1})));
  const auto four = write("four.json", fsr::io::to_json(fsr::Multiset::of(fsr::GroupSpec::cyclic(5), {4})));
  const auto bad = write_text("bad.json", "{\"group\":{\"moduli\":[2]},\"elements\":[[[5],1]]}");
  const auto garbage = write_text("garbage.json", "{not json");

  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases{
      {{"ofs", "test", "17"}, 1},
      {{"ofs", "test", "15"}, 0},
      {{"ofs", "test", "16"}, 2},
      {{"ofs", "test", "-3"}, 2},
      {{"ofs", "list", "55"}, 0},
      {{"radon", "verify", "--n", "3", "--d", "2"}, 0},
      {{"radon", "verify", "--n", "4", "--d", "3"}, 0},
      {{"radon", "verify"}, 2},
      {{"sim0", "--a", a, "--b", b}, 1},
      {{"sim0", "--a", a, "--b", a}, 0},
      {{"sim0", "--plain", "--a", one, "--b", four}, 0},
      {{"sim0", "--a", one, "--b", four}, 1},
      {{"sim0", "--a", a, "--b", one}, 2},
      {{"fs", "--in", bad}, 2},
      {{"fs", "--in", garbage}, 2},
      {{"fs", "--in", path("missing.json")}, 2},
      {{"counterexample", "2"}, 0},
      {{"counterexample", "17"}, 0},
      {{"counterexample", "19"}, 2},
      {{"counterexample", "41", "--mode", "totient"}, 3},
      {{"counterexample", "17", "--mode", "sideways"}, 2},
      {{"cyclo", "kernel-test", "3", "--vector", "0,0,0"}, 0},
      {{"cyclo", "kernel-test", "3", "--vector", "0,1,-1"}, 1},
      {{"cyclo", "kernel-test", "3", "--vector", "0,1"}, 2},
      {{"cyclo", "kernel-test", "3", "--vector", "0,x,1"}, 2},
      {{"cyclo", "dist", "45"}, 0},
      {{"cyclo", "ranks", "15"}, 0},
      {{"cyclo", "ranks", "17"}, 0},
      {{"cyclo", "ranks", "47"}, 3},
      {{"search", "scan", "--group", "{\"moduli\":[5]}", "--max-size", "3"}, 0},
      {{"search", "scan", "--group", "{\"moduli\":[2]}", "--max-size", "2"}, 1},
      {{"search", "scan", "--group", "{\"moduli\":[5]}", "--max-size", "4", "--budget", "10"}, 3},
      {{"search", "scan", "--group", "{\"moduli\":[3,0]}", "--max-size", "2", "--bound", "2"}, 0},
      {{"search", "scan", "--group", "{\"moduli\":[5]}", "--max-size", "30"}, 3},
      {{"search", "scan", "--group", "[5]", "--max-size", "2"}, 2},
      {{"bench", "nothing"}, 2},
      {{"bogus"}, 2},
      {{}, 2},
      {{"radon"}, 2},
      {{"--jobs", "0", "ofs", "test", "3"}, 2},
      {{"--help"}, 0},
  };
  for (const auto& c : cases) {
    const auto r = run(c.args);
    std::string line;
    for (const auto& s : c.args) line += s + " ";
    EXPECT_EQ(r.code, c.code) << line << "\nstdout: " << r.out << "\nstderr: " << r.err;
  }
}

TEST_F(CliTest, OfsTextAndJson) {
  auto r = run({"ofs", "test", "17"});
  EXPECT_NE(r.out.find("not member"), std::string::npos);
  r = run({"--json", "ofs", "test", "17"});
  const auto v = fsr::io::verdict_from_json(fsr::io::parse(r.out));
  EXPECT_FALSE(v.member);
  EXPECT_EQ(v.ord2, 8u);
  EXPECT_EQ(fsr::io::to_json(v).dump() + "\n", r.out);

  r = run({"ofs", "list", "105", "--complement"});
  EXPECT_EQ(r.out, "17\n31\n33\n41\n43\n51\n57\n63\n65\n73\n85\n89\n91\n93\n97\n99\n105\n");
  r = run({"ofs", "list", "55", "--json"});
  EXPECT_EQ(fsr::io::parse(r.out)["values"],
            Json::parse("[1,3,5,7,9,11,13,15,19,21,23,25,27,29,35,37,39,45,47,49,53,55]"));
}

TEST_F(CliTest, RadonFileRoundTrip) {
  std::mt19937_64 rng(3);
  fsr::radon::FunctionTable f(6, 2);
  for (auto& v : f.values()) {
    v = mpq_class(static_cast<long>(rng() % 41) - 20, static_cast<unsigned long>(rng() % 9 + 1));
    v.canonicalize();
  }
  const auto in = write("f.json", fsr::io::to_json(f));
  ASSERT_EQ(run({"radon", "forward", "--in", in, "--out", path("rf.json")}).code, 0);
  const auto rf = fsr::io::radon_image_from_json(fsr::io::read_file(path("rf.json")));
  EXPECT_EQ(rf, fsr::radon::forward(f));

  ASSERT_EQ(run({"radon", "invert", "--n", "6", "--d", "2", "--in", path("rf.json"), "--out", path("g.json")}).code, 0);
  EXPECT_EQ(fsr::io::function_table_from_json(fsr::io::read_file(path("g.json"))), f);

  ASSERT_EQ(run({"radon", "lambda", "--n", "6", "--d", "2", "--out", path("l.json")}).code, 0);
  ASSERT_EQ(run({"radon", "invert", "--in", path("rf.json"), "--lambda", path("l.json"), "--out", path("h.json")}).code, 0);
  EXPECT_EQ(fsr::io::function_table_from_json(fsr::io::read_file(path("h.json"))), f);
  EXPECT_EQ(run({"radon", "verify", "--in", path("l.json")}).code, 0);

  // Shape flags that contradict the file are rejected.
  EXPECT_EQ(run({"radon", "forward", "--n", "5", "--in", in}).code, 2);

  // A perturbed weight table no longer satisfies the criterion.
  auto lambda = fsr::radon::inverting_function(6, 2);
  lambda.weights()[7] += 1;
  EXPECT_EQ(run({"radon", "verify", "--in", write("bad_l.json", fsr::io::to_json(lambda))}).code, 1);
}

TEST_F(CliTest, JsonOutputsRoundTripThroughReaders) {
  const auto a = write("a.json", fsr::io::to_json(z2({0, 1})));
  const auto b = write("b.json", fsr::io::to_json(z2({1, 1})));

  auto r = run({"--json", "sim0", "--a", a, "--b", a});
  auto j = fsr::io::parse(r.out);
  auto sim = fsr::io::sim0_result_from_json(j, fsr::GroupSpec::cyclic(2));
  EXPECT_TRUE(sim.equivalent);
  EXPECT_EQ(fsr::io::to_json(sim, false), j);

  r = run({"counterexample", "33", "--out", path("pair.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  j = fsr::io::read_file(path("pair.json"));
  const auto pair = fsr::io::counterexample_from_json(j);
  EXPECT_EQ(pair.n, 33u);
  EXPECT_TRUE(fsr::counterexample::verify(pair));
  EXPECT_EQ(fsr::io::to_json(pair, fsr::counterexample::ExponentMode::Order), j);

  r = run({"search", "scan", "--group", "{\"moduli\":[2]}", "--max-size", "3"});
  j = fsr::io::parse(r.out);
  const auto scan = fsr::io::scan_report_from_json(j);
  EXPECT_FALSE(scan.violations.empty());
  EXPECT_EQ(scan.first_violation_size, 2u);
  EXPECT_EQ(fsr::io::to_json(scan), j);

  const auto s = write("s.json", fsr::io::to_json(fsr::Multiset::of(fsr::GroupSpec::cyclic(5), {0, 1, 2, 3})));
  r = run({"search", "invert-fs", "--in", s});
  ASSERT_EQ(r.code, 0) << r.err;
  j = fsr::io::parse(r.out);
  const auto classes = fsr::io::preimages_from_json(j);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(fsr::io::preimages_to_json(fsr::GroupSpec::cyclic(5), classes), j);

  r = run({"cyclo", "ranks", "9"});
  j = fsr::io::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_EQ(fsr::io::parse(j.dump()), j);
}

TEST_F(CliTest, InvertFsWithoutPreimage) {
  // |S| = 4 but FS always contains 0 with positive multiplicity.
  const auto s = write("s.json", fsr::io::to_json(fsr::Multiset::of(fsr::GroupSpec::cyclic(5), {1, 1, 2, 2})));
  EXPECT_EQ(run({"search", "invert-fs", "--in", s}).code, 1);
  const auto odd = write("odd.json", fsr::io::to_json(fsr::Multiset::of(fsr::GroupSpec::cyclic(5), {0, 1, 2})));
  EXPECT_EQ(run({"search", "invert-fs", "--in", odd}).code, 2);
}

TEST_F(CliTest, BenchIsDeterministicApartFromTiming) {
  for (const std::string suite : {"radon", "fs", "search"}) {
    const auto first = run({"bench", suite, "--seed", "11"});
    const auto second = run({"bench", suite, "--seed", "11"});
    ASSERT_EQ(first.code, 0) << first.err;
    const auto j = fsr::io::parse(first.out);
    EXPECT_EQ(strip_timing(j), strip_timing(fsr::io::parse(second.out))) << suite;
    EXPECT_EQ(j["suite"], suite);
  }
  const auto radon = fsr::io::parse(run({"bench", "radon"}).out);
  ASSERT_EQ(radon["rows"].size(), 4u);
  for (const auto& row : radon["rows"]) EXPECT_TRUE(row["round_trip"].get<bool>());
  const auto fs_rows = fsr::io::parse(run({"bench", "fs"}).out)["rows"];
  std::vector<std::size_t> sizes;
  for (const auto& row : fs_rows) sizes.push_back(row["size"].get<std::size_t>());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{8, 12, 16, 20}));
  EXPECT_EQ(fs_rows[3]["total_multiplicity"], "1048576");

  const auto row = fsr::io::parse(run({"radon", "bench", "--n", "5", "--d", "2"}).out);
  EXPECT_EQ(row["image_entries"], 125);
}

TEST_F(CliTest, SelftestSubsetAndNegativeControl) {
  auto r = run({"--json", "selftest", "--only", "1,3,4,8"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = fsr::io::parse(r.out);
  EXPECT_EQ(j["count"], 4);
  EXPECT_TRUE(j["pass"].get<bool>());

  r = run({"--json", "selftest", "--corrupt-lambda", "--only", "6,7,8"});
  EXPECT_EQ(r.code, 1);
  j = fsr::io::parse(r.out);
  ASSERT_EQ(j["items"].size(), 3u);
  EXPECT_FALSE(j["items"][0]["pass"].get<bool>());
  EXPECT_FALSE(j["items"][1]["pass"].get<bool>());
  EXPECT_TRUE(j["items"][2]["pass"].get<bool>());

  r = run({"selftest", "--only", "3"});
  EXPECT_EQ(r.out.rfind("PASS  3 wieferich case", 0), 0u) << r.out;
}

TEST_F(CliTest, ConfigFileAndFlags) {
  const auto good = write_text("good.toml", "# caps\n[limits]\nfs_cap = 4\njobs = 2\noutput = \"json\"\n");
  const auto a = write("a.json", fsr::io::to_json(fsr::Multiset::of(fsr::GroupSpec::cyclic(3), {0, 1, 1, 2, 2})));
  // fs_cap = 4 rejects a five-element input.
  EXPECT_EQ(run({"--config", good, "fs", "--in", a}).code, 3);
  EXPECT_EQ(run({"fs", "--in", a}).code, 0);
  // output = json from the file.
  const auto r = run({"--config", good, "ofs", "test", "9"});
  EXPECT_TRUE(fsr::io::parse(r.out)["member"].get<bool>());

  EXPECT_EQ(run({"--config", write_text("bad.toml", "tolerance = 2\n"), "ofs", "test", "9"}).code, 2);
  EXPECT_EQ(run({"--config", write_text("unk.toml", "colour = 3\n"), "ofs", "test", "9"}).code, 2);
  EXPECT_EQ(run({"--config", write_text("prec.toml", "precision_bits = 4000\n"), "ofs", "test", "9"}).code, 2);
  EXPECT_EQ(run({"--config", path("nope.toml"), "ofs", "test", "9"}).code, 2);
}

TEST(Config, Precedence) {
  fsr::Config c;
  fsr::apply_config_text(c, "jobs = 3\nseed = 9\ntolerance = 1e-6\n");
  EXPECT_EQ(c.jobs, 3u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_DOUBLE_EQ(c.tolerance, 1e-6);
  ::setenv("FS_RECON_JOBS", "5", 1);
  fsr::apply_environment(c);
  ::unsetenv("FS_RECON_JOBS");
  EXPECT_EQ(c.jobs, 5u);
  EXPECT_NO_THROW(c.validate());

  fsr::Config zero;
  zero.fs_cap = 0;
  EXPECT_THROW(zero.validate(), fsr::StructuralError);
  EXPECT_THROW(fsr::apply_config_text(zero, "jobs = many"), fsr::StructuralError);
  EXPECT_THROW(fsr::apply_config_text(zero, "just words"), fsr::StructuralError);
}

TEST(Io, RationalStrings) {
  EXPECT_EQ(fsr::io::rational_to_string(mpq_class(-6, 4)), "-3/2");
  EXPECT_EQ(fsr::io::rational_to_string(mpq_class(5)), "5/1");
  EXPECT_EQ(fsr::io::rational_from_string("4/-8"), mpq_class(-1, 2));
  EXPECT_EQ(fsr::io::rational_from_string("7"), mpq_class(7));
  EXPECT_THROW(fsr::io::rational_from_string("1/0"), fsr::StructuralError);
  EXPECT_THROW(fsr::io::rational_from_string("x/2"), fsr::StructuralError);
}

TEST(Io, MultisetFormatIsSortedAndExact) {
  const auto g = fsr::GroupSpec({3, 0});
  fsr::Multiset a(g);
  a.insert(fsr::GroupElement{2, -1});
  a.insert(fsr::GroupElement{0, 4}, mpz_class("123456789012345678901234567890"));
  a.insert(fsr::GroupElement{0, -2}, 3);
  const auto j = fsr::io::to_json(a);
  EXPECT_EQ(j.dump(),
            "{\"group\":{\"moduli\":[3,0]},\"elements\":[[[0,-2],3],[[0,4],\"123456789012345678901234567890\"],"
            "[[2,-1],1]]}");
  EXPECT_EQ(fsr::io::multiset_from_json(j), a);
  EXPECT_THROW(fsr::io::multiset_from_json(Json::parse("{\"elements\":[]}")), fsr::StructuralError);
  EXPECT_THROW(fsr::io::multiset_from_json(Json::parse("{\"group\":{\"moduli\":[3]},\"elements\":[[[1],-1]]}")),
               fsr::StructuralError);
}

TEST(IoProperty, RandomMultisetsRoundTrip) {
  std::mt19937_64 rng(41);
  const std::vector<fsr::GroupSpec> groups{fsr::GroupSpec::cyclic(7), fsr::GroupSpec({2, 4}), fsr::GroupSpec({0}),
                                           fsr::GroupSpec({5, 0, 3})};
  for (int t = 0; t < 200; ++t) {
    const auto& g = groups[static_cast<std::size_t>(t) % groups.size()];
    const auto a = fsr::testing::random_multiset(g, rng() % 9, rng);
    const auto fs = fsr::subset_sums(a);
    for (const auto& m : {a, fs}) {
      const auto j = fsr::io::to_json(m);
      EXPECT_EQ(fsr::io::multiset_from_json(j), m);
      EXPECT_EQ(fsr::io::to_json(fsr::io::multiset_from_json(fsr::io::parse(j.dump()))), j);
    }
  }
}

TEST(IoProperty, RadonTablesRoundTrip) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    const std::uint64_t n = 2 + rng() % 5;
    const std::size_t d = 1 + rng() % 2;
    fsr::radon::FunctionTable f(n, d);
    for (auto& v : f.values()) {
      v = mpq_class(static_cast<long>(rng() % 201) - 100, static_cast<unsigned long>(rng() % 12 + 1));
      v.canonicalize();
    }
    const auto rf = fsr::radon::forward(f);
    const auto lambda = fsr::radon::inverting_function(n, d);
    EXPECT_EQ(fsr::io::function_table_from_json(fsr::io::parse(fsr::io::to_json(f).dump())), f);
    EXPECT_EQ(fsr::io::radon_image_from_json(fsr::io::parse(fsr::io::to_json(rf).dump())), rf);
    EXPECT_EQ(fsr::io::inverting_function_from_json(fsr::io::parse(fsr::io::to_json(lambda).dump())), lambda);
  }
  EXPECT_THROW(fsr::io::radon_image_from_json(Json::parse("{\"n\":2,\"d\":1,\"entries\":[[[0],2,\"1/1\"]]}")),
               fsr::StructuralError);
  EXPECT_THROW(fsr::io::function_table_from_json(
                   Json::parse("{\"n\":2,\"d\":1,\"values\":[[[0],\"1/1\"],[[0],\"2/1\"]]}")),
               fsr::StructuralError);
}
