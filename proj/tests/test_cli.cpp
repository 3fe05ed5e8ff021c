#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "normtori/cli.hpp"
#include "normtori/fixtures.hpp"

using namespace normtori;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "normtori");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NORMTORI_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("normtori_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CompareFlippedIsEquivalent) {
  const auto r = run_cli({"compare", data("t0.json"), data("t0-flipped.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "EQUIVALENT\n");
}

TEST_F(Cli, CompareDistinct) {
  const auto r = run_cli({"compare", data("t0.json"), data("t2.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, "DISTINCT\n");
}

TEST_F(Cli, CompareNormalizesFirst) { EXPECT_EQ(run_cli({"compare", data("t1.json"), data("t0.json")}).code, 0); }

TEST_F(Cli, NormalizeT1) {
  const auto r = run_cli({"normalize", data("t1.json"), "-o", tmp("out.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = read_json_file(tmp("out.json"));
  EXPECT_EQ(j["total_intersections"], 2);
  EXPECT_EQ(j["trace"].size(), 1u);
  EXPECT_EQ(r.out, "slide F0 s0@p0 c0a c0b q0 {s0:2, s1:1, s2:0} -> {s0:1, s1:1, s2:0}\n");
}

TEST_F(Cli, NormalizeIsDeterministic) {
  ASSERT_EQ(run_cli({"normalize", data("t1.json"), "-o", tmp("a.json")}).code, 0);
  ASSERT_EQ(run_cli({"normalize", data("t1.json"), "-o", tmp("b.json")}).code, 0);
  EXPECT_EQ(slurp(tmp("a.json")), slurp(tmp("b.json")));
}

TEST_F(Cli, NormalizeTraceFile) {
  ASSERT_EQ(run_cli({"normalize", data("t1.json"), "-o", tmp("o.json"), "--trace", tmp("trace.txt")}).code, 0);
  EXPECT_EQ(slurp(tmp("trace.txt")).substr(0, 6), "slide ");
}

TEST_F(Cli, ValidateKlein) {
  const auto r = run_cli({"validate", data("klein.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("monodromy nontrivial"), std::string::npos);
}

TEST_F(Cli, ValidateGood) {
  EXPECT_EQ(run_cli({"validate", data("t2.json")}).code, 0);
  EXPECT_EQ(run_cli({"validate", data("theta.json")}).code, 0);
}

TEST_F(Cli, NoOutputOnValidationFailure) {
  EXPECT_EQ(run_cli({"normalize", data("klein.json"), "-o", tmp("k.json")}).code, 1);
  EXPECT_FALSE(fs::exists(tmp("k.json")));
  EXPECT_EQ(run_cli({"normalize", data("parallel-annuli.json"), "-o", tmp("p.json")}).code, 1);
  EXPECT_FALSE(fs::exists(tmp("p.json")));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"normalize", data("t1.json"), "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"compare", data("t0.json")}).code, 2);
}

TEST_F(Cli, MissingOrMalformedInput) {
  const auto r = run_cli({"validate", tmp("absent.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
  std::ofstream(tmp("bad.json")) << "{\"format\": 1, \"kind\": \"torus_position\"}";
  EXPECT_EQ(run_cli({"validate", tmp("bad.json")}).code, 1);
  std::ofstream(tmp("junk.json")) << "{";
  EXPECT_EQ(run_cli({"validate", tmp("junk.json")}).code, 1);
}

TEST_F(Cli, AxisWord) {
  EXPECT_EQ(run_cli({"axis-word", data("t0.json")}).out, "x1\n");
  EXPECT_EQ(run_cli({"axis-word", data("t2.json")}).out, "x1\n");
  EXPECT_EQ(run_cli({"axis-word", data("t1.json")}).code, 1);
}

TEST_F(Cli, Decorate) {
  const auto r = run_cli({"decorate", data("t2.json"), "-o", tmp("d.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = read_json_file(tmp("d.json"));
  EXPECT_EQ(j["kind"], "decorated_graph");
  EXPECT_EQ(j["bounds_solid_torus"], false);
  EXPECT_EQ(decorated_from_json(j), decorate(to_normal_torus(fixtures::t2())));
}

TEST_F(Cli, GraphRoundTrips) {
  ASSERT_EQ(run_cli({"graph", "--rank", "3", "--seed", "5", "-o", tmp("g.json")}).code, 0);
  EXPECT_EQ(graph_from_json(read_json_file(tmp("g.json"))), random_cubic(3, 5));
  EXPECT_EQ(run_cli({"graph", "--rank", "1"}).code, 2);
}

TEST_F(Cli, ExportDot) {
  const auto r = run_cli({"export-dot", data("t2.json"), "--decorated"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 15), "graph decorated");
}

TEST_F(Cli, OracleCommands) {
  const auto f = run_cli({"fuzz", "--trials", "20", "--seed", "3", "-o", tmp("f.json")});
  EXPECT_EQ(f.code, 0) << f.out;
  EXPECT_EQ(read_json_file(tmp("f.json"))["trial_count"], 20);
  EXPECT_EQ(run_cli({"confluence", "--trials", "10", "--depth", "64"}).code, 0);
  EXPECT_EQ(run_cli({"confluence", data("t1.json")}).code, 0);
  EXPECT_EQ(run_cli({"minimality", data("t0.json"), "--trials", "30"}).code, 0);
  EXPECT_EQ(run_cli({"minimality", "--trials", "5", "--tori", "2", "--rank", "2", "3"}).code, 0);
}
