#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ptts/json_io.hpp"

namespace fs = std::filesystem;
using ptts::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args, const ptts::SolverHooks& hooks = {}) {
  std::ostringstream out, err;
  const int code = run(args, out, err, hooks);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ptts_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void simulate(const std::string& sub) {
    ASSERT_EQ(call({"simulate", "--addresses", "10", "--transactions", "30", "--supply", "1000000", "--seed", "7",
                    "--leakage", "0.5", "--out", path(sub)})
                  .code,
              0);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SimulateIsByteIdenticalOnRerun) {
  simulate("a");
  simulate("b");
  for (const char* f : {"scenario.json", "transcript.json", "view.json"}) {
    ASSERT_TRUE(fs::exists(dir_ / "a" / f)) << f;
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(Cli, SimulateRejectsSingleAddress) {
  EXPECT_EQ(call({"simulate", "--addresses", "1", "--out", path("x")}).code, 2);
  EXPECT_EQ(call({"simulate", "--bogus"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
}

TEST_F(Cli, FullLeakageAttackIsExact) {
  simulate("s");
  const Result r = call({"attack", "--scenario", path("s/scenario.json"), "--leakage", "1.0", "--target", "3", "--seed",
                         "1", "--out", path("report.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "target,min,max,goodness");
  EXPECT_NE(r.out.find(",1.00\n"), std::string::npos);
  const std::string report = slurp(dir_ / "report.json");
  EXPECT_NE(report.find("\"in_range\": true"), std::string::npos);
  EXPECT_NE(report.find("\"contiguous\": true"), std::string::npos);
}

TEST_F(Cli, InactiveTargetIsZero) {
  ASSERT_EQ(call({"simulate", "--addresses", "40", "--transactions", "5", "--seed", "3", "--out", path("s")}).code, 0);
  const ptts::Scenario s = ptts::scenario_from_json(slurp(dir_ / "s/scenario.json"));
  std::vector<bool> active(s.n_addresses, false);
  active[s.deployer] = true;
  for (const auto& t : s.transfers) active[t.from] = active[t.to] = true;
  const auto it = std::find(active.begin(), active.end(), false);
  ASSERT_NE(it, active.end());
  const std::string a = std::to_string(it - active.begin());
  const Result r = call({"attack", "--scenario", path("s/scenario.json"), "--leakage", "0.0", "--target", a});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n" + a + ",0,0,1.00\n"), std::string::npos) << r.out;
}

TEST_F(Cli, AttackUsageErrors) {
  simulate("s");
  EXPECT_EQ(call({"attack", "--scenario", path("s/scenario.json"), "--leakage", "1", "--target", "99999"}).code, 2);
  EXPECT_EQ(call({"attack", "--scenario", path("missing.json"), "--leakage", "1", "--target", "0"}).code, 2);
  EXPECT_EQ(call({"attack", "--scenario", path("s/scenario.json"), "--target", "0"}).code, 2);
  EXPECT_EQ(call({"attack", "--scenario", path("s/scenario.json"), "--leakage", "1.5", "--target", "0"}).code, 2);
}

TEST_F(Cli, AttackFromViewMatchesScenarioMode) {
  simulate("s");
  const Result from_view = call({"attack", "--view", path("s/view.json"), "--target", "2"});
  ASSERT_EQ(from_view.code, 0) << from_view.err;
  const Result from_scenario =
      call({"attack", "--scenario", path("s/scenario.json"), "--leakage", "0.5", "--seed", "7", "--target", "2"});
  EXPECT_EQ(from_view.out, from_scenario.out);
}

TEST_F(Cli, InconsistentLeakIsRuntimeFailure) {
  std::ofstream(path("bad.json")) << R"({"n_addresses":2,"total_supply":10,"deployer":0,"mint_known":true,)"
                                     R"("transfers":[{"index":0,"from":1,"to":0,"amount":4}]})";
  const Result r = call({"attack", "--view", path("bad.json"), "--target", "0"});
  EXPECT_EQ(r.code, 1) << r.err;
}

TEST_F(Cli, SweepLeakageColumnIsMonotone) {
  const Result r = call({"sweep", "--addresses", "30", "--transactions", "30", "--leakage", "0.2,0.4,0.6,0.8,1.0",
                         "--runs", "5", "--seed", "3", "--jobs", "2", "--out", path("sweep.csv"), "--detail",
                         path("detail.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(dir_ / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "n_addresses,n_transactions,leakage_ratio,runs,avg_goodness,avg_solve_time_s");
  double prev = -1;
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 6u);
    const double g = std::stod(cells[4]);
    EXPECT_GE(g, prev);
    prev = g;
    if (cells[2] == "1") EXPECT_EQ(cells[4], "1.00");
  }
  EXPECT_EQ(rows, 5);
  const std::string detail = slurp(dir_ / "detail.csv");
  EXPECT_EQ(std::count(detail.begin(), detail.end(), '\n'), 1 + 25);
}

TEST_F(Cli, SweepIsStableAcrossReruns) {
  const std::vector<std::string> base = {"sweep", "--addresses", "20", "--transactions", "20", "--leakage", "0.5",
                                         "--runs", "20", "--no-contiguity"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a.csv"), "--detail", path("ad.csv")});
  b.insert(b.end(), {"--out", path("b.csv"), "--detail", path("bd.csv"), "--jobs", "3"});
  ASSERT_EQ(call(a).code, 0);
  ASSERT_EQ(call(b).code, 0);
  // Timing columns differ run to run; compare everything else.
  auto strip = [](const std::string& text) {
    std::string outp;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) outp += line.substr(0, line.rfind(',')) + "\n";
    return outp;
  };
  EXPECT_EQ(strip(slurp(dir_ / "a.csv")), strip(slurp(dir_ / "b.csv")));
  EXPECT_EQ(strip(slurp(dir_ / "ad.csv")), strip(slurp(dir_ / "bd.csv")));
  std::istringstream rows(slurp(dir_ / "a.csv"));
  std::string line;
  int n = 0;
  while (std::getline(rows, line)) ++n;
  EXPECT_EQ(n, 2);
}

TEST_F(Cli, SweepUnwritableOutputFails) {
  EXPECT_EQ(call({"sweep", "--addresses", "5", "--transactions", "5", "--leakage", "0.5", "--runs", "1", "--out",
                  path("no/such/dir/out.csv")})
                .code,
            1);
  EXPECT_EQ(call({"sweep", "--addresses", "5", "--transactions", "5", "--leakage", "0.5", "--runs", "0"}).code, 2);
}

TEST_F(Cli, OracleCheck) {
  const Result ok = call({"oracle-check"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("instances=50"), std::string::npos);
  EXPECT_EQ(call({"oracle-check", "--instances", "0"}).code, 2);

  ptts::SolverHooks broken;
  broken.solve = [](const ptts::FlowNetwork& n) {
    auto s = ptts::solve_min_cost_flow(n);
    if (s) s->objective -= 1;
    return s;
  };
  const Result bad = call({"oracle-check", "--instances", "10"}, broken);
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("p min"), std::string::npos);
}

TEST_F(Cli, SeedFallsBackToEnvironment) {
  ::setenv("PTTS_SEED", "7", 1);
  const Result env = call({"simulate", "--addresses", "10", "--transactions", "30", "--out", path("e")});
  ::unsetenv("PTTS_SEED");
  ASSERT_EQ(env.code, 0);
  simulate("f");
  EXPECT_EQ(slurp(dir_ / "e/scenario.json"), slurp(dir_ / "f/scenario.json"));
  ::setenv("PTTS_SEED", "abc", 1);
  EXPECT_EQ(call({"simulate", "--out", path("g")}).code, 2);
  ::unsetenv("PTTS_SEED");
}
