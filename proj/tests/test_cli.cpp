#include <gtest/gtest.h>

#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hsc/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hsc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  CliResult run(const std::string& args, const std::string& env = "") const {
    const std::string out = path("stdout.txt"), err = path("stderr.txt");
    const std::string cmd = env + " " + HSC_CLI_PATH + " " + args + " > " + out + " 2> " + err;
    const int status = std::system(cmd.c_str());
    return {WEXITSTATUS(status), read("stdout.txt"), read("stderr.txt")};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CensusCsv) {
  write("r.json", R"({"depth": 1, "values": {"A": "1", "B": "1"}})");
  const auto r = run("census --alphabet 2 --roof " + path("r.json") + " --T 20 --out " + path("n.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = read("n.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "T,N(T),log N(T)");
  EXPECT_NE(csv.find("\n3,9,"), std::string::npos);
  EXPECT_NE(csv.find("\n20,111321,"), std::string::npos);
}

TEST_F(Cli, CensusClassesAndChords) {
  write("r.json", R"({"depth": 1, "values": {"A": "1", "B": "2"}})");
  auto r = run("census --alphabet 2 --roof " + path("r.json") + " --T 2 --classes " + path("c.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto classes = hsc::Json::parse(read("c.json"));
  EXPECT_EQ(classes.size(), 3u);
  r = run("census --alphabet 2 --roof " + path("r.json") + " --grid 2,3,4 --past A --future B");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 16), "T,N(T),log N(T)\n");
}

TEST_F(Cli, EntropyTableAndDeterminism) {
  write("m.json", R"({"L": 2, "lambda": 0.2, "roofs": [1, 1]})");
  const std::string args = "entropy --model " + path("m.json") + " --T 20 --eps 0.1,0.05";
  const auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "epsilon,estimate,raw");
  const auto b = run(args + " --threads 3");
  const auto c = run(args, "HSC_THREADS=2");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST_F(Cli, WeightEquation) {
  write("r.json", R"({"depth": 1, "values": {"A": "1", "B": "2"}})");
  write("mu.json", R"({"kind": "bernoulli", "weights": [0.5, 0.5]})");
  const auto r = run("entropy --roof " + path("r.json") + " --measure " + path("mu.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = hsc::Json::parse(r.out);
  EXPECT_NEAR(j["h"].template get<double>(), std::log((1 + std::sqrt(5.0)) / 2), 1e-12);
  EXPECT_NEAR(j["abramov_entropy"].template get<double>(), std::log(2.0) / 1.5, 1e-12);
}

TEST_F(Cli, LoopsHarvestIsSeededAndDeterministic) {
  write("mu.json", R"({"kind": "bernoulli", "weights": [0.5, 0.5]})");
  write("phi.json", R"({"depth": 1, "values": {"A": "-1", "B": "-1"}})");
  const std::string args = "loops --measure " + path("mu.json") + " --potential " + path("phi.json") +
                           " --eps 0.1 --m 8 --depth 3 --seed 42";
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = hsc::Json::parse(a.out);
  EXPECT_EQ(j["k"], 128);
  EXPECT_EQ(j["certified"], true);
  EXPECT_EQ(j["concatenation"]["passed"], true);
  EXPECT_EQ(j["concatenation"]["exhaustive"], false);
}

TEST_F(Cli, ShiftReport) {
  write("g.json", R"({"alphabet_size": 3, "edges": [[0,1],[1,2],[2,0]]})");
  const auto r = run("shift --graph " + path("g.json") + " --loops 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = hsc::Json::parse(r.out);
  EXPECT_EQ(j["period"], 3);
  EXPECT_EQ(j["loop_counts"], hsc::Json::parse("[1,1,1]"));
}

TEST_F(Cli, ModelOrbitAndLinking) {
  auto r = run("model --L 2 --lambda 0.2 --roofs 1,2 --out " + path("m.json") + " --orbit ABB --orbit-out " +
               path("o.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = hsc::Json::parse(read("m.json"));
  EXPECT_EQ(j["markov_type"], true);
  EXPECT_EQ(j["orbit"]["count_D0"], 3);
  EXPECT_EQ(read("o.csv").substr(0, 8), "t,x,y,z\n");
  r = run("linking --model " + path("m.json") + " --orbits AB,AAB,ABB --out " + path("lk.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read("lk.csv").substr(0, 16), "label,AB,AAB,ABB");
}

TEST_F(Cli, UserErrorsProduceJsonAndExitOne) {
  write("bad.json", "{\n  \"depth\": 1,\n  \"values\": {\"A\": \"x\"}\n}");
  auto r = run("census --alphabet 2 --roof " + path("bad.json"));
  EXPECT_EQ(r.code, 1);
  auto e = hsc::Json::parse(r.err);
  EXPECT_EQ(e["error"]["code"], 1);
  EXPECT_EQ(e["error"]["line"], 3);
  EXPECT_EQ(e["error"]["field"], "/values/A");

  r = run("census --alphabet 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(hsc::Json::parse(r.err)["error"]["kind"], "UsageError");

  r = run("census --alphabet 2 --roof " + path("missing.json"));
  EXPECT_EQ(r.code, 1);

  write("r.json", R"({"depth": 1, "values": {"A": "1", "B": "1"}})");
  r = run("census --alphabet 2 --roof " + path("r.json") + " --grid 3,2,4");
  EXPECT_EQ(r.code, 1);
  r = run("census --alphabet 2 --roof " + path("r.json"), "HSC_THREADS=zero");
  EXPECT_EQ(r.code, 1);
  r = run("nonsense");
  EXPECT_EQ(r.code, 1);
}
