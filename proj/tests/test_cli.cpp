#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct RunResult {
  int code;
  std::string out, err;
  nlohmann::json report() const { return nlohmann::json::parse(out); }
};

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "octanorm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = octanorm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ReportSchema) {
  const auto r = run({"norm", "eval", "--norm", "ab:0.5,0", "--point", "0.875,1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["schema"], "report_v1");
  EXPECT_EQ(j["command"], "norm eval");
  EXPECT_EQ(j["inputs"]["norm"], "ab:0.5,0");
  EXPECT_EQ(j["results"]["value"].get<double>(), 1.625);
  EXPECT_EQ(j["provenance"]["version"], "0.1.0");
  EXPECT_EQ(j["provenance"]["seed"], 0);
  EXPECT_TRUE(j["provenance"]["tolerances"].contains("sphere"));
  EXPECT_FALSE(j.contains("timing"));
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, TimingIsOptIn) {
  const auto r = run({"norm", "gamma", "--norm", "lp:2", "--timing"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.report().contains("timing"));
}

TEST(Cli, Verdicts) {
  const auto oh = run({"check", "pos-oh", "--norm", "lp:1"}).report();
  EXPECT_EQ(oh["results"]["verdict"], true);
  EXPECT_EQ(oh["results"]["witness"], nlohmann::json::array({1.0, 0.0}));
  const auto sd = run({"check", "pos-sd2p", "--norm", "lp:2"}).report();
  EXPECT_EQ(sd["results"]["verdict"], false);
  const auto du = run({"check", "duality", "--norm", "ab:0.3,0.6"});
  EXPECT_EQ(du.code, 0);
  EXPECT_EQ(du.report()["results"]["ok"], true);
}

TEST(Cli, WindowGap) {
  const auto r = run({"window", "compute", "--a", "0.5", "--b", "0", "--lambda", "0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["results"]["gap"].get<double>(), 0.125);
}

TEST(Cli, RoughSearchAndWitness) {
  const auto s = run({"rough", "search", "--space", "leaf:1", "--points", R"([[{"0": 1}], [{"1": -1}]])", "--budget",
                      "10"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.report()["results"]["lower"].get<double>(), 2.0);
  const auto w = run({"rough", "witness", "--space", "leaf:1", "--points", R"([[{"0": 1}], [{"1": 1}]])",
                      "--direction", R"([{"0": 1}])"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(w.report()["results"]["value"].get<double>(), 1.0);
}

TEST(Cli, InputErrorsExitTwoWithoutReport) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"norm", "eval", "--norm", "lp:x", "--point", "1,1"},
           {"norm", "eval", "--norm", "lp:0.5", "--point", "1,1"},
           {"norm", "eval", "--norm", "lp:2"},
           {"rough", "search", "--space", "leaf:1", "--points", "[[{\"0\": 2}]]"},
           {"rough", "search", "--space", "leaf:1", "--points", "not json"},
           {"window", "compute", "--a", "0", "--b", "0"},
           {"bogus"},
           {"norm", "eval", "--unknown-flag"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << args[0];
    EXPECT_TRUE(r.out.empty()) << r.out;
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, ParseErrorNamesThePosition) {
  const auto r = run({"check", "pos-oh", "--norm", "lp:x"});
  EXPECT_NE(r.err.find("position 3"), std::string::npos) << r.err;
}

TEST(Cli, FailingVerificationExitsOne) {
  const auto d = run({"slices", "deville", "--norm", "lp:1", "--grid", "16", "--budget", "4", "--tol", "-1"});
  EXPECT_EQ(d.code, 1);
  EXPECT_EQ(d.report()["results"]["passed"], false);
}

TEST(Cli, IdenticalSeedsGiveIdenticalBytes) {
  const std::vector<std::string> args{"rough", "search", "--space", "sum(lp:3; leaf:1; leaf:2)", "--points",
                                      R"([[{"0": 1}, {}], [{}, {"0": -1}]])", "--seed", "7", "--budget", "40"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.report()["provenance"]["seed"], 7);
}

TEST(Cli, JsonAndCsvFiles) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto json_path = (dir / "octanorm_cli_test.json").string();
  const auto csv_path = (dir / "octanorm_cli_test.csv").string();
  const auto r = run({"slices", "min-diameter", "--norm", "lp:inf", "--k", "2", "--grid", "8", "--alpha", "0.1",
                      "--json", json_path, "--csv", csv_path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream jf(json_path);
  const std::string saved((std::istreambuf_iterator<char>(jf)), std::istreambuf_iterator<char>());
  EXPECT_EQ(saved, r.out);
  std::ifstream cf(csv_path);
  std::string line;
  std::size_t rows = 0;
  std::getline(cf, line);
  EXPECT_EQ(line, "functionals,alpha,lambda,diameter");
  while (std::getline(cf, line)) ++rows;
  EXPECT_EQ(rows, 44u);
  EXPECT_EQ(r.report()["results"]["combos"], 44);
  std::filesystem::remove(json_path);
  std::filesystem::remove(csv_path);
}
