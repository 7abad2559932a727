#include "cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

namespace dfsqec::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents = {}) {
  const auto path = std::filesystem::path(::testing::TempDir()) / name;
  if (!contents.empty()) std::ofstream(path) << contents;
  return path;
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"sweep"}, {"analytic"}, {"sweep", "--out", "-", "--threads", "0"}}) {
    const Outcome o = invoke(args);
    EXPECT_EQ(o.code, 2);
    EXPECT_EQ(o.err.rfind("error: ", 0), 0u) << o.err;
  }
}

TEST(Cli, HelpExitsZero) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("sweep"), std::string::npos);
}

TEST(Cli, ConfigurationErrorsAreOneLine) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sweep", "--out", "-", "--purity", "2"},
           {"sweep", "--out", "-", "--scenario", "steane"},
           {"sweep", "--out", "-", "--kappa0", "3:1:1"},
           {"sweep", "--out", "-", "--inputs", "xq"},
           {"sweep", "--out", "-", "--config", "/nonexistent.json"},
           {"analytic", "--curve", "qec-magic"}}) {
    const Outcome o = invoke(args);
    EXPECT_EQ(o.code, 2) << args[2];
    EXPECT_EQ(o.err.rfind("error: ", 0), 0u);
    EXPECT_EQ(o.err.find('\n'), o.err.size() - 1);
    EXPECT_TRUE(o.out.empty());
  }
}

TEST(Cli, AnalyticCurve) {
  const Outcome o = invoke({"analytic", "--curve", "qec-independent", "--kappa0", "0,2"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "kappa0,Fe\n0,1\n2,0.982147429458\n");
  const Outcome strong = invoke({"analytic", "--curve", "qec-strong", "--kappa0", "2"});
  EXPECT_EQ(strong.out, "kappa0,Fe\n2,0.924168549201\n");
}

TEST(Cli, SweepToStdout) {
  const Outcome o = invoke({"sweep", "--scenario", "no-qec", "--kappa0", "0:1:0.5", "--out", "-"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.rfind("scenario,kind,case,kappa0", 0), 0u);
  EXPECT_EQ(std::count(o.out.begin(), o.out.end(), '\n'), 4);
}

TEST(Cli, SweepFromConfigWithOverride) {
  const auto config = temp_file("cli_config.json", R"({"scenario": "dfs_qec", "sweep": [0, 1]})");
  const Outcome o = invoke({"sweep", "--config", config.string(), "--case", "b", "--out", "-"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("\ndfs_qec,sinc,b,1,"), std::string::npos);
  std::filesystem::remove(config);
}

TEST(Cli, SweepFileThenChart) {
  const auto csv = temp_file("cli_sweep.csv");
  const auto svg = temp_file("cli_chart.svg");
  ASSERT_EQ(invoke({"sweep", "--kappa0", "0:2:1", "--out", csv.string()}).code, 0);
  const Outcome o = invoke({"chart", "--in", csv.string(), "--out", svg.string(), "--polarization"});
  EXPECT_EQ(o.code, 0) << o.err;
  std::ifstream is(svg);
  const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_NE(text.find("marker-p"), std::string::npos);
  std::filesystem::remove(csv);
  std::filesystem::remove(svg);
}

TEST(Cli, NoiseStrength) {
  const auto spec = temp_file("cli_spec.json", R"({"kappa0": 0.4, "collective": false})");
  const Outcome o = invoke({"noise-strength", "--spec", spec.string()});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out,
            "generator,partial_strength\nL1,0.4\nL2,0.4\nL3,0.4\nlambda,1.2\nlambda_qubit3,0.4\n");
  std::filesystem::remove(spec);
}

TEST(Cli, Check) {
  const Outcome o = invoke({"check"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("all checks passed"), std::string::npos);
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(Cli, CircuitListing) {
  const Outcome o = invoke({"circuit", "--scenario", "no_qec", "--at", "1.5"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "NOISE L1 κ=1.5\nNOISE L2 κ=1.5\nNOISE L3 κ=1.5\n");
}

TEST(Cli, Hump) {
  const Outcome o = invoke({"hump"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("ancilla_purity,0.5\n"), std::string::npos);
  EXPECT_NE(o.out.find("fe_at_zero,0.9375\n"), std::string::npos);
  EXPECT_NE(o.out.find("hump,true\n"), std::string::npos);
}

}  // namespace
}  // namespace dfsqec::cli
