#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "kreisslab/cli.hpp"

namespace fs = std::filesystem;
using kreisslab::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "kreiss-lab");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "kreisslab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(CliParseTest, IntLists) {
  using kreisslab::cli::parse_int_list;
  EXPECT_EQ(parse_int_list("16..128"), (std::vector<std::int64_t>{16, 32, 64, 128}));
  EXPECT_EQ(parse_int_list("3, 5,9"), (std::vector<std::int64_t>{3, 5, 9}));
  EXPECT_EQ(parse_int_list("16..100"), (std::vector<std::int64_t>{16, 32, 64}));
  EXPECT_THROW(parse_int_list("a,b"), std::invalid_argument);
  EXPECT_THROW(parse_int_list("8..2"), std::invalid_argument);
  EXPECT_THROW(parse_int_list(""), std::invalid_argument);
}

TEST(CliTest, GrowthWritesCsv) {
  const auto path = scratch("growth.csv");
  fs::remove(path);
  const auto r = run({"growth", "--a", "0.5", "--p", "1", "--n", "16..4096", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(path);
  EXPECT_EQ(csv.rfind("N,lower,upper,method_lower,method_upper\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  EXPECT_NE(csv.find("4096,"), std::string::npos);
}

TEST(CliTest, GrowthRejectsSmallP) {
  const auto r = run({"growth", "--p", "0.5", "--n", "16..64"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("below 1"), std::string::npos);
}

TEST(CliTest, UnknownFlagIsUsageError) {
  EXPECT_EQ(run({"growth", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"lp", "--kind", "sideways"}).code, 2);
  EXPECT_EQ(run({"growth", "--n", "x..y"}).code, 2);
}

TEST(CliTest, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(CliTest, TechnicalJson) {
  const auto r = run({"technical", "--N", "10000", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], kreisslab::cli::kSchemaVersion);
  EXPECT_TRUE(j.contains("anchor"));
  EXPECT_TRUE(j["config"].contains("N"));
  const auto& rep = j["reports"][0];
  EXPECT_TRUE(rep.contains("min_ratio"));
  EXPECT_TRUE(rep.contains("max_ratio"));
  EXPECT_EQ(rep["N"], 10000);
}

TEST(CliTest, LpCsvSchema) {
  const auto r = run({"lp", "--kind", "blocks", "--trials", "20", "--L", "1,2,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("L,worst_ratio,mean_ratio,witness_seed\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(CliTest, LpJsonCarriesWitness) {
  const auto r = run({"lp", "--kind", "forward", "--p", "3", "--trials", "10", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["config"]["kind"], "forward");
  EXPECT_TRUE(j["witness"]["intervals"].is_array());
  EXPECT_EQ(j["per_L"].size(), 4u);
}

TEST(CliTest, KreissJson) {
  const auto r = run({"kreiss", "--kind", "strong", "--operator", "identity", "--scale", "2", "--p", "1",
                      "--radii", "1,10,20,40,80", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kind"], "strong_kreiss");
  EXPECT_EQ(j["diverging"], true);
  EXPECT_EQ(j["constant_is_lower_estimate"], true);
}

TEST(CliTest, KreissSingularValueEncoded) {
  const auto r = run({"kreiss", "--kind", "kreiss", "--operator", "identity", "--scale", "2", "--p", "1",
                      "--moduli", "1.5,2,4", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["constant"], "inf");
  EXPECT_TRUE(j["singular_at"].is_array());
}

TEST(CliTest, KreissWindowCounting) {
  const auto r = run({"kreiss", "--kind", "window", "--operator", "shift", "--p", "1", "--n", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "parameter,value\n100,2.1000000000001338\n");
}

TEST(CliTest, BootstrapAndExponents) {
  auto r = run({"bootstrap", "--p", "4", "--N", "1000000", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["K"], 2);
  EXPECT_DOUBLE_EQ(j["fixed_point"].get<double>(), 0.75);
  r = run({"exponents", "--p", "2,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n4,2,4,0.375,0.25,"), std::string::npos);
  EXPECT_EQ(run({"exponents", "--p", "1"}).code, 2);
}

TEST(CliTest, NonPositiveToleranceIsUsageError) {
  EXPECT_EQ(run({"growth", "--p", "2", "--n", "16", "--tol", "0"}).code, 2);
  EXPECT_EQ(run({"growth", "--p", "2", "--n", "16", "--tol", "-1e-9"}).code, 2);
}

TEST(CliDeterminismTest, OutputsIndependentOfThreadCount) {
  const std::vector<std::vector<std::string>> commands{
      {"lp", "--kind", "forward", "--p", "3", "--trials", "40"},
      {"lp", "--kind", "weak-l1", "--trials", "40", "--json"},
      {"growth", "--p", "3", "--n", "8..64", "--json"},
      {"kreiss", "--kind", "iterated", "--p", "1", "--k-max", "2", "--moduli", "1.1,2"},
  };
  int idx = 0;
  for (const auto& cmd : commands) {
    std::string first;
    for (const char* threads : {"1", "3", "8"}) {
      const auto path = scratch("det_" + std::to_string(idx) + "_" + threads);
      auto args = cmd;
      args.insert(args.end(), {"--threads", threads, "--out", path.string()});
      ASSERT_EQ(run(args).code, 0);
      const auto text = slurp(path);
      if (first.empty())
        first = text;
      else
        EXPECT_EQ(text, first) << cmd[0] << " threads=" << threads;
    }
    ++idx;
  }
}
