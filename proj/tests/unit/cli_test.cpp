#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "promptrec/dataset.hpp"
#include "test_data.hpp"

namespace promptrec {
namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "promptrec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path tmp(const std::string& name) {
  std::filesystem::path dir(PROMPTREC_TEST_TMPDIR);
  std::filesystem::create_directories(dir);
  auto p = dir / ("cli_" + name);
  std::filesystem::remove(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string table1_csv() {
  auto p = tmp("table1.csv");
  save_dataset(testdata::table1(), p);
  return p.string();
}

TEST(Cli, GenerateIsDeterministicWithRequestedRows) {
  auto a = tmp("gen_a.csv");
  auto b = tmp("gen_b.csv");
  auto r1 = run({"generate", "--entries", "3612", "--prompts", "60", "--seed", "1", "--out", a.string()});
  auto r2 = run({"generate", "--entries", "3612", "--prompts", "60", "--seed", "1", "--out", b.string()});
  ASSERT_EQ(r1.status, 0) << r1.err;
  ASSERT_EQ(r2.status, 0) << r2.err;
  EXPECT_EQ(slurp(a), slurp(b));
  auto d = load_dataset(a);
  EXPECT_EQ(d.size(), 3612u);
  EXPECT_EQ(d.catalog().size(), 60u);
  auto other = run({"generate", "--entries", "100", "--prompts", "10", "--seed", "2"});
  ASSERT_EQ(other.status, 0);
  EXPECT_EQ(parse_dataset(other.out).size(), 100u);
}

TEST(Cli, GenerateFromJsonConfig) {
  auto cfg = tmp("gen.json");
  std::ofstream(cfg) << R"({"n_entries": 50, "n_prompts": 8, "seed": 4})";
  auto r = run({"generate", "--config", cfg.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  auto d = parse_dataset(r.out);
  EXPECT_EQ(d.size(), 50u);
  EXPECT_EQ(d.catalog().size(), 8u);
}

TEST(Cli, EvaluatePrintsTableRows) {
  auto data = tmp("eval.csv");
  ASSERT_EQ(run({"generate", "--entries", "600", "--prompts", "20", "--out", data.string()}).status, 0);
  auto r = run({"evaluate", "--folds", "10", "--top-n", "10", "--threshold", "3.0", "--threshold",
                "3.5", "--seed", "1", "--data", data.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row30, row35;
  std::getline(lines, header);
  std::getline(lines, row30);
  std::getline(lines, row35);
  EXPECT_EQ(header.rfind("Threshold", 0), 0u);
  for (const char* col : {"MAE", "RMSE", "Precision", "Recall", "F1"}) {
    EXPECT_NE(header.find(col), std::string::npos) << col;
  }
  EXPECT_EQ(row30.rfind("3.0 ", 0), 0u) << row30;
  EXPECT_EQ(row35.rfind("3.5 ", 0), 0u) << row35;

  auto again = run({"evaluate", "--folds", "10", "--top-n", "10", "--threshold", "3.0", "--threshold",
                    "3.5", "--seed", "1", "--data", data.string(), "--sequential"});
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, EvaluateJsonFormat) {
  auto r = run({"evaluate", "--data", table1_csv(), "--folds", "3", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["config"]["folds"], 3);
  EXPECT_EQ(j["per_fold"].size(), 3u);
}

TEST(Cli, RecommendKnownAndFallback) {
  auto data = table1_csv();
  auto known = run({"recommend", "--data", data, "--prompt",
                    "Design a recommendation system that avoids bias.", "--n", "3"});
  ASSERT_EQ(known.status, 0) << known.err;
  EXPECT_EQ(known.out.rfind("resolved: exact (1.0000) Design a recommendation", 0), 0u) << known.out;
  EXPECT_NE(known.out.find("  1. "), std::string::npos);

  auto fallback = run({"recommend", "--data", data, "--prompt", "unseen zzyzx text"});
  ASSERT_EQ(fallback.status, 0) << fallback.err;
  EXPECT_EQ(fallback.out.rfind("resolved: none", 0), 0u) << fallback.out;
  EXPECT_NE(fallback.out.find("popular-fallback"), std::string::npos);

  auto json_out = run({"recommend", "--data", data, "--prompt", "unseen zzyzx text", "--format", "json"});
  ASSERT_EQ(json_out.status, 0);
  auto j = nlohmann::json::parse(json_out.out);
  EXPECT_EQ(j["resolved_prompt"]["method"], "none");
  EXPECT_FALSE(j["items"].empty());

  auto none = run({"recommend", "--data", data, "--prompt", "unseen zzyzx text", "--threshold", "5"});
  ASSERT_EQ(none.status, 0);
  EXPECT_NE(none.out.find("no recommendations above threshold"), std::string::npos);
}

TEST(Cli, FailuresExitNonzeroWithDiagnostics) {
  auto unknown = run({"frobnicate"});
  EXPECT_NE(unknown.status, 0);
  EXPECT_FALSE(unknown.err.empty());

  EXPECT_NE(run({}).status, 0);

  auto missing = tmp("does_not_exist.csv");
  auto r = run({"evaluate", "--data", missing.string()});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find(missing.string()), std::string::npos) << r.err;

  auto bad = tmp("bad.csv");
  std::ofstream(bad) << "prompt_a,prompt_b,rating\na,b,3\nc,d,nine\n";
  auto parse = run({"recommend", "--data", bad.string(), "--prompt", "a"});
  EXPECT_NE(parse.status, 0);
  EXPECT_NE(parse.err.find("line 3"), std::string::npos) << parse.err;

  EXPECT_NE(run({"evaluate", "--data", table1_csv(), "--folds", "1"}).status, 0);
  EXPECT_NE(run({"evaluate", "--data", table1_csv(), "--threshold", "7"}).status, 0);
  EXPECT_NE(run({"evaluate", "--data", table1_csv(), "--dedup", "median"}).status, 0);
  EXPECT_NE(run({"recommend", "--data", table1_csv()}).status, 0);
  EXPECT_NE(run({"generate", "--entries", "0"}).status, 0);
}

}  // namespace
}  // namespace promptrec
