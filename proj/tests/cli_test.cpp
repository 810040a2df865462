// Copyright 2026 The UnJoin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "support/fixtures.hpp"
#include "support/oracle_cache.hpp"
#include "unjoin/cli.hpp"
#include "unjoin/report.hpp"
#include "unjoin/util.hpp"

namespace unjoin {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
  int status;
  std::string out, err;
};

CliResult Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "unjoin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

size_t Lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

TEST(Cli, Simplify) {
  fs::path root = testing::MaterializeSpiderMini(testing::TempDir("cli_simplify"));
  auto r = Cli({"simplify", "--dataset", "spider", "--root", root.string(), "--db", "college"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(Lines(r.out), testing::MiniCatalogue().Find("college")->ColumnCount());
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "department.dept_id");
  auto rendered = Cli({"simplify", "--root", root.string(), "--db", "college", "--render"});
  EXPECT_EQ(rendered.out.substr(0, rendered.out.find('\n')), "Table: college");

  auto missing = Cli({"simplify", "--root", root.string(), "--db", "nowhere"});
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(Lines(missing.err), 1u);
  EXPECT_NE(missing.err.find("nowhere"), std::string::npos);
}

TEST(Cli, Filter) {
  fs::path work = testing::TempDir("cli_filter");
  fs::path root = testing::MaterializeSpiderMini(work / "spider");
  auto r = Cli({"filter", "--dataset", "spider", "--root", root.string(), "--out", (work / "items.jsonl").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "25 items, 3 databases\n");
  EXPECT_EQ(Lines(ReadFile(work / "items.jsonl")), 25u);
}

TEST(Cli, UsageErrors) {
  auto r = Cli({"filter", "--frobnicate"});
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(Lines(r.err), 1u);
  EXPECT_EQ(Cli({}).status, 2);
  EXPECT_EQ(Cli({"run", "--method", "magic"}).status, 2);
  EXPECT_EQ(Cli({"--help"}).status, 0);
}

TEST(Cli, RunScoreDiff) {
  fs::path work = testing::TempDir("cli_run");
  fs::path root = testing::MaterializeSpiderMini(work / "spider");
  // the config file asks for cot; the flag wins
  WriteFileAtomic(work / "config.json",
                  json{{"method", "cot"}, {"workers", 3}, {"templates", UNJOIN_TEST_TEMPLATES},
                       {"llm", {{"model", "oracle"}}}}
                      .dump());
  LlmConfig llm;
  llm.model = "oracle";
  testing::BuildOracleCache(load_dataset(root, Flavor::kSpider), Method::kUnjoinSp, llm,
                            PromptLibrary::Load(UNJOIN_TEST_TEMPLATES), work / "cache");

  std::vector<std::string> args = {"run",      "--config",    (work / "config.json").string(),
                                   "--dataset", "spider",     "--root",
                                   root.string(), "--method", "unjoin-sp",
                                   "--cache",  "replay",      "--cache-dir",
                                   (work / "cache").string(), "--out"};
  auto a = args, b = args;
  a.push_back((work / "a").string());
  b.push_back((work / "b").string());
  auto ra = Cli(a);
  ASSERT_EQ(ra.status, 0) << ra.err;
  EXPECT_EQ(ra.out, "n 25 QE 100.00 EM 100.00 TP 100.00 TR 100.00 CP 100.00 CR 100.00\n");
  ASSERT_EQ(Cli(b).status, 0);
  EXPECT_EQ(ReadFile(work / "a/records.jsonl"), ReadFile(work / "b/records.jsonl"));
  auto config = json::parse(ReadFile(work / "a/run_config.json"));
  EXPECT_EQ(config["method"], "unjoin-sp");
  EXPECT_EQ(config["workers"], 3);

  auto score = Cli({"score", (work / "a/records.jsonl").string()});
  ASSERT_EQ(score.status, 0) << score.err;
  EXPECT_EQ(score.out, ReadFile(work / "a/summary.json"));
  auto rescored = Cli({"score", (work / "a/records.jsonl").string(), "--out", (work / "rescored").string()});
  ASSERT_EQ(rescored.status, 0);
  EXPECT_EQ(ReadFile(work / "rescored/summary.json"), ReadFile(work / "a/summary.json"));
  EXPECT_EQ(ReadFile(work / "rescored/buckets.csv"), ReadFile(work / "a/buckets.csv"));

  auto diff = Cli({"diff", (work / "a/summary.json").string(), (work / "b/summary.json").string()});
  EXPECT_EQ(diff.status, 0);
  EXPECT_NE(diff.out.find("identical metrics"), std::string::npos);

  auto miss = Cli({"run", "--root", root.string(), "--method", "cot", "--cache", "replay", "--cache-dir",
                   (work / "cache").string(), "--out", (work / "c").string(), "--templates", UNJOIN_TEST_TEMPLATES,
                   "--model", "oracle"});
  EXPECT_EQ(miss.status, 1);
  EXPECT_EQ(Lines(miss.err), 1u);
  EXPECT_NE(miss.err.find("replay"), std::string::npos) << miss.err;
}

TEST(Cli, DiffReportsChanges) {
  fs::path work = testing::TempDir("cli_diff");
  auto summary = [](double em) {
    return json{{"metrics", {{"n", 2}, {"qe", 100.0}, {"em", em}, {"table_precision", 50.0}, {"table_recall", 50.0},
                             {"column_precision", 50.0}, {"column_recall", 50.0}}},
                {"buckets", json::array({{{"tables", "2"}, {"count", 2}, {"table_recall", 50.0}, {"column_recall", 50.0}}})}};
  };
  WriteFileAtomic(work / "a.json", summary(50).dump());
  WriteFileAtomic(work / "b.json", summary(100).dump());
  auto r = Cli({"diff", (work / "a.json").string(), (work / "b.json").string()});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("+50.00"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("metrics differ"), std::string::npos);
}

}  // namespace
}  // namespace unjoin
