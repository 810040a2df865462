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

#include "support/fixtures.hpp"
#include "unjoin/exec.hpp"
#include "unjoin/metrics.hpp"
#include "unjoin/util.hpp"

namespace unjoin {
namespace {

std::filesystem::path MiniDb(const std::string& db_id) {
  static const auto root = testing::MaterializeSpiderMini(testing::TempDir("exec_root"));
  return root / "database" / db_id / (db_id + ".sqlite");
}

ExecOutcome Rows(std::vector<Row> rows) {
  ExecOutcome o;
  o.status = ExecStatus::kOk;
  o.rows = std::move(rows);
  return o;
}

TEST(Execute, SelectOne) {
  auto o = execute("SELECT 1", MiniDb("college"));
  ASSERT_TRUE(o.ok()) << o.error;
  ASSERT_EQ(o.rows.size(), 1u);
  EXPECT_EQ(o.rows[0], (Row{int64_t{1}}));
}

TEST(Execute, RuntimeError) {
  auto o = execute("SELECT * FROM nonexistent", MiniDb("college"));
  EXPECT_EQ(o.status, ExecStatus::kRuntimeError);
  EXPECT_TRUE(o.rows.empty());
  EXPECT_NE(o.error.find("nonexistent"), std::string::npos);
}

TEST(Execute, Timeout) {
  auto o = execute("WITH RECURSIVE c AS (SELECT 1 UNION ALL SELECT 1 FROM c) SELECT count(*) FROM c", MiniDb("college"),
                   0.5);
  EXPECT_EQ(o.status, ExecStatus::kTimeout);
  EXPECT_TRUE(o.rows.empty());
  EXPECT_LT(o.wall_s, 5.0);
}

TEST(Execute, ReadOnlyAndSideEffectFree) {
  auto db = MiniDb("retail");
  std::string before = ReadFile(db);
  EXPECT_EQ(execute("DELETE FROM customers", db).status, ExecStatus::kRuntimeError);
  EXPECT_EQ(execute("DROP TABLE orders", db).status, ExecStatus::kRuntimeError);
  EXPECT_TRUE(execute("SELECT count(*) FROM orders", db).ok());
  EXPECT_EQ(ReadFile(db), before);
}

TEST(Execute, MultipleStatementsRejected) {
  EXPECT_EQ(execute("SELECT 1; SELECT 2", MiniDb("college")).status, ExecStatus::kRuntimeError);
  EXPECT_TRUE(execute("SELECT 1;  ", MiniDb("college")).ok());
}

TEST(Compare, Rules) {
  auto a = Rows({{int64_t{1}}, {int64_t{2}}});
  auto b = Rows({{int64_t{2}}, {int64_t{1}}});
  EXPECT_TRUE(compare_results(a, b, false));
  EXPECT_FALSE(compare_results(a, b, true));
  EXPECT_TRUE(compare_results(Rows({{1.0000001}}), Rows({{1.0}}), false));
  EXPECT_FALSE(compare_results(Rows({{1.00001}}), Rows({{1.0}}), false));
  EXPECT_TRUE(compare_results(Rows({{int64_t{2}}}), Rows({{2.0}}), false));
  EXPECT_TRUE(compare_results(Rows({{std::string("ab  ")}}), Rows({{std::string("ab")}}), false));
  EXPECT_FALSE(compare_results(Rows({{std::string("Ab")}}), Rows({{std::string("ab")}}), false));
  EXPECT_FALSE(compare_results(Rows({{std::string(" ab")}}), Rows({{std::string("ab")}}), false));
  EXPECT_TRUE(compare_results(Rows({{std::monostate{}}}), Rows({{std::monostate{}}}), false));
  EXPECT_FALSE(compare_results(Rows({{std::monostate{}}}), Rows({{int64_t{0}}}), false));
  EXPECT_FALSE(compare_results(Rows({{std::string("1")}}), Rows({{int64_t{1}}}), false));
  // duplicates are significant
  EXPECT_FALSE(compare_results(Rows({{int64_t{1}}, {int64_t{1}}, {int64_t{2}}}),
                               Rows({{int64_t{1}}, {int64_t{2}}, {int64_t{2}}}), false));
  ExecOutcome failed;
  EXPECT_FALSE(compare_results(failed, failed, false));
}

TEST(Compare, ToleranceAcrossSortBoundaries) {
  auto gold = Rows({{1.0000001, std::string("b")}, {1.0, std::string("a")}});
  auto pred = Rows({{1.0, std::string("b")}, {1.0000001, std::string("a")}});
  EXPECT_TRUE(compare_results(gold, pred, false));
}

TEST(Compare, Symmetric) {
  std::vector<ExecOutcome> pool = {
      Rows({{int64_t{1}}, {int64_t{2}}}), Rows({{int64_t{2}}, {int64_t{1}}}), Rows({{1.0000001}, {2.0}}),
      Rows({{std::string("x ")}}),        Rows({{std::string("x")}}),         Rows({}),
      Rows({{std::monostate{}}}),         ExecOutcome{}};
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (bool order : {false, true}) EXPECT_EQ(compare_results(a, b, order), compare_results(b, a, order));
}

TEST(Metrics, SetRules) {
  auto pr = SetPrecisionRecall({}, {"a"});
  EXPECT_EQ(pr.precision, 0.0);
  EXPECT_EQ(pr.recall, 0.0);
  pr = SetPrecisionRecall({}, {});
  EXPECT_EQ(pr.precision, 1.0);
  EXPECT_EQ(pr.recall, 1.0);
  pr = SetPrecisionRecall({"a", "b"}, {"a"});
  EXPECT_EQ(pr.precision, 0.5);
  EXPECT_EQ(pr.recall, 1.0);
}

TEST(Metrics, PerfectAndHalf) {
  ScoredItem perfect{true, true, {1, 1}, {1, 1}, 2};
  auto s = score_run({perfect, perfect});
  EXPECT_EQ(s.qe, 100.0);
  EXPECT_EQ(s.em, 100.0);
  EXPECT_EQ(s.table_recall, 100.0);
  auto buckets = bucket_by_table_count({perfect, perfect});
  ASSERT_EQ(buckets.size(), 1u);
  EXPECT_EQ(buckets[0].label, "2");
  EXPECT_EQ(buckets[0].table_recall, 100.0);
  ScoredItem failed{false, false, {0, 0}, {0, 0}, 3};
  s = score_run({perfect, failed});
  EXPECT_EQ(s.qe, 50.0);
  EXPECT_LE(s.em, 50.0);
  EXPECT_THROW(score_run({}), std::invalid_argument);
  EXPECT_EQ(BucketsCsv(bucket_by_table_count({perfect, failed})),
            "tables,count,table_recall,column_recall\n2,1,100.00,100.00\n3,1,0.00,0.00\n");
}

TEST(Metrics, BucketPopulationsSumToN) {
  std::vector<ScoredItem> items;
  for (int k = 1; k <= 9; ++k) items.push_back({true, false, {1, 0.5}, {1, 0.25}, k});
  size_t total = 0;
  for (const auto& b : bucket_by_table_count(items)) total += b.count;
  EXPECT_EQ(total, items.size());
}

TEST(Metrics, MatchesBruteForceOracle) {
  size_t checked = 0;
  for (const auto& p : testing::CheckMetricOracle(&checked)) ADD_FAILURE() << p;
  EXPECT_EQ(checked, 2u);
}

}  // namespace
}  // namespace unjoin
