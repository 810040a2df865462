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

#include "support/fixtures.hpp"

#include <sqlite3.h>

#include <stdexcept>

#include "unjoin/util.hpp"

namespace unjoin::testing {

namespace fs = std::filesystem;

fs::path FixtureDir() { return UNJOIN_TEST_FIXTURES; }

DatabaseSchema BankDataExample() {
  std::vector<TableDef> tables = {
      {"customer",
       {{"customer_id", "number", "Unique identifier for each customer"},
        {"name", "text", "Name of the customer"},
        {"gender", "text", "Gender of the customer"}},
       {"customer_id"}},
      {"account",
       {{"account_id", "number", "Unique identifier for accounts"},
        {"balance", "number", "Current balance of the account"}},
       {"account_id"}},
      {"loan",
       {{"loan_id", "number", "Unique identifier for loans"},
        {"amount", "number", "Loan amount"},
        {"status", "text", "Status of the loan (e.g., Approved/Rejected)"}},
       {"loan_id"}},
  };
  return DatabaseSchema::Create("bank_data", std::move(tables));
}

DatabaseSchema BankWithKeys() {
  std::vector<TableDef> tables = {
      {"customer", {{"customer_id", "number", ""}, {"name", "text", ""}, {"gender", "text", ""}}, {"customer_id"}},
      {"account",
       {{"account_id", "number", ""}, {"customer_id", "number", ""}, {"balance", "number", ""}},
       {"account_id"}},
      {"loan",
       {{"loan_id", "number", ""}, {"customer_id", "number", ""}, {"amount", "number", ""}, {"status", "text", ""}},
       {"loan_id"}},
  };
  return DatabaseSchema::Create("bank_data", std::move(tables),
                                {{{"account", "customer_id"}, {"customer", "customer_id"}},
                                 {{"loan", "customer_id"}, {"customer", "customer_id"}}});
}

const SchemaCatalogue& MiniCatalogue() {
  static const SchemaCatalogue catalogue = LoadCatalogue(FixtureDir() / "spider_mini" / "tables.json");
  return catalogue;
}

void BuildDatabase(const fs::path& db_file, const std::string& script) {
  fs::create_directories(db_file.parent_path());
  fs::remove(db_file);
  sqlite3* db = nullptr;
  if (sqlite3_open(db_file.c_str(), &db) != SQLITE_OK) throw std::runtime_error("cannot create " + db_file.string());
  char* err = nullptr;
  int rc = sqlite3_exec(db, script.c_str(), nullptr, nullptr, &err);
  std::string message = err ? err : "";
  sqlite3_free(err);
  sqlite3_close(db);
  if (rc != SQLITE_OK) throw std::runtime_error("fixture script failed: " + message);
}

fs::path MaterializeSpiderMini(const fs::path& dst) {
  fs::path src = FixtureDir() / "spider_mini";
  fs::create_directories(dst);
  for (const char* f : {"tables.json", "dev.json"}) fs::copy_file(src / f, dst / f, fs::copy_options::overwrite_existing);
  for (const auto& entry : fs::directory_iterator(src / "database")) {
    auto db_id = entry.path().filename().string();
    BuildDatabase(dst / "database" / db_id / (db_id + ".sqlite"), ReadFile(entry.path() / "schema.sql"));
  }
  return dst;
}

fs::path TempDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("unjoin_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace unjoin::testing

#include <json.hpp>

#include "unjoin/metrics.hpp"

namespace unjoin::testing {

std::vector<std::string> CheckMetricOracle(size_t* fixtures_checked) {
  using nlohmann::json;
  auto doc = json::parse(ReadFile(FixtureDir() / "metrics_fixture.json"));
  std::vector<std::string> problems;
  size_t checked = 0;
  auto same = [](double a, const json& b) { return FormatFixed2(a) == FormatFixed2(b.get<double>()); };
  for (const auto& fx : doc) {
    if (fx["items"].size() > 50) continue;
    ++checked;
    std::string name = fx["name"];
    std::vector<ScoredItem> items;
    for (const auto& it : fx["items"]) {
      ScoredItem s;
      s.qe = it["qe"];
      s.em = it["em"];
      s.table = SetPrecisionRecall(it["pred_tables"].get<std::set<std::string>>(),
                                   it["gold_tables"].get<std::set<std::string>>());
      s.column = SetPrecisionRecall(it["pred_columns"].get<std::set<std::string>>(),
                                    it["gold_columns"].get<std::set<std::string>>());
      s.gold_table_count = static_cast<int>(it["gold_tables"].size());
      items.push_back(s);
    }
    auto summary = score_run(items).ToJson();
    for (const auto& [k, v] : fx["summary"].items()) {
      bool ok = k == "n" ? summary[k] == v : same(summary[k].get<double>(), v);
      if (!ok) problems.push_back(name + " summary." + k + ": got " + summary[k].dump() + ", oracle " + v.dump());
    }
    auto buckets = bucket_by_table_count(items);
    const auto& expected = fx["buckets"];
    if (buckets.size() != expected.size()) {
      problems.push_back(name + ": " + std::to_string(buckets.size()) + " buckets, oracle " +
                         std::to_string(expected.size()));
      continue;
    }
    for (size_t i = 0; i < buckets.size(); ++i) {
      const auto& e = expected[i];
      if (buckets[i].label != e["label"] || buckets[i].count != e["count"].get<size_t>() ||
          !same(buckets[i].table_recall, e["table_recall"]) || !same(buckets[i].column_recall, e["column_recall"]))
        problems.push_back(name + " bucket " + buckets[i].label + " differs from oracle " + e.dump());
    }
  }
  if (fixtures_checked) *fixtures_checked = checked;
  return problems;
}

}  // namespace unjoin::testing
