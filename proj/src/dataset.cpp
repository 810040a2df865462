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

#include "unjoin/dataset.hpp"

#include <set>

#include "unjoin/sqlref.hpp"
#include "unjoin/util.hpp"

namespace unjoin {

namespace fs = std::filesystem;
using nlohmann::json;

Flavor ParseFlavor(std::string_view name) {
  std::string n = ToLower(name);
  if (n == "spider") return Flavor::kSpider;
  if (n == "bird") return Flavor::kBird;
  throw DatasetError("unknown dataset '" + std::string(name) + "' (expected spider or bird)");
}

std::string FlavorName(Flavor f) { return f == Flavor::kSpider ? "spider" : "bird"; }

namespace {

fs::path DatabaseDir(const fs::path& root, Flavor f) {
  return root / (f == Flavor::kSpider ? "database" : "dev_databases");
}

fs::path FirstExisting(const fs::path& root, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (fs::exists(root / n)) return root / n;
  return root / *names.begin();
}

}  // namespace

fs::path Dataset::DatabaseFile(std::string_view db_id) const {
  std::string id(db_id);
  return DatabaseDir(root, flavor) / id / (id + ".sqlite");
}

const ColumnDescriptions* Dataset::DescriptionsFor(std::string_view db_id) const {
  auto it = descriptions.find(std::string(db_id));
  return it == descriptions.end() || it->second.empty() ? nullptr : &it->second;
}

fs::path CatalogueFile(const fs::path& root, Flavor flavor) {
  return flavor == Flavor::kSpider ? root / "tables.json" : FirstExisting(root, {"dev_tables.json", "tables.json"});
}

Dataset load_dataset(const fs::path& root, Flavor flavor, const std::string& split) {
  Dataset ds;
  ds.flavor = flavor;
  ds.root = root;
  fs::path tables = CatalogueFile(root, flavor);
  fs::path items = root / split;
  std::vector<std::string> missing;
  for (const auto& p : {tables, items, DatabaseDir(root, flavor)})
    if (!fs::exists(p)) missing.push_back(p.string());
  if (!missing.empty()) {
    std::string msg = "missing " + FlavorName(flavor) + " files:";
    for (const auto& m : missing) msg += " " + m;
    throw DatasetError(msg);
  }

  ds.catalogue = LoadCatalogue(tables);

  json doc;
  try {
    doc = json::parse(ReadFile(items));
  } catch (const json::exception& e) {
    throw DatasetError(items.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw DatasetError(items.string() + ": expected a JSON array");
  std::vector<std::string> problems;
  for (size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    EvalItem it;
    it.db_id = j.value("db_id", "");
    it.id = it.db_id + ":" + std::to_string(i);
    it.question = j.value("question", "");
    it.gold_sql = j.contains("query") ? j["query"].get<std::string>() : j.value("SQL", "");
    it.evidence = j.value("evidence", "");
    if (!ds.catalogue.Find(it.db_id)) {
      problems.push_back(it.id + ": database not in " + tables.string());
      continue;
    }
    // Use the catalogue's spelling so paths and lookups agree.
    it.db_id = ds.catalogue.Find(it.db_id)->db_id();
    ds.items.push_back(std::move(it));
  }
  if (!problems.empty()) {
    std::string msg = std::to_string(problems.size()) + " items do not resolve:";
    for (size_t i = 0; i < problems.size() && i < 10; ++i) msg += "\n  " + problems[i];
    throw DatasetError(msg);
  }

  if (flavor == Flavor::kBird) {
    for (const auto& db : ds.catalogue.databases()) {
      fs::path dir = DatabaseDir(root, flavor) / db.db_id() / "database_description";
      if (fs::is_directory(dir)) ds.descriptions.emplace(db.db_id(), LoadBirdDescriptions(db, dir));
    }
  }
  return ds;
}

size_t FilterResult::DatabaseCount() const {
  std::set<std::string> dbs;
  for (const auto& it : items) dbs.insert(ToLower(it.db_id));
  return dbs.size();
}

FilterResult filter_items(const std::vector<EvalItem>& items, const SchemaCatalogue& catalogue) {
  FilterResult out;
  for (const auto& it : items) {
    const DatabaseSchema* db = catalogue.Find(it.db_id);
    if (!db) {
      out.dropped.push_back({it.id, "unknown database " + it.db_id});
      continue;
    }
    try {
      auto refs = extract_refs(it.gold_sql, *db);
      if (refs.refs.tables.size() < 2) {
        ++out.single_table;
        continue;
      }
      EvalItem kept = it;
      kept.gold_table_count = static_cast<int>(refs.refs.tables.size());
      out.items.push_back(std::move(kept));
    } catch (const sql::ParseError& e) {
      out.dropped.push_back({it.id, std::string("gold SQL does not parse: ") + e.what()});
    }
  }
  return out;
}

}  // namespace unjoin
