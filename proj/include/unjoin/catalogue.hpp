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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "unjoin/schema.hpp"

namespace unjoin {

/// All databases of one benchmark, keyed by db_id.
class SchemaCatalogue {
 public:
  void Add(DatabaseSchema db);
  const DatabaseSchema* Find(std::string_view db_id) const;
  const std::vector<DatabaseSchema>& databases() const { return dbs_; }
  size_t size() const { return dbs_.size(); }

 private:
  std::vector<DatabaseSchema> dbs_;
  std::unordered_map<std::string, size_t> index_;
};

/// Parses the `tables.json` layout: an array of objects with `db_id`,
/// `table_names_original`, `column_names_original`, `column_types`, `primary_keys`
/// and `foreign_keys` (pairs of global column indices).
SchemaCatalogue ParseCatalogue(const nlohmann::json& doc);
SchemaCatalogue LoadCatalogue(const std::filesystem::path& tables_json);

/// Reads BIRD `database_description/<table>.csv` texts for the schema's columns.
/// A missing directory or file yields no entries for that table.
ColumnDescriptions LoadBirdDescriptions(const DatabaseSchema& db, const std::filesystem::path& description_dir);

/// Minimal RFC 4180 reader (quoted fields, doubled quotes, embedded newlines).
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

}  // namespace unjoin
