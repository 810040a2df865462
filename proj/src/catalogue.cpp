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

#include "unjoin/catalogue.hpp"

#include <sstream>
#include <stdexcept>

#include "unjoin/util.hpp"

namespace unjoin {

using nlohmann::json;

void SchemaCatalogue::Add(DatabaseSchema db) {
  auto key = ToLower(db.db_id());
  if (index_.count(key)) throw SchemaError("duplicate db_id '" + db.db_id() + "' in catalogue");
  index_.emplace(key, dbs_.size());
  dbs_.push_back(std::move(db));
}

const DatabaseSchema* SchemaCatalogue::Find(std::string_view db_id) const {
  auto it = index_.find(ToLower(db_id));
  return it == index_.end() ? nullptr : &dbs_[it->second];
}

namespace {

DatabaseSchema ParseDatabase(const json& entry) {
  std::string db_id = entry.at("db_id").get<std::string>();
  const auto& table_names = entry.at("table_names_original");
  const auto& column_names = entry.at("column_names_original");
  json column_types = entry.value("column_types", json::array());

  std::vector<TableDef> tables;
  for (const auto& name : table_names) tables.push_back(TableDef{name.get<std::string>(), {}, {}});

  // Global column index -> (table index, column index); index 0 is the `*` pseudo-column.
  std::vector<std::pair<int, size_t>> global(column_names.size(), {-1, 0});
  for (size_t g = 0; g < column_names.size(); ++g) {
    int table = column_names[g].at(0).get<int>();
    if (table < 0) continue;
    if (static_cast<size_t>(table) >= tables.size())
      throw SchemaError(db_id + ": column " + std::to_string(g) + " points at missing table " + std::to_string(table));
    ColumnDef col;
    col.name = column_names[g].at(1).get<std::string>();
    if (g < column_types.size() && column_types[g].is_string()) col.type = column_types[g].get<std::string>();
    auto& t = tables[static_cast<size_t>(table)];
    global[g] = {table, t.columns.size()};
    t.columns.push_back(std::move(col));
  }

  auto column_at = [&](const json& idx) -> std::pair<int, size_t> {
    auto g = idx.get<size_t>();
    if (g >= global.size() || global[g].first < 0)
      throw SchemaError(db_id + ": key refers to invalid column index " + std::to_string(g));
    return global[g];
  };

  if (entry.contains("primary_keys")) {
    for (const auto& pk : entry.at("primary_keys")) {
      std::vector<json> parts;
      if (pk.is_array()) parts.assign(pk.begin(), pk.end());
      else parts.push_back(pk);
      for (const auto& p : parts) {
        auto [ti, ci] = column_at(p);
        auto& t = tables[static_cast<size_t>(ti)];
        t.primary_key.push_back(t.columns[ci].name);
      }
    }
  }

  std::vector<ForeignKey> fks;
  for (const auto& pair : entry.value("foreign_keys", json::array())) {
    auto [fti, fci] = column_at(pair.at(0));
    auto [tti, tci] = column_at(pair.at(1));
    const auto& from_t = tables[static_cast<size_t>(fti)];
    const auto& to_t = tables[static_cast<size_t>(tti)];
    fks.push_back({{from_t.name, from_t.columns[fci].name}, {to_t.name, to_t.columns[tci].name}});
  }
  return DatabaseSchema::Create(std::move(db_id), std::move(tables), std::move(fks));
}

}  // namespace

SchemaCatalogue ParseCatalogue(const json& doc) {
  if (!doc.is_array()) throw SchemaError("schema catalogue must be a JSON array");
  SchemaCatalogue catalogue;
  std::vector<std::string> errors;
  for (const auto& entry : doc) {
    try {
      catalogue.Add(ParseDatabase(entry));
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << errors.size() << " invalid database(s) in catalogue:";
    for (const auto& e : errors) msg << "\n  " << e;
    throw SchemaError(msg.str());
  }
  return catalogue;
}

SchemaCatalogue LoadCatalogue(const std::filesystem::path& tables_json) {
  json doc;
  try {
    doc = json::parse(SanitizeUtf8(ReadFile(tables_json)));
  } catch (const json::exception& e) {
    throw SchemaError(tables_json.string() + ": " + e.what());
  }
  return ParseCatalogue(doc);
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field.push_back(c);
    }
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

ColumnDescriptions LoadBirdDescriptions(const DatabaseSchema& db, const std::filesystem::path& description_dir) {
  ColumnDescriptions out;
  if (!std::filesystem::is_directory(description_dir)) return out;
  // File names do not always match table casing.
  std::unordered_map<std::string, std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(description_dir)) {
    if (entry.path().extension() == ".csv") files.emplace(ToLower(entry.path().stem().string()), entry.path());
  }
  for (const auto& t : db.tables()) {
    auto it = files.find(ToLower(t.name));
    if (it == files.end()) continue;
    std::string text = SanitizeUtf8(ReadFile(it->second));
    if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
    auto rows = ParseCsv(text);
    if (rows.empty()) continue;
    // Header: original_column_name, column_name, column_description, data_format, value_description
    for (size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.empty()) continue;
      std::string column(Trim(row[0]));
      if (!t.FindColumn(column)) continue;
      std::string desc = row.size() > 2 ? std::string(Trim(row[2])) : std::string();
      if (desc.empty() && row.size() > 1) desc = std::string(Trim(row[1]));
      for (char& ch : desc)
        if (ch == '\n' || ch == '\r') ch = ' ';
      if (!desc.empty()) out.Set(t.name, column, std::move(desc));
    }
  }
  return out;
}

}  // namespace unjoin
