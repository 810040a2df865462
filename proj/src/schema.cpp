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

#include "unjoin/schema.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "unjoin/util.hpp"

namespace unjoin {

namespace {

/// Width of the name column in the two-column listing; matches the bank_data example layout.
constexpr size_t kMinNameColumnWidth = 29;

bool IsBareIdentifier(std::string_view name) {
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string QuoteIfNeeded(std::string_view name) {
  if (IsBareIdentifier(name)) return std::string(name);
  return "`" + std::string(name) + "`";
}

}  // namespace

const ColumnDef* TableDef::FindColumn(std::string_view column) const {
  for (const auto& c : columns)
    if (IEquals(c.name, column)) return &c;
  return nullptr;
}

DatabaseSchema DatabaseSchema::Create(std::string db_id, std::vector<TableDef> tables,
                                      std::vector<ForeignKey> foreign_keys) {
  DatabaseSchema db;
  db.db_id_ = std::move(db_id);
  for (size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    if (t.name.empty()) throw SchemaError(db.db_id_ + ": table " + std::to_string(i) + " has an empty name");
    if (t.columns.empty()) throw SchemaError(db.db_id_ + ": table '" + t.name + "' has no columns");
    auto [_, fresh] = db.table_index_.emplace(ToLower(t.name), i);
    if (!fresh) throw SchemaError(db.db_id_ + ": duplicate table name '" + t.name + "'");
    std::set<std::string> seen;
    for (const auto& c : t.columns) {
      if (c.name.empty()) throw SchemaError(db.db_id_ + ": table '" + t.name + "' has an empty column name");
      if (!seen.insert(ToLower(c.name)).second)
        throw SchemaError(db.db_id_ + ": duplicate column '" + t.name + "." + c.name + "'");
    }
  }
  db.tables_ = std::move(tables);
  for (const auto& fk : foreign_keys) {
    for (const auto* end : {&fk.from, &fk.to}) {
      if (!db.FindColumn(end->table, end->column))
        throw SchemaError(db.db_id_ + ": foreign key endpoint '" + end->Render() + "' does not exist");
    }
  }
  db.foreign_keys_ = std::move(foreign_keys);
  return db;
}

const TableDef* DatabaseSchema::FindTable(std::string_view name) const {
  auto idx = TableIndex(name);
  return idx ? &tables_[*idx] : nullptr;
}

std::optional<size_t> DatabaseSchema::TableIndex(std::string_view name) const {
  auto it = table_index_.find(ToLower(name));
  if (it == table_index_.end()) return std::nullopt;
  return it->second;
}

const ColumnDef* DatabaseSchema::FindColumn(std::string_view table, std::string_view column) const {
  const auto* t = FindTable(table);
  return t ? t->FindColumn(column) : nullptr;
}

size_t DatabaseSchema::ColumnCount() const {
  size_t n = 0;
  for (const auto& t : tables_) n += t.columns.size();
  return n;
}

DatabaseSchema DatabaseSchema::Subset(const std::vector<std::string>& table_names) const {
  std::vector<TableDef> kept;
  for (const auto& name : table_names) {
    const auto* t = FindTable(name);
    if (!t) throw SchemaError(db_id_ + ": unknown table '" + name + "'");
    kept.push_back(*t);
  }
  std::set<std::string> kept_lower;
  for (const auto& t : kept) kept_lower.insert(ToLower(t.name));
  std::vector<ForeignKey> fks;
  for (const auto& fk : foreign_keys_) {
    if (kept_lower.count(ToLower(fk.from.table)) && kept_lower.count(ToLower(fk.to.table))) fks.push_back(fk);
  }
  return Create(db_id_, std::move(kept), std::move(fks));
}

DatabaseSchema DatabaseSchema::WithDescriptions(const ColumnDescriptions& descriptions) const {
  DatabaseSchema copy = *this;
  for (auto& t : copy.tables_)
    for (auto& c : t.columns) {
      auto text = descriptions.Get(t.name, c.name);
      if (!text.empty()) c.description = std::string(text);
    }
  return copy;
}

void ColumnDescriptions::Set(std::string_view table, std::string_view column, std::string text) {
  texts_[{ToLower(table), ToLower(column)}] = std::move(text);
}

std::string_view ColumnDescriptions::Get(std::string_view table, std::string_view column) const {
  auto it = texts_.find({ToLower(table), ToLower(column)});
  if (it == texts_.end()) return {};
  return it->second;
}

ColumnDescriptions ColumnDescriptions::FromSchema(const DatabaseSchema& db) {
  ColumnDescriptions out;
  for (const auto& t : db.tables())
    for (const auto& c : t.columns)
      if (!c.description.empty()) out.Set(t.name, c.name, c.description);
  return out;
}

const SimplifiedColumn* SimplifiedSchema::Find(std::string_view qualified) const {
  auto it = by_qualified_.find(ToLower(qualified));
  return it == by_qualified_.end() ? nullptr : &entries_[it->second];
}

const SimplifiedColumn* SimplifiedSchema::FindOrigin(std::string_view table, std::string_view column) const {
  auto it = by_origin_.find({ToLower(table), ToLower(column)});
  return it == by_origin_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::string> SimplifiedSchema::OriginTables() const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (out.empty() || !IEquals(out.back(), e.origin.table)) out.push_back(e.origin.table);
  return out;
}

SimplifiedSchema simplify_schema(const DatabaseSchema& db) {
  SimplifiedSchema s;
  s.virtual_table_name_ = db.db_id();
  for (size_t ti = 0; ti < db.tables().size(); ++ti) {
    const auto& t = db.tables()[ti];
    for (size_t ci = 0; ci < t.columns.size(); ++ci) {
      SimplifiedColumn e{t.name + "." + t.columns[ci].name, {t.name, t.columns[ci].name}, ti, ci};
      auto [it, fresh] = s.by_qualified_.emplace(ToLower(e.qualified), s.entries_.size());
      if (!fresh) {
        const auto& prior = s.entries_[it->second];
        throw SchemaError(db.db_id() + ": simplified name '" + e.qualified + "' collides between (" +
                          prior.origin.table + ", " + prior.origin.column + ") and (" + t.name + ", " +
                          t.columns[ci].name + ")");
      }
      s.by_origin_.emplace(std::make_pair(ToLower(t.name), ToLower(t.columns[ci].name)), s.entries_.size());
      s.entries_.push_back(std::move(e));
    }
  }
  return s;
}

std::string render_simplified(const SimplifiedSchema& s, const ColumnDescriptions* descriptions) {
  size_t width = kMinNameColumnWidth;
  for (const auto& e : s.entries()) width = std::max(width, e.qualified.size() + 2);
  std::string out = "Table: " + s.virtual_table_name() + "\n";
  for (const auto& e : s.entries()) {
    std::string_view desc = descriptions ? descriptions->Get(e.origin.table, e.origin.column) : std::string_view{};
    if (desc.empty()) {
      out += e.qualified;
    } else {
      out += e.qualified;
      out.append(width - e.qualified.size(), ' ');
      out += desc;
    }
    out += '\n';
  }
  return out;
}

std::string render_original(const DatabaseSchema& db) {
  std::ostringstream out;
  for (const auto& t : db.tables()) {
    out << "CREATE TABLE " << QuoteIfNeeded(t.name) << " (\n";
    for (size_t i = 0; i < t.columns.size(); ++i) {
      const auto& c = t.columns[i];
      out << "  " << QuoteIfNeeded(c.name);
      if (!c.type.empty()) out << ' ' << ToUpper(c.type);
      if (i + 1 < t.columns.size() || !t.primary_key.empty()) out << ',';
      out << '\n';
    }
    if (!t.primary_key.empty()) {
      out << "  PRIMARY KEY (";
      for (size_t i = 0; i < t.primary_key.size(); ++i) out << (i ? ", " : "") << QuoteIfNeeded(t.primary_key[i]);
      out << ")\n";
    }
    out << ");\n";
  }
  out << "Foreign keys:\n";
  if (db.foreign_keys().empty()) out << "(none)\n";
  for (const auto& fk : db.foreign_keys()) out << fk.from.Render() << " = " << fk.to.Render() << '\n';
  return out.str();
}

}  // namespace unjoin
