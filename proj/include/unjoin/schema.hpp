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

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace unjoin {

/// Raised when a schema violates its structural invariants.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ColumnDef {
  std::string name;
  std::string type;
  std::string description;
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;
  std::vector<std::string> primary_key;

  const ColumnDef* FindColumn(std::string_view column) const;
};

/// A `table.column` pair in original-schema terms.
struct QualifiedName {
  std::string table;
  std::string column;

  std::string Render() const { return table + "." + column; }
  friend bool operator==(const QualifiedName&, const QualifiedName&) = default;
  friend auto operator<=>(const QualifiedName&, const QualifiedName&) = default;
};

struct ForeignKey {
  QualifiedName from;
  QualifiedName to;
};

/// A multi-table relational schema. Immutable once built; identity comparisons on
/// table and column names are case-insensitive, rendering keeps original casing.
class DatabaseSchema {
 public:
  DatabaseSchema() = default;

  /// Validates uniqueness of table/column names and foreign-key endpoints.
  /// Throws SchemaError naming the first violation.
  static DatabaseSchema Create(std::string db_id, std::vector<TableDef> tables,
                               std::vector<ForeignKey> foreign_keys = {});

  const std::string& db_id() const { return db_id_; }
  const std::vector<TableDef>& tables() const { return tables_; }
  const std::vector<ForeignKey>& foreign_keys() const { return foreign_keys_; }

  const TableDef* FindTable(std::string_view name) const;
  std::optional<size_t> TableIndex(std::string_view name) const;
  const ColumnDef* FindColumn(std::string_view table, std::string_view column) const;
  size_t ColumnCount() const;

  /// Sub-schema restricted to the named tables, in the given order. Foreign keys survive
  /// only when both endpoints survive.
  DatabaseSchema Subset(const std::vector<std::string>& table_names) const;

  /// Copy with the given descriptions attached to matching columns.
  DatabaseSchema WithDescriptions(const class ColumnDescriptions& descriptions) const;

 private:
  std::string db_id_;
  std::vector<TableDef> tables_;
  std::vector<ForeignKey> foreign_keys_;
  std::unordered_map<std::string, size_t> table_index_;
};

/// Free-text descriptions keyed by (table, column), case-insensitive.
class ColumnDescriptions {
 public:
  void Set(std::string_view table, std::string_view column, std::string text);
  std::string_view Get(std::string_view table, std::string_view column) const;
  bool empty() const { return texts_.empty(); }

  /// Collects the descriptions carried on the schema's ColumnDefs.
  static ColumnDescriptions FromSchema(const DatabaseSchema& db);

 private:
  std::map<std::pair<std::string, std::string>, std::string> texts_;
};

/// One column of the flattened single-table view, with its provenance.
struct SimplifiedColumn {
  std::string qualified;  // rendered `Table.Column`
  QualifiedName origin;   // original casing
  size_t table_index = 0;
  size_t column_index = 0;
};

/// The single virtual table produced by flattening a DatabaseSchema. Resolution back to
/// original (table, column) always goes through the stored mapping.
class SimplifiedSchema {
 public:
  const std::string& virtual_table_name() const { return virtual_table_name_; }
  const std::vector<SimplifiedColumn>& entries() const { return entries_; }

  /// Case-insensitive lookup of a rendered qualified name.
  const SimplifiedColumn* Find(std::string_view qualified) const;
  /// Reverse direction of the bijection.
  const SimplifiedColumn* FindOrigin(std::string_view table, std::string_view column) const;

  /// Distinct original table names in first-appearance order.
  std::vector<std::string> OriginTables() const;

 private:
  friend SimplifiedSchema simplify_schema(const DatabaseSchema& db);

  std::string virtual_table_name_;
  std::vector<SimplifiedColumn> entries_;
  std::unordered_map<std::string, size_t> by_qualified_;
  std::map<std::pair<std::string, std::string>, size_t> by_origin_;
};

/// Flattens every table's columns into `Table.Column` entries, in table then column order.
/// Pure and deterministic; throws SchemaError if two entries render identically.
SimplifiedSchema simplify_schema(const DatabaseSchema& db);

/// Two-column listing: a `Table: <name>` header, then one line per entry with the
/// description padded into a second column.
std::string render_simplified(const SimplifiedSchema& s, const ColumnDescriptions* descriptions = nullptr);

/// `CREATE TABLE` style listing followed by `Foreign keys:` lines of the form `t1.c1 = t2.c2`.
std::string render_original(const DatabaseSchema& db);

}  // namespace unjoin
