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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "unjoin/schema.hpp"
#include "unjoin/sql_ast.hpp"

namespace unjoin {

/// Base tables and base-qualified columns referenced by one query, in canonical lowercase.
struct RefSet {
  std::set<std::string> tables;
  std::set<std::string> columns;  // `table.column`

  void AddColumn(std::string_view table, std::string_view column);
  void AddTable(std::string_view table);
  friend bool operator==(const RefSet&, const RefSet&) = default;
};

struct RefExtraction {
  RefSet refs;
  /// Names that matched nothing in scope (hallucinated tables or columns).
  std::vector<std::string> unresolved;
  /// Unqualified columns owned by more than one table in scope; every owner was counted.
  std::vector<std::string> ambiguous;
};

/// Walks every query block (CTEs, subqueries, set-operation branches) and collects the base
/// tables in FROM/JOIN plus every column reference resolved through aliases. `*` expands to the
/// columns of the block's FROM tables. CTE and derived-table names never enter the result.
/// Throws sql::ParseError.
RefExtraction extract_refs(std::string_view sql, const DatabaseSchema& schema);

struct SimplifiedRefExtraction {
  RefSet refs;  // original-schema terms
  std::vector<std::string> unresolved;
};

/// Same walk over SQL written against the single virtual table; each `Table.Column`
/// reference is mapped through the schema's bijection. Throws sql::ParseError.
SimplifiedRefExtraction extract_refs_simplified(std::string_view sql, const SimplifiedSchema& s);

/// True when the query touches at least two distinct base tables. Throws sql::ParseError.
bool is_multi_table(std::string_view gold_sql, const DatabaseSchema& schema);

}  // namespace unjoin
