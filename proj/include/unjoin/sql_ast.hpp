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
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace unjoin::sql {

struct Query;

/// Failure to parse, with the byte offset where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), message_(message), offset_(offset) {}
  const std::string& message() const { return message_; }
  size_t offset() const { return offset_; }

 private:
  std::string message_;
  size_t offset_;
};

enum class ExprKind {
  kColumn,     // names = [schema.]?[table.]?column
  kLiteral,    // op holds raw text
  kParameter,
  kUnary,      // op, args[0]
  kBinary,     // op, args[0], args[1]
  kFunction,   // op = name; args; window_args for OVER/FILTER
  kCase,       // args: [operand?] when/then pairs [else]
  kCast,       // op = type name, args[0]
  kSubquery,   // scalar subquery
  kExists,
  kIn,         // args[0] IN (args[1..]) or subquery
  kBetween,    // args[0] BETWEEN args[1] AND args[2]
  kLike,       // op = LIKE/GLOB/REGEXP/MATCH; args[0], args[1], escape?
  kIsNull,     // args[0] IS NULL (negated for NOT NULL)
  kList,       // parenthesised row value
};

struct Expr {
  Expr(ExprKind k, size_t off) : kind(k), offset(off) {}
  ~Expr();

  ExprKind kind;
  size_t offset;
  std::string op;
  std::vector<std::string> names;
  bool double_quoted = false;  // single-part name written as "..."
  bool negated = false;
  bool distinct = false;
  bool star_argument = false;  // COUNT(*)
  std::vector<std::unique_ptr<Expr>> args;
  std::vector<std::unique_ptr<Expr>> window_args;  // PARTITION BY / ORDER BY / FILTER terms
  std::unique_ptr<Query> subquery;
};

using ExprPtr = std::unique_ptr<Expr>;

struct OrderTerm {
  ExprPtr expr;
  bool descending = false;
};

struct SelectItem {
  ExprPtr expr;                            // null for star items
  bool star = false;
  std::vector<std::string> star_qualifier;  // `t.*`
  std::string alias;
};

struct TableRef {
  enum class Kind { kTable, kSubquery, kJoin, kFunction };

  TableRef(Kind k, size_t off) : kind(k), offset(off) {}
  ~TableRef();

  Kind kind;
  size_t offset;
  std::vector<std::string> name;  // [schema.]table, or function name
  std::string alias;
  std::unique_ptr<Query> subquery;
  std::unique_ptr<TableRef> left, right;
  std::string join_operator;  // ",", "JOIN", "LEFT JOIN", ...
  bool natural = false;
  ExprPtr on;
  std::vector<std::string> using_columns;
  std::vector<ExprPtr> function_args;
};

struct SelectCore {
  bool distinct = false;
  std::vector<SelectItem> items;
  std::unique_ptr<TableRef> from;
  ExprPtr where;
  std::vector<ExprPtr> group_by;
  ExprPtr having;
  std::vector<ExprPtr> window_terms;           // named WINDOW definitions
  std::vector<std::vector<ExprPtr>> values;    // VALUES rows
  std::unique_ptr<Query> nested;               // parenthesised compound member
};

struct CommonTableExpr {
  std::string name;
  std::vector<std::string> columns;
  std::unique_ptr<Query> query;
};

struct Query {
  bool recursive = false;
  std::vector<CommonTableExpr> ctes;
  std::vector<SelectCore> cores;
  std::vector<std::string> compound_operators;  // between consecutive cores
  std::vector<OrderTerm> order_by;
  ExprPtr limit;
  ExprPtr offset;
};

/// Parses one SELECT statement (optionally WITH-prefixed, compound, followed by `;`).
/// Throws ParseError.
std::unique_ptr<Query> Parse(std::string_view sql);

/// True when the outermost query carries an ORDER BY clause.
bool HasTopLevelOrderBy(std::string_view sql);

}  // namespace unjoin::sql
