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

#include "unjoin/sql_lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

#include "unjoin/util.hpp"

namespace unjoin::sql {

namespace {

const std::unordered_set<std::string>& Reserved() {
  static const std::unordered_set<std::string> kWords = {
      "ALL",     "AND",       "AS",     "BETWEEN", "BY",      "CASE",   "CAST",      "COLLATE", "CROSS",
      "DISTINCT", "ELSE",     "END",    "ESCAPE",  "EXCEPT",  "EXISTS", "FROM",      "FULL",    "GLOB",
      "GROUP",   "HAVING",    "IN",     "INNER",   "INTERSECT", "IS",   "ISNULL",    "JOIN",    "LEFT",
      "LIKE",    "LIMIT",     "MATCH",  "NATURAL", "NOT",     "NOTNULL", "NULL",     "OFFSET",  "ON",
      "OR",      "ORDER",     "OUTER",  "OVER",    "REGEXP",  "RIGHT",  "SELECT",    "THEN",    "UNION",
      "USING",   "VALUES",    "WHEN",   "WHERE",   "WINDOW",  "WITH",
  };
  return kWords;
}

const std::unordered_set<std::string>& Contextual() {
  static const std::unordered_set<std::string> kWords = {
      "ASC",       "DESC",      "NULLS",     "FIRST",        "LAST",         "RECURSIVE", "PARTITION",
      "FILTER",    "ROWS",      "RANGE",     "GROUPS",       "UNBOUNDED",    "PRECEDING", "FOLLOWING",
      "CURRENT",   "ROW",       "TRUE",      "FALSE",        "CURRENT_DATE", "CURRENT_TIME",
      "CURRENT_TIMESTAMP",      "EXCLUDE",   "TIES",         "OTHERS",       "NO",        "INTERVAL",
      "TOP",       "FETCH",     "NEXT",      "ONLY",         "MATERIALIZED", "INDEXED",
  };
  return kWords;
}

bool IsIdentStart(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool IsIdentChar(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }

}  // namespace

bool Token::IsWord(std::string_view upper_keyword) const {
  return kind == TokenKind::kWord && IEquals(text, upper_keyword);
}

bool IsReservedWord(std::string_view word) { return Reserved().count(ToUpper(word)) > 0; }

bool IsKeywordLike(std::string_view word) {
  auto upper = ToUpper(word);
  return Reserved().count(upper) > 0 || Contextual().count(upper) > 0;
}

std::vector<Token> Tokenize(std::string_view sql) {
  std::vector<Token> out;
  size_t i = 0;
  const size_t n = sql.size();
  auto emit = [&](TokenKind kind, size_t start, size_t end, std::string value, bool unterminated = false) {
    Token t;
    t.kind = kind;
    t.offset = start;
    t.length = end - start;
    t.text = std::string(sql.substr(start, end - start));
    t.value = std::move(value);
    t.unterminated = unterminated;
    out.push_back(std::move(t));
  };
  // Quoted run closed by `close`; a doubled close char is an escaped literal char.
  auto quoted = [&](size_t start, char close, bool doubling) {
    std::string value;
    size_t j = start + 1;
    while (j < n) {
      if (sql[j] == close) {
        if (doubling && j + 1 < n && sql[j + 1] == close) {
          value.push_back(close);
          j += 2;
          continue;
        }
        return std::make_tuple(j + 1, value, false);
      }
      value.push_back(sql[j++]);
    }
    return std::make_tuple(n, value, true);
  };

  while (i < n) {
    auto c = static_cast<unsigned char>(sql[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (c == '-' && i + 1 < n && sql[i + 1] == '-') {
      while (i < n && sql[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < n && sql[i + 1] == '*') {
      size_t end = sql.find("*/", i + 2);
      i = end == std::string_view::npos ? n : end + 2;
    } else if (c == '\'') {
      auto [end, value, open] = quoted(i, '\'', true);
      emit(TokenKind::kString, i, end, value, open);
      i = end;
    } else if (c == '"') {
      auto [end, value, open] = quoted(i, '"', true);
      emit(TokenKind::kDoubleQuoted, i, end, value, open);
      i = end;
    } else if (c == '`') {
      auto [end, value, open] = quoted(i, '`', true);
      emit(TokenKind::kQuotedIdent, i, end, value, open);
      i = end;
    } else if (c == '[') {
      auto [end, value, open] = quoted(i, ']', false);
      emit(TokenKind::kQuotedIdent, i, end, value, open);
      i = end;
    } else if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(sql[i + 1])))) {
      size_t j = i;
      if (c == '0' && j + 1 < n && (sql[j + 1] == 'x' || sql[j + 1] == 'X')) {
        j += 2;
        while (j < n && std::isxdigit(static_cast<unsigned char>(sql[j]))) ++j;
      } else {
        while (j < n && (std::isdigit(static_cast<unsigned char>(sql[j])) || sql[j] == '.')) ++j;
        if (j < n && (sql[j] == 'e' || sql[j] == 'E')) {
          size_t k = j + 1;
          if (k < n && (sql[k] == '+' || sql[k] == '-')) ++k;
          if (k < n && std::isdigit(static_cast<unsigned char>(sql[k]))) {
            j = k;
            while (j < n && std::isdigit(static_cast<unsigned char>(sql[j]))) ++j;
          }
        }
      }
      emit(TokenKind::kNumber, i, j, std::string(sql.substr(i, j - i)));
      i = j;
    } else if (IsIdentStart(c)) {
      size_t j = i + 1;
      while (j < n && IsIdentChar(static_cast<unsigned char>(sql[j]))) ++j;
      emit(TokenKind::kWord, i, j, std::string(sql.substr(i, j - i)));
      i = j;
    } else if (c == '?' || ((c == ':' || c == '@' || c == '$') && i + 1 < n &&
                            IsIdentChar(static_cast<unsigned char>(sql[i + 1])))) {
      size_t j = i + 1;
      while (j < n && IsIdentChar(static_cast<unsigned char>(sql[j]))) ++j;
      emit(TokenKind::kParameter, i, j, std::string(sql.substr(i, j - i)));
      i = j;
    } else {
      static constexpr std::array<std::string_view, 10> kTwoChar = {"||", "==", "!=", "<>", "<=", ">=",
                                                                   "<<", ">>", "->", "::"};
      size_t len = 1;
      if (i + 1 < n) {
        auto two = sql.substr(i, 2);
        for (auto op : kTwoChar)
          if (two == op) len = 2;
        if (sql.substr(i, 3) == "->>") len = 3;
      }
      emit(TokenKind::kPunct, i, i + len, std::string(sql.substr(i, len)));
      i += len;
    }
  }
  Token end;
  end.kind = TokenKind::kEnd;
  end.offset = n;
  out.push_back(std::move(end));
  return out;
}

}  // namespace unjoin::sql
