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
#include <string>
#include <string_view>
#include <vector>

namespace unjoin::sql {

enum class TokenKind {
  kWord,          // bare identifier or keyword
  kQuotedIdent,   // `name` or [name]
  kDoubleQuoted,  // "name": identifier or string literal depending on resolution
  kString,        // 'text'
  kNumber,
  kParameter,     // ?, ?1, :name, @name, $name
  kPunct,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  size_t offset = 0;
  size_t length = 0;
  std::string text;   // raw source bytes
  std::string value;  // unquoted value for quoted kinds, upper-cased for punctuation-free words stays raw
  bool unterminated = false;

  bool IsWord(std::string_view upper_keyword) const;
  bool IsPunct(std::string_view p) const { return kind == TokenKind::kPunct && text == p; }
  bool IsIdentifierLike() const {
    return kind == TokenKind::kWord || kind == TokenKind::kQuotedIdent || kind == TokenKind::kDoubleQuoted;
  }
};

/// Splits SQL into tokens; comments and whitespace are dropped. Never throws: unterminated
/// quotes run to end of input and are flagged. The final token is always kEnd.
std::vector<Token> Tokenize(std::string_view sql);

/// Words that always act as grammar in SELECT statements and are never read as names.
bool IsReservedWord(std::string_view word);

/// Reserved words plus contextual keywords (ASC, DESC, NULLS, ...) that are never
/// identifier candidates for repair.
bool IsKeywordLike(std::string_view word);

}  // namespace unjoin::sql
