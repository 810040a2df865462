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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unjoin/schema.hpp"

namespace unjoin {

struct Substitution {
  std::string original;
  std::string replacement;
  size_t distance = 0;
  size_t offset = 0;  // byte offset of the replaced token in the input
};

struct CorrectionReport {
  std::vector<Substitution> substitutions;
  /// Out-of-schema identifiers with no candidate inside the threshold, left as written.
  std::vector<std::string> unresolved;

  bool empty() const { return substitutions.empty() && unresolved.empty(); }
};

struct CorrectionResult {
  std::string sql;
  CorrectionReport report;
};

/// Largest edit distance at which `candidate` may replace an unknown identifier.
size_t CorrectionThreshold(size_t candidate_length);

/// Whether `candidate` may replace `token` at the given distance: within the threshold,
/// or one name is a prefix of the other (abbreviation) with the shorter at least 3 chars.
bool IsEligibleReplacement(std::string_view token, std::string_view candidate, size_t distance);

/// Repairs table and column identifiers that are not in `schema` by nearest valid name.
/// Works on the token stream so near-valid SQL survives; keywords, literals, operators and
/// alias definitions are never touched. Idempotent.
CorrectionResult correct_identifiers(std::string_view sql, const DatabaseSchema& schema);

/// Same repair against the single virtual table: FROM must name the virtual table and
/// `Table.Column` references must match an entry of the mapping.
CorrectionResult correct_identifiers(std::string_view sql, const SimplifiedSchema& schema);

}  // namespace unjoin
