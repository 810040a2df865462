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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace unjoin {

/// NULL, INTEGER, REAL, TEXT; blobs are kept as their raw bytes in the string slot.
using Value = std::variant<std::monostate, int64_t, double, std::string>;
using Row = std::vector<Value>;

enum class ExecStatus { kOk, kRuntimeError, kTimeout };

std::string ExecStatusName(ExecStatus s);

struct ExecOutcome {
  ExecStatus status = ExecStatus::kRuntimeError;
  std::vector<Row> rows;  // only when ok
  std::string error;
  double wall_s = 0.0;

  bool ok() const { return status == ExecStatus::kOk; }
};

constexpr double kDefaultTimeoutS = 30.0;

/// Runs one statement against a read-only connection.
ExecOutcome execute(std::string_view sql, const std::filesystem::path& db_file, double timeout_s = kDefaultTimeoutS);

constexpr double kNumericTolerance = 1e-6;

bool ValuesEqual(const Value& a, const Value& b);
bool RowsEqual(const Row& a, const Row& b);

bool compare_results(const ExecOutcome& gold, const ExecOutcome& pred, bool gold_has_order_by);

nlohmann::json ValueToJson(const Value& v);
Value ValueFromJson(const nlohmann::json& j);

}  // namespace unjoin
