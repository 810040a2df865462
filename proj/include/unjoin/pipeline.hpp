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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "unjoin/catalogue.hpp"
#include "unjoin/correction.hpp"
#include "unjoin/llm.hpp"
#include "unjoin/prompting.hpp"
#include "unjoin/schema.hpp"

namespace unjoin {

enum class Method { kUnjoinSp, kUnjoinMp, kCot, kCotSs };

Method ParseMethod(std::string_view name);
std::string MethodName(Method m);

struct EvalItem {
  std::string id;  // {db_id}:{index}
  std::string db_id;
  std::string question;
  std::string gold_sql;
  std::string evidence;
  int gold_table_count = 0;

  /// Question text handed to prompts; evidence is appended when present.
  std::string PromptQuestion() const;
};

struct StageCompletion {
  std::string stage;
  std::string key;
  std::string completion;
  double latency_s = 0.0;  // timings only, never in records
};

struct PredictedQuery {
  Method method = Method::kUnjoinMp;
  std::optional<std::string> raw_intermediate_sql;
  std::optional<std::string> intermediate_sql;  // after correction against the simplified schema
  std::optional<std::string> raw_final_sql;
  std::optional<std::string> final_sql;
  std::optional<CorrectionReport> intermediate_correction;
  std::optional<CorrectionReport> final_correction;
  std::vector<StageCompletion> completions;
  std::vector<std::string> warnings;
  bool failed = false;
  std::string failure_reason;  // e.g. "step1-extract"
  std::string failure_detail;

  nlohmann::json ToJson() const;
};

nlohmann::json CorrectionReportToJson(const CorrectionReport& r);

/// What every method needs besides the item and its schema.
struct MethodContext {
  const PromptLibrary& prompts;
  LlmClient& llm;
};

PredictedQuery run_unjoin_mp(const EvalItem& item, const DatabaseSchema& db, const ColumnDescriptions* descriptions,
                             MethodContext& ctx);
PredictedQuery run_unjoin_sp(const EvalItem& item, const DatabaseSchema& db, const ColumnDescriptions* descriptions,
                             MethodContext& ctx);
PredictedQuery run_baseline(const EvalItem& item, const DatabaseSchema& db, const ColumnDescriptions* descriptions,
                            MethodContext& ctx, BaselineKind kind);
PredictedQuery run_method(Method method, const EvalItem& item, const DatabaseSchema& db,
                          const ColumnDescriptions* descriptions, MethodContext& ctx);

struct RetrievedTable {
  std::string db_id;
  std::string table_name;
  double score = 0.0;
};

/// question_id -> ranked tables, from a JSON-lines file.
std::map<std::string, std::vector<RetrievedTable>> LoadRetrievalList(const std::filesystem::path& path);

class PoolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PoolTable {
  std::string name;  // name inside the pool
  std::string source_db;
  std::string source_table;
};

struct TablePool {
  DatabaseSchema schema;
  std::vector<PoolTable> tables;
  ColumnDescriptions descriptions;

  bool Contains(std::string_view db_id, std::string_view table) const;
};

constexpr size_t kDefaultTopK = 10;

/// Builds one schema from the top-k listed tables. Later tables whose name is taken are renamed `name__dbid`.
TablePool assemble_pool(const std::vector<RetrievedTable>& retrieval, const SchemaCatalogue& catalogue,
                        size_t top_k = kDefaultTopK,
                        const std::map<std::string, ColumnDescriptions>* descriptions = nullptr);

}  // namespace unjoin
