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
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "unjoin/dataset.hpp"
#include "unjoin/exec.hpp"
#include "unjoin/llm.hpp"
#include "unjoin/metrics.hpp"
#include "unjoin/pipeline.hpp"
#include "unjoin/sqlref.hpp"

namespace unjoin {

struct RunConfig {
  Flavor flavor = Flavor::kSpider;
  std::filesystem::path root;
  std::string split = "dev.json";
  Method method = Method::kUnjoinMp;
  CacheMode cache_mode = CacheMode::kRecord;
  std::filesystem::path cache_dir;  // defaults to <out>/cache
  LlmConfig llm;
  size_t workers = 4;
  size_t top_k = kDefaultTopK;
  std::filesystem::path retrieval;  // open-book when set
  std::filesystem::path templates;  // defaults to the shipped templates
  std::filesystem::path out;
  double exec_timeout_s = kDefaultTimeoutS;
  size_t limit = 0;  // 0 = every filtered item

  /// Fills defaults and checks cross-field rules; throws ConfigError.
  void Resolve();
  /// Full resolved configuration plus template hashes and evaluation conventions.
  nlohmann::json ToJson(const PromptLibrary& prompts) const;
  /// Fields present in `j` override `base`.
  static RunConfig FromJson(const nlohmann::json& j, RunConfig base);
};

struct ItemTiming {
  std::string item_id;
  double gold_exec_s = 0;
  double pred_exec_s = 0;
  std::vector<double> llm_latency_s;
};

/// One item's full outcome, serialized as one records.jsonl line.
struct EvalRecord {
  EvalItem item;
  Method method = Method::kUnjoinMp;
  PredictedQuery prediction;
  ExecOutcome gold_exec;
  std::optional<ExecOutcome> pred_exec;
  bool qe = false;
  bool em = false;
  std::optional<RefExtraction> gold_refs;
  std::string gold_refs_error;
  std::optional<RefSet> pred_refs;
  std::string pred_refs_error;
  PrecisionRecall table;
  PrecisionRecall column;
  nlohmann::json retrieval;  // open-book details, null otherwise
  ItemTiming timing;

  nlohmann::json ToJson() const;
};

/// Inputs to score_run and bucket_by_table_count read back from a record line.
ScoredItem ScoredFromRecord(const nlohmann::json& record);

/// Summary document derived only from record lines and the run configuration.
nlohmann::json SummarizeRecords(const std::vector<nlohmann::json>& records, const nlohmann::json& run_config);

std::string SummaryBytes(const nlohmann::json& summary);

std::vector<nlohmann::json> ReadRecords(const std::filesystem::path& path);

struct RunResult {
  std::vector<nlohmann::json> records;
  nlohmann::json summary;
  size_t filtered_items = 0;
};

/// Loads, filters, runs the method over every item and writes records.jsonl, timings.jsonl,
/// run_config.json, summary.json and buckets.csv under cfg.out.
RunResult run_evaluation(RunConfig cfg, std::unique_ptr<Transport> transport = nullptr);

/// Evaluates one item against an already loaded dataset.
EvalRecord evaluate_item(const EvalItem& item, const Dataset& ds, const RunConfig& cfg, MethodContext& ctx,
                         const std::map<std::string, std::vector<RetrievedTable>>* retrieval);

}  // namespace unjoin
