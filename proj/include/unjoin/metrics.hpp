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
#include <vector>

#include <json.hpp>

namespace unjoin {

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

/// Empty prediction against a non-empty gold scores precision 0; empty gold scores recall 1.
PrecisionRecall SetPrecisionRecall(const std::set<std::string>& pred, const std::set<std::string>& gold);

/// Per-query values a summary is computed from.
struct ScoredItem {
  bool qe = false;
  bool em = false;
  PrecisionRecall table;
  PrecisionRecall column;
  int gold_table_count = 0;
};

struct RunSummary {
  size_t n = 0;
  double qe = 0, em = 0;  // percentages, two decimals
  double table_precision = 0, table_recall = 0;
  double column_precision = 0, column_recall = 0;

  nlohmann::json ToJson() const;
};

/// Throws std::invalid_argument on an empty run.
RunSummary score_run(const std::vector<ScoredItem>& items);

struct TableCountBucket {
  std::string label;  // "2", "3", "4", "5+" ("1" only for single-table items)
  size_t count = 0;
  double table_recall = 0;   // percentage, two decimals
  double column_recall = 0;
};

/// Populated buckets in ascending table count.
std::vector<TableCountBucket> bucket_by_table_count(const std::vector<ScoredItem>& items);

std::string BucketsCsv(const std::vector<TableCountBucket>& buckets);

/// Rounds a fraction in [0, 1] to a percentage with two decimals.
double Percent2(double fraction);

}  // namespace unjoin
