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

#include "unjoin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "unjoin/util.hpp"

namespace unjoin {

PrecisionRecall SetPrecisionRecall(const std::set<std::string>& pred, const std::set<std::string>& gold) {
  size_t hit = 0;
  for (const auto& p : pred) hit += gold.count(p);
  PrecisionRecall pr;
  if (pred.empty())
    pr.precision = gold.empty() ? 1.0 : 0.0;
  else
    pr.precision = static_cast<double>(hit) / static_cast<double>(pred.size());
  pr.recall = gold.empty() ? 1.0 : static_cast<double>(hit) / static_cast<double>(gold.size());
  return pr;
}

double Percent2(double fraction) { return std::round(fraction * 100.0 * 100.0) / 100.0; }

nlohmann::json RunSummary::ToJson() const {
  return {{"n", n},
          {"qe", qe},
          {"em", em},
          {"table_precision", table_precision},
          {"table_recall", table_recall},
          {"column_precision", column_precision},
          {"column_recall", column_recall}};
}

RunSummary score_run(const std::vector<ScoredItem>& items) {
  if (items.empty()) throw std::invalid_argument("cannot score an empty run");
  double qe = 0, em = 0, tp = 0, tr = 0, cp = 0, cr = 0;
  for (const auto& it : items) {
    qe += it.qe;
    em += it.em;
    tp += it.table.precision;
    tr += it.table.recall;
    cp += it.column.precision;
    cr += it.column.recall;
  }
  double n = static_cast<double>(items.size());
  RunSummary s;
  s.n = items.size();
  s.qe = Percent2(qe / n);
  s.em = Percent2(em / n);
  s.table_precision = Percent2(tp / n);
  s.table_recall = Percent2(tr / n);
  s.column_precision = Percent2(cp / n);
  s.column_recall = Percent2(cr / n);
  return s;
}

std::vector<TableCountBucket> bucket_by_table_count(const std::vector<ScoredItem>& items) {
  struct Acc {
    size_t count = 0;
    double table = 0, column = 0;
  };
  std::map<int, Acc> acc;  // key 5 stands for 5 and above
  for (const auto& it : items) {
    int key = std::clamp(it.gold_table_count, 1, 5);
    auto& a = acc[key];
    ++a.count;
    a.table += it.table.recall;
    a.column += it.column.recall;
  }
  std::vector<TableCountBucket> out;
  for (const auto& [key, a] : acc) {
    TableCountBucket b;
    b.label = key == 5 ? "5+" : std::to_string(key);
    b.count = a.count;
    b.table_recall = Percent2(a.table / static_cast<double>(a.count));
    b.column_recall = Percent2(a.column / static_cast<double>(a.count));
    out.push_back(b);
  }
  return out;
}

std::string BucketsCsv(const std::vector<TableCountBucket>& buckets) {
  std::string out = "tables,count,table_recall,column_recall\n";
  for (const auto& b : buckets)
    out += b.label + "," + std::to_string(b.count) + "," + FormatFixed2(b.table_recall) + "," +
           FormatFixed2(b.column_recall) + "\n";
  return out;
}

}  // namespace unjoin
