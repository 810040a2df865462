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

#include "unjoin/exec.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "unjoin/util.hpp"

namespace unjoin {

std::string ExecStatusName(ExecStatus s) {
  switch (s) {
    case ExecStatus::kOk: return "ok";
    case ExecStatus::kRuntimeError: return "runtime_error";
    case ExecStatus::kTimeout: return "timeout";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point at;
  bool hit = false;
};

int OnProgress(void* p) {
  auto* d = static_cast<Deadline*>(p);
  if (Clock::now() >= d->at) {
    d->hit = true;
    return 1;
  }
  return 0;
}

std::string FileUri(const std::filesystem::path& path) {
  std::string uri = "file:";
  for (char c : std::filesystem::absolute(path).string()) {
    if (c == '?' || c == '#' || c == '%') {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", static_cast<unsigned char>(c));
      uri += buf;
    } else {
      uri += c;
    }
  }
  return uri + "?mode=ro";
}

}  // namespace

ExecOutcome execute(std::string_view sql, const std::filesystem::path& db_file, double timeout_s) {
  ExecOutcome out;
  auto start = Clock::now();
  auto finish = [&](ExecOutcome& o) -> ExecOutcome& {
    o.wall_s = std::chrono::duration<double>(Clock::now() - start).count();
    return o;
  };
  if (!std::filesystem::exists(db_file)) {
    out.error = "database file not found: " + db_file.string();
    return finish(out);
  }
  sqlite3* db = nullptr;
  int rc = sqlite3_open_v2(FileUri(db_file).c_str(), &db, SQLITE_OPEN_READONLY | SQLITE_OPEN_URI, nullptr);
  std::unique_ptr<sqlite3, int (*)(sqlite3*)> guard(db, sqlite3_close_v2);
  if (rc != SQLITE_OK) {
    out.error = db ? sqlite3_errmsg(db) : "cannot open database";
    return finish(out);
  }
  sqlite3_exec(db, "PRAGMA query_only = 1", nullptr, nullptr, nullptr);

  Deadline deadline{start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(timeout_s))};
  sqlite3_progress_handler(db, 1000, OnProgress, &deadline);

  const char* begin = sql.data();
  const char* tail = nullptr;
  sqlite3_stmt* raw = nullptr;
  rc = sqlite3_prepare_v2(db, begin, static_cast<int>(sql.size()), &raw, &tail);
  std::unique_ptr<sqlite3_stmt, int (*)(sqlite3_stmt*)> stmt(raw, sqlite3_finalize);
  if (rc != SQLITE_OK) {
    out.status = deadline.hit ? ExecStatus::kTimeout : ExecStatus::kRuntimeError;
    out.error = sqlite3_errmsg(db);
    return finish(out);
  }
  if (!stmt) {
    out.error = "empty statement";
    return finish(out);
  }
  std::string_view rest(tail, static_cast<size_t>(begin + sql.size() - tail));
  while (!rest.empty() && (std::isspace(static_cast<unsigned char>(rest.front())) || rest.front() == ';'))
    rest.remove_prefix(1);
  if (!rest.empty()) {
    out.error = "more than one statement";
    return finish(out);
  }

  int ncol = sqlite3_column_count(stmt.get());
  while ((rc = sqlite3_step(stmt.get())) == SQLITE_ROW) {
    Row row;
    row.reserve(ncol);
    for (int i = 0; i < ncol; ++i) {
      switch (sqlite3_column_type(stmt.get(), i)) {
        case SQLITE_NULL: row.emplace_back(std::monostate{}); break;
        case SQLITE_INTEGER: row.emplace_back(static_cast<int64_t>(sqlite3_column_int64(stmt.get(), i))); break;
        case SQLITE_FLOAT: row.emplace_back(sqlite3_column_double(stmt.get(), i)); break;
        default: {
          const auto* p = static_cast<const char*>(sqlite3_column_blob(stmt.get(), i));
          int n = sqlite3_column_bytes(stmt.get(), i);
          row.emplace_back(std::string(p ? p : "", static_cast<size_t>(n)));
        }
      }
    }
    out.rows.push_back(std::move(row));
  }
  if (rc != SQLITE_DONE) {
    out.rows.clear();
    out.status = deadline.hit ? ExecStatus::kTimeout : ExecStatus::kRuntimeError;
    out.error = deadline.hit ? "timed out after " + FormatFixed2(timeout_s) + " s" : sqlite3_errmsg(db);
    return finish(out);
  }
  out.status = ExecStatus::kOk;
  return finish(out);
}

namespace {

bool IsNumeric(const Value& v) { return std::holds_alternative<int64_t>(v) || std::holds_alternative<double>(v); }

double AsDouble(const Value& v) {
  return std::holds_alternative<int64_t>(v) ? static_cast<double>(std::get<int64_t>(v)) : std::get<double>(v);
}

// Total order used to line up multisets before the tolerant pairwise check.
int Rank(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return 0;
  if (IsNumeric(v)) return 1;
  return 2;
}

bool ValueLess(const Value& a, const Value& b) {
  int ra = Rank(a), rb = Rank(b);
  if (ra != rb) return ra < rb;
  if (ra == 1) return AsDouble(a) < AsDouble(b);
  if (ra == 2) return TrimRight(std::get<std::string>(a)) < TrimRight(std::get<std::string>(b));
  return false;
}

bool RowLess(const Row& a, const Row& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ValueLess);
}

// Perfect matching between rows under tolerant equality (Kuhn's algorithm).
bool MultisetMatch(const std::vector<Row>& a, const std::vector<Row>& b) {
  size_t n = a.size();
  std::vector<std::vector<size_t>> adj(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (RowsEqual(a[i], b[j])) adj[i].push_back(j);
  std::vector<long> match_b(n, -1);
  std::vector<char> seen;
  std::function<bool(size_t)> augment = [&](size_t i) {
    for (size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (match_b[j] < 0 || augment(static_cast<size_t>(match_b[j]))) {
        match_b[j] = static_cast<long>(i);
        return true;
      }
    }
    return false;
  };
  for (size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(i)) return false;
  }
  return true;
}

constexpr size_t kExactMatchingLimit = 2000;

}  // namespace

bool ValuesEqual(const Value& a, const Value& b) {
  if (IsNumeric(a) && IsNumeric(b)) {
    if (std::holds_alternative<int64_t>(a) && std::holds_alternative<int64_t>(b))
      return std::get<int64_t>(a) == std::get<int64_t>(b);
    return std::fabs(AsDouble(a) - AsDouble(b)) <= kNumericTolerance;
  }
  if (Rank(a) != Rank(b)) return false;
  if (Rank(a) == 0) return true;
  return TrimRight(std::get<std::string>(a)) == TrimRight(std::get<std::string>(b));
}

bool RowsEqual(const Row& a, const Row& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!ValuesEqual(a[i], b[i])) return false;
  return true;
}

bool compare_results(const ExecOutcome& gold, const ExecOutcome& pred, bool gold_has_order_by) {
  if (!gold.ok() || !pred.ok()) return false;
  if (gold.rows.size() != pred.rows.size()) return false;
  if (gold_has_order_by) {
    for (size_t i = 0; i < gold.rows.size(); ++i)
      if (!RowsEqual(gold.rows[i], pred.rows[i])) return false;
    return true;
  }
  auto a = gold.rows, b = pred.rows;
  std::stable_sort(a.begin(), a.end(), RowLess);
  std::stable_sort(b.begin(), b.end(), RowLess);
  bool aligned = true;
  for (size_t i = 0; i < a.size() && aligned; ++i) aligned = RowsEqual(a[i], b[i]);
  if (aligned) return true;
  // Sorting can misalign rows whose values differ by less than the tolerance.
  if (a.size() <= kExactMatchingLimit) return MultisetMatch(a, b);
  return false;
}

nlohmann::json ValueToJson(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return nullptr;
  if (std::holds_alternative<int64_t>(v)) return std::get<int64_t>(v);
  if (std::holds_alternative<double>(v)) {
    double d = std::get<double>(v);
    if (!std::isfinite(d)) return std::to_string(d);
    return d;
  }
  return SanitizeUtf8(std::get<std::string>(v));
}

Value ValueFromJson(const nlohmann::json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_number_integer()) return j.get<int64_t>();
  if (j.is_number()) return j.get<double>();
  return j.get<std::string>();
}

}  // namespace unjoin
