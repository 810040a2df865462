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

#include "unjoin/pipeline.hpp"

#include <algorithm>
#include <set>

#include "unjoin/util.hpp"

namespace unjoin {

using nlohmann::json;

Method ParseMethod(std::string_view name) {
  std::string n = ToLower(name);
  if (n == "unjoin-sp") return Method::kUnjoinSp;
  if (n == "unjoin-mp") return Method::kUnjoinMp;
  if (n == "cot") return Method::kCot;
  if (n == "cot-ss") return Method::kCotSs;
  throw ConfigError("unknown method '" + std::string(name) + "' (expected unjoin-sp, unjoin-mp, cot, cot-ss)");
}

std::string MethodName(Method m) {
  switch (m) {
    case Method::kUnjoinSp: return "unjoin-sp";
    case Method::kUnjoinMp: return "unjoin-mp";
    case Method::kCot: return "cot";
    case Method::kCotSs: return "cot-ss";
  }
  return "?";
}

std::string EvalItem::PromptQuestion() const {
  if (Trim(evidence).empty()) return question;
  return question + "\nEvidence: " + std::string(Trim(evidence));
}

json CorrectionReportToJson(const CorrectionReport& r) {
  json subs = json::array();
  for (const auto& s : r.substitutions)
    subs.push_back({{"original", s.original}, {"replacement", s.replacement}, {"distance", s.distance}, {"offset", s.offset}});
  return {{"substitutions", subs}, {"unresolved", r.unresolved}};
}

json PredictedQuery::ToJson() const {
  auto opt = [](const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); };
  json completions_json = json::array();
  for (const auto& c : completions)
    completions_json.push_back({{"stage", c.stage}, {"key", c.key}, {"completion", c.completion}});
  return {{"method", MethodName(method)},
          {"raw_intermediate_sql", opt(raw_intermediate_sql)},
          {"intermediate_sql", opt(intermediate_sql)},
          {"raw_final_sql", opt(raw_final_sql)},
          {"final_sql", opt(final_sql)},
          {"intermediate_correction",
           intermediate_correction ? CorrectionReportToJson(*intermediate_correction) : json(nullptr)},
          {"final_correction", final_correction ? CorrectionReportToJson(*final_correction) : json(nullptr)},
          {"completions", completions_json},
          {"warnings", warnings},
          {"failed", failed},
          {"failure_reason", failure_reason},
          {"failure_detail", failure_detail}};
}

namespace {

void Fail(PredictedQuery& p, const std::string& reason, const std::string& detail) {
  p.failed = true;
  p.failure_reason = reason;
  p.failure_detail = detail;
  p.final_sql.reset();
}

// Replay misses propagate: a run with an incomplete cache is not a valid run.
bool Complete(PredictedQuery& p, MethodContext& ctx, const std::string& stage, const std::string& prompt,
              std::string* completion) {
  try {
    auto e = ctx.llm.Exchange(prompt);
    p.completions.push_back({stage, e.key, e.completion, e.latency_s});
    *completion = e.completion;
    return true;
  } catch (const ReplayMiss&) {
    throw;
  } catch (const LlmError& e) {
    Fail(p, stage + "-complete", e.what());
    return false;
  }
}

bool Extract(PredictedQuery& p, const std::string& stage, const std::string& completion, std::string* sql) {
  try {
    *sql = extract_sql(completion);
    return true;
  } catch (const ExtractionError& e) {
    Fail(p, stage + "-extract", e.what());
    return false;
  }
}

void SetIntermediate(PredictedQuery& p, const std::string& raw, const SimplifiedSchema& s) {
  auto corrected = correct_identifiers(raw, s);
  p.raw_intermediate_sql = raw;
  p.intermediate_sql = corrected.sql;
  p.intermediate_correction = corrected.report;
}

void SetFinal(PredictedQuery& p, const std::string& raw, const DatabaseSchema& db) {
  auto corrected = correct_identifiers(raw, db);
  p.raw_final_sql = raw;
  p.final_sql = corrected.sql;
  p.final_correction = corrected.report;
}

}  // namespace

PredictedQuery run_unjoin_mp(const EvalItem& item, const DatabaseSchema& db, const ColumnDescriptions* descriptions,
                             MethodContext& ctx) {
  PredictedQuery p;
  p.method = Method::kUnjoinMp;
  const std::string question = item.PromptQuestion();
  SimplifiedSchema s = simplify_schema(db);

  std::string completion, raw;
  if (!Complete(p, ctx, "step1", build_mp_step1_prompt(ctx.prompts, s, question, descriptions), &completion)) return p;
  if (!Extract(p, "step1", completion, &raw)) return p;
  SetIntermediate(p, raw, s);

  auto step2 = build_mp_step2_prompt(ctx.prompts, s, *p.intermediate_sql, question, db, descriptions);
  if (!Complete(p, ctx, "step2", step2, &completion)) return p;
  if (!Extract(p, "step2", completion, &raw)) return p;
  SetFinal(p, raw, db);
  return p;
}

PredictedQuery run_unjoin_sp(const EvalItem& item, const DatabaseSchema& db, const ColumnDescriptions* descriptions,
                             MethodContext& ctx) {
  PredictedQuery p;
  p.method = Method::kUnjoinSp;
  SimplifiedSchema s = simplify_schema(db);
  std::string completion;
  if (!Complete(p, ctx, "sp", build_sp_prompt(ctx.prompts, s, item.PromptQuestion(), db, descriptions), &completion))
    return p;

  auto blocks = extract_sql_blocks(completion);
  std::string final_raw;
  if (blocks.size() >= 2) {
    SetIntermediate(p, blocks.front(), s);
    final_raw = blocks.back();
  } else {
    if (!Extract(p, "sp", completion, &final_raw)) return p;
    p.warnings.push_back("completion holds a single SQL block; no intermediate query recorded");
  }
  SetFinal(p, final_raw, db);
  return p;
}

PredictedQuery run_baseline(const EvalItem& item, const DatabaseSchema& db, const ColumnDescriptions* descriptions,
                            MethodContext& ctx, BaselineKind kind) {
  PredictedQuery p;
  p.method = kind == BaselineKind::kCot ? Method::kCot : Method::kCotSs;
  std::string stage = MethodName(p.method);
  std::string block = kind == BaselineKind::kCot ? render_original(db) : render_simplified(simplify_schema(db), descriptions);
  std::string completion, raw;
  if (!Complete(p, ctx, stage, build_baseline_prompt(ctx.prompts, kind, block, item.PromptQuestion()), &completion))
    return p;
  if (!Extract(p, stage, completion, &raw)) return p;
  SetFinal(p, raw, db);
  return p;
}

PredictedQuery run_method(Method method, const EvalItem& item, const DatabaseSchema& db,
                          const ColumnDescriptions* descriptions, MethodContext& ctx) {
  switch (method) {
    case Method::kUnjoinSp: return run_unjoin_sp(item, db, descriptions, ctx);
    case Method::kUnjoinMp: return run_unjoin_mp(item, db, descriptions, ctx);
    case Method::kCot: return run_baseline(item, db, descriptions, ctx, BaselineKind::kCot);
    case Method::kCotSs: return run_baseline(item, db, descriptions, ctx, BaselineKind::kCotSs);
  }
  throw ConfigError("unknown method");
}

std::map<std::string, std::vector<RetrievedTable>> LoadRetrievalList(const std::filesystem::path& path) {
  std::map<std::string, std::vector<RetrievedTable>> out;
  std::string text = ReadFile(path);
  size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = Trim(std::string_view(text).substr(pos, eol == std::string::npos ? std::string::npos : eol - pos));
    pos = eol == std::string::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = json::parse(line);
      auto& tables = out[j.at("question_id").get<std::string>()];
      for (const auto& t : j.at("tables"))
        tables.push_back({t.at("db_id").get<std::string>(), t.at("table_name").get<std::string>(), t.value("score", 0.0)});
    } catch (const json::exception& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

bool TablePool::Contains(std::string_view db_id, std::string_view table) const {
  return std::any_of(tables.begin(), tables.end(), [&](const PoolTable& t) {
    return IEquals(t.source_db, db_id) && IEquals(t.source_table, table);
  });
}

TablePool assemble_pool(const std::vector<RetrievedTable>& retrieval, const SchemaCatalogue& catalogue, size_t top_k,
                        const std::map<std::string, ColumnDescriptions>* descriptions) {
  std::vector<RetrievedTable> ranked = retrieval;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RetrievedTable& a, const RetrievedTable& b) { return a.score > b.score; });

  TablePool pool;
  std::vector<TableDef> defs;
  std::set<std::pair<std::string, std::string>> seen;
  std::set<std::string> taken;
  std::set<std::string> source_dbs;
  for (const auto& r : ranked) {
    if (pool.tables.size() >= top_k) break;
    const DatabaseSchema* db = catalogue.Find(r.db_id);
    if (!db) throw PoolError("retrieved table from unknown database '" + r.db_id + "'");
    const TableDef* t = db->FindTable(r.table_name);
    if (!t) throw PoolError("retrieved table '" + r.db_id + "." + r.table_name + "' is not in the catalogue");
    if (!seen.emplace(ToLower(db->db_id()), ToLower(t->name)).second) continue;
    TableDef def = *t;
    if (!taken.insert(ToLower(def.name)).second) {
      def.name = t->name + "__" + db->db_id();
      if (!taken.insert(ToLower(def.name)).second) throw PoolError("cannot disambiguate table '" + def.name + "'");
    }
    if (descriptions) {
      auto it = descriptions->find(db->db_id());
      if (it != descriptions->end())
        for (const auto& c : t->columns) pool.descriptions.Set(def.name, c.name, std::string(it->second.Get(t->name, c.name)));
    }
    for (const auto& c : def.columns)
      if (!c.description.empty()) pool.descriptions.Set(def.name, c.name, c.description);
    pool.tables.push_back({def.name, db->db_id(), t->name});
    source_dbs.insert(db->db_id());
    defs.push_back(std::move(def));
  }
  if (defs.empty()) throw PoolError("retrieval list is empty");

  // Foreign keys survive only when both ends made it into the pool from the same database.
  std::vector<ForeignKey> fks;
  for (const auto& db_id : source_dbs) {
    const DatabaseSchema* db = catalogue.Find(db_id);
    auto pool_name = [&](const std::string& table) -> const PoolTable* {
      for (const auto& pt : pool.tables)
        if (pt.source_db == db_id && IEquals(pt.source_table, table)) return &pt;
      return nullptr;
    };
    for (const auto& fk : db->foreign_keys()) {
      const PoolTable* from = pool_name(fk.from.table);
      const PoolTable* to = pool_name(fk.to.table);
      if (from && to) fks.push_back({{from->name, fk.from.column}, {to->name, fk.to.column}});
    }
  }
  std::string pool_id = source_dbs.size() == 1 ? *source_dbs.begin() : "pool";
  pool.schema = DatabaseSchema::Create(pool_id, std::move(defs), std::move(fks));
  return pool;
}

}  // namespace unjoin
