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

#include "unjoin/report.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "unjoin/sql_lexer.hpp"
#include "unjoin/util.hpp"

namespace unjoin {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr size_t kRowsPreview = 10;

json RowsJson(const std::vector<Row>& rows, size_t limit) {
  json out = json::array();
  for (size_t i = 0; i < rows.size() && i < limit; ++i) {
    json r = json::array();
    for (const auto& v : rows[i]) r.push_back(ValueToJson(v));
    out.push_back(std::move(r));
  }
  return out;
}

json ExecJson(const ExecOutcome& o) {
  json j = {{"status", ExecStatusName(o.status)}};
  if (o.ok()) {
    j["row_count"] = o.rows.size();
    j["rows_sha256"] = Sha256Hex(RowsJson(o.rows, o.rows.size()).dump());
    j["rows_preview"] = RowsJson(o.rows, kRowsPreview);
  } else {
    j["error"] = SanitizeUtf8(o.error);
  }
  return j;
}

json RefSetJson(const RefSet& r) { return {{"tables", r.tables}, {"columns", r.columns}}; }

// Rewrites renamed pool tables that came from the item's own database back to their real names.
std::string RestorePoolNames(const std::string& sql, const TablePool& pool, const std::string& db_id) {
  std::map<std::string, std::string> back;
  for (const auto& t : pool.tables)
    if (IEquals(t.source_db, db_id) && !IEquals(t.name, t.source_table)) back[ToLower(t.name)] = t.source_table;
  if (back.empty()) return sql;
  std::string out;
  size_t cursor = 0;
  for (const auto& tok : sql::Tokenize(sql)) {
    if (tok.kind != sql::TokenKind::kWord && tok.kind != sql::TokenKind::kQuotedIdent) continue;
    auto it = back.find(ToLower(tok.value.empty() ? tok.text : tok.value));
    if (it == back.end()) continue;
    out.append(sql, cursor, tok.offset - cursor);
    out += it->second;
    cursor = tok.offset + tok.length;
  }
  out.append(sql, cursor, std::string::npos);
  return out;
}

// Maps a pool-space reference set back to source names; tables from other databases keep their pool name.
RefSet PoolRefsToSource(const RefSet& refs, const TablePool& pool, const std::string& db_id) {
  std::map<std::string, std::string> to_source;
  for (const auto& t : pool.tables)
    to_source[ToLower(t.name)] = IEquals(t.source_db, db_id) ? ToLower(t.source_table) : ToLower(t.name);
  auto map_table = [&](const std::string& t) {
    auto it = to_source.find(t);
    return it == to_source.end() ? t : it->second;
  };
  RefSet out;
  for (const auto& t : refs.tables) out.AddTable(map_table(t));
  for (const auto& c : refs.columns) {
    size_t dot = c.find('.');
    out.AddColumn(map_table(c.substr(0, dot)), c.substr(dot + 1));
  }
  return out;
}

}  // namespace

void RunConfig::Resolve() {
  if (out.empty()) throw ConfigError("--out is required");
  if (root.empty()) throw ConfigError("--root is required");
  if (cache_dir.empty()) cache_dir = out / "cache";
  if (templates.empty()) templates = PromptLibrary::Default().directory();
  if (workers == 0) workers = 1;
  if (top_k == 0) throw ConfigError("--topk must be positive");
  if (cache_mode == CacheMode::kReplay && !fs::is_directory(cache_dir))
    throw ConfigError("replay mode needs an existing cache directory: " + cache_dir.string());
  if (!retrieval.empty() && !fs::exists(retrieval)) throw ConfigError("retrieval list not found: " + retrieval.string());
}

json RunConfig::ToJson(const PromptLibrary& prompts) const {
  json llm_json = llm.ToJson();
  return {{"dataset", FlavorName(flavor)},
          {"root", root.string()},
          {"split", split},
          {"method", MethodName(method)},
          {"cache_mode", CacheModeName(cache_mode)},
          {"cache_dir", cache_dir.string()},
          {"llm", llm_json},
          {"workers", workers},
          {"topk", top_k},
          {"retrieval", retrieval.string()},
          {"setting", retrieval.empty() ? "closed-book" : "open-book"},
          {"templates", templates.string()},
          {"template_sha256", prompts.Hashes()},
          {"out", out.string()},
          {"exec_timeout_s", exec_timeout_s},
          {"limit", limit},
          {"conventions",
           {{"em", "multiset rows; sequence when gold has top-level ORDER BY; numeric tolerance 1e-6; "
                   "text compared after trimming trailing whitespace; NULL equals only NULL"},
            {"duplicate_rows_significant", true},
            {"on_clause_columns_counted", true},
            {"refs_star_expansion", "all columns of the query block's FROM tables"},
            {"precision_recall", "macro-average over items"},
            {"bird_evidence_appended_to_question", flavor == Flavor::kBird},
            {"correction_stages", method == Method::kUnjoinSp || method == Method::kUnjoinMp
                                      ? json::array({"simplified", "original"})
                                      : json::array({"original"})},
            {"timeout_counts_against_qe", true}}}};
}

RunConfig RunConfig::FromJson(const json& j, RunConfig c) {
  if (j.contains("dataset")) c.flavor = ParseFlavor(j["dataset"].get<std::string>());
  if (j.contains("root")) c.root = j["root"].get<std::string>();
  if (j.contains("split")) c.split = j["split"].get<std::string>();
  if (j.contains("method")) c.method = ParseMethod(j["method"].get<std::string>());
  if (j.contains("cache")) c.cache_mode = ParseCacheMode(j["cache"].get<std::string>());
  if (j.contains("cache_mode")) c.cache_mode = ParseCacheMode(j["cache_mode"].get<std::string>());
  if (j.contains("cache_dir")) c.cache_dir = j["cache_dir"].get<std::string>();
  if (j.contains("llm")) c.llm = LlmConfig::FromJson(j["llm"], c.llm);
  if (j.contains("model")) c.llm.model = j["model"].get<std::string>();
  if (j.contains("endpoint")) c.llm.endpoint = j["endpoint"].get<std::string>();
  if (j.contains("workers")) c.workers = j["workers"].get<size_t>();
  if (j.contains("topk")) c.top_k = j["topk"].get<size_t>();
  if (j.contains("retrieval")) c.retrieval = j["retrieval"].get<std::string>();
  if (j.contains("templates")) c.templates = j["templates"].get<std::string>();
  if (j.contains("out")) c.out = j["out"].get<std::string>();
  if (j.contains("exec_timeout_s")) c.exec_timeout_s = j["exec_timeout_s"].get<double>();
  if (j.contains("limit")) c.limit = j["limit"].get<size_t>();
  return c;
}

json EvalRecord::ToJson() const {
  json gold_refs_json = nullptr;
  if (gold_refs) {
    gold_refs_json = RefSetJson(gold_refs->refs);
    gold_refs_json["ambiguous"] = gold_refs->ambiguous;
    gold_refs_json["unresolved"] = gold_refs->unresolved;
  }
  return {{"item_id", item.id},
          {"db_id", item.db_id},
          {"method", MethodName(method)},
          {"question", item.question},
          {"evidence", item.evidence},
          {"gold_sql", item.gold_sql},
          {"gold_table_count", item.gold_table_count},
          {"prediction", prediction.ToJson()},
          {"gold_exec", ExecJson(gold_exec)},
          {"pred_exec", pred_exec ? ExecJson(*pred_exec) : json{{"status", "not_run"}}},
          {"qe", qe},
          {"em", em},
          {"gold_refs", gold_refs_json},
          {"gold_refs_error", gold_refs_error},
          {"pred_refs", pred_refs ? RefSetJson(*pred_refs) : json(nullptr)},
          {"pred_refs_error", pred_refs_error},
          {"table_precision", table.precision},
          {"table_recall", table.recall},
          {"column_precision", column.precision},
          {"column_recall", column.recall},
          {"retrieval", retrieval}};
}

EvalRecord evaluate_item(const EvalItem& item, const Dataset& ds, const RunConfig& cfg, MethodContext& ctx,
                         const std::map<std::string, std::vector<RetrievedTable>>* retrieval) {
  EvalRecord rec;
  rec.item = item;
  rec.method = cfg.method;
  rec.prediction.method = cfg.method;
  rec.timing.item_id = item.id;
  const DatabaseSchema& db = *ds.catalogue.Find(item.db_id);
  fs::path db_file = ds.DatabaseFile(item.db_id);

  rec.gold_exec = execute(item.gold_sql, db_file, cfg.exec_timeout_s);
  rec.timing.gold_exec_s = rec.gold_exec.wall_s;
  try {
    rec.gold_refs = extract_refs(item.gold_sql, db);
  } catch (const sql::ParseError& e) {
    rec.gold_refs_error = e.what();
  }

  std::optional<TablePool> pool;
  if (retrieval) {
    auto it = retrieval->find(item.id);
    try {
      if (it == retrieval->end()) throw PoolError("no retrieval list for " + item.id);
      pool = assemble_pool(it->second, ds.catalogue, cfg.top_k, &ds.descriptions);
      json tables = json::array();
      for (const auto& t : pool->tables) tables.push_back({{"name", t.name}, {"db_id", t.source_db}, {"table", t.source_table}});
      size_t covered = 0, gold_n = rec.gold_refs ? rec.gold_refs->refs.tables.size() : 0;
      if (rec.gold_refs)
        for (const auto& t : rec.gold_refs->refs.tables) covered += pool->Contains(item.db_id, t);
      rec.retrieval = {{"pool", tables},
                       {"gold_tables_in_pool", covered},
                       {"table_recall", gold_n ? static_cast<double>(covered) / static_cast<double>(gold_n) : 1.0}};
    } catch (const std::exception& e) {
      rec.prediction.failed = true;
      rec.prediction.failure_reason = "retrieval";
      rec.prediction.failure_detail = e.what();
      rec.retrieval = {{"error", e.what()}};
    }
  }

  if (!rec.prediction.failed) {
    const DatabaseSchema& target = pool ? pool->schema : db;
    const ColumnDescriptions* desc = pool ? (pool->descriptions.empty() ? nullptr : &pool->descriptions)
                                          : ds.DescriptionsFor(item.db_id);
    rec.prediction = run_method(cfg.method, item, target, desc, ctx);
  }
  for (const auto& c : rec.prediction.completions) rec.timing.llm_latency_s.push_back(c.latency_s);

  if (!rec.prediction.failed && rec.prediction.final_sql) {
    std::string sql = *rec.prediction.final_sql;
    try {
      auto refs = extract_refs(sql, pool ? pool->schema : db);
      rec.pred_refs = pool ? PoolRefsToSource(refs.refs, *pool, item.db_id) : refs.refs;
    } catch (const sql::ParseError& e) {
      rec.pred_refs_error = e.what();
    }
    if (pool) sql = RestorePoolNames(sql, *pool, item.db_id);
    rec.pred_exec = execute(sql, db_file, cfg.exec_timeout_s);
    rec.timing.pred_exec_s = rec.pred_exec->wall_s;
    rec.qe = rec.pred_exec->ok();
    rec.em = rec.qe && compare_results(rec.gold_exec, *rec.pred_exec, sql::HasTopLevelOrderBy(item.gold_sql));
  }

  std::set<std::string> gold_t, gold_c, pred_t, pred_c;
  if (rec.gold_refs) {
    gold_t = rec.gold_refs->refs.tables;
    gold_c = rec.gold_refs->refs.columns;
  }
  if (rec.pred_refs) {
    pred_t = rec.pred_refs->tables;
    pred_c = rec.pred_refs->columns;
  }
  rec.table = SetPrecisionRecall(pred_t, gold_t);
  rec.column = SetPrecisionRecall(pred_c, gold_c);
  return rec;
}

ScoredItem ScoredFromRecord(const json& r) {
  ScoredItem s;
  s.qe = r.at("qe").get<bool>();
  s.em = r.at("em").get<bool>();
  s.table = {r.at("table_precision").get<double>(), r.at("table_recall").get<double>()};
  s.column = {r.at("column_precision").get<double>(), r.at("column_recall").get<double>()};
  s.gold_table_count = r.at("gold_table_count").get<int>();
  return s;
}

json SummarizeRecords(const std::vector<json>& records, const json& run_config) {
  std::vector<ScoredItem> scored;
  std::map<std::string, size_t> failures;
  size_t em_without_qe = 0, gold_unanalyzable = 0, pred_unanalyzable = 0, gold_exec_failed = 0;
  for (const auto& r : records) {
    scored.push_back(ScoredFromRecord(r));
    const auto& p = r.at("prediction");
    if (p.at("failed").get<bool>()) ++failures[p.at("failure_reason").get<std::string>()];
    else if (!r.at("qe").get<bool>()) ++failures["execution"];
    if (r.at("em").get<bool>() && !r.at("qe").get<bool>()) ++em_without_qe;
    if (!r.at("gold_refs_error").get<std::string>().empty()) ++gold_unanalyzable;
    if (!r.at("pred_refs_error").get<std::string>().empty()) ++pred_unanalyzable;
    if (r.at("gold_exec").at("status") != "ok") ++gold_exec_failed;
  }
  json buckets = json::array();
  for (const auto& b : bucket_by_table_count(scored))
    buckets.push_back({{"tables", b.label}, {"count", b.count}, {"table_recall", b.table_recall},
                       {"column_recall", b.column_recall}});
  return {{"config", run_config},
          {"metrics", score_run(scored).ToJson()},
          {"buckets", buckets},
          {"failures", failures},
          {"em_subset_of_qe", em_without_qe == 0},
          {"gold_exec_failed", gold_exec_failed},
          {"unanalyzable", {{"gold", gold_unanalyzable}, {"pred", pred_unanalyzable}}}};
}

std::string SummaryBytes(const json& summary) { return summary.dump(2) + "\n"; }

std::vector<json> ReadRecords(const fs::path& path) {
  std::vector<json> out;
  std::istringstream in(ReadFile(path));
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ConfigError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

RunResult run_evaluation(RunConfig cfg, std::unique_ptr<Transport> transport) {
  cfg.Resolve();
  PromptLibrary prompts = PromptLibrary::Load(cfg.templates);
  Dataset ds = load_dataset(cfg.root, cfg.flavor, cfg.split);
  FilterResult filtered = filter_items(ds.items, ds.catalogue);
  std::vector<EvalItem> items = filtered.items;
  if (cfg.limit && items.size() > cfg.limit) items.resize(cfg.limit);
  if (items.empty()) throw DatasetError("no multi-table items to run");

  std::map<std::string, std::vector<RetrievedTable>> retrieval;
  if (!cfg.retrieval.empty()) retrieval = LoadRetrievalList(cfg.retrieval);

  LlmClient llm(cfg.llm, cfg.cache_mode, cfg.cache_dir, std::move(transport));
  MethodContext ctx{prompts, llm};

  std::vector<std::optional<EvalRecord>> results(items.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        results[i] = evaluate_item(items[i], ds, cfg, ctx, cfg.retrieval.empty() ? nullptr : &retrieval);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  size_t n_threads = std::min(cfg.workers, items.size());
  for (size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  RunResult result;
  result.filtered_items = filtered.items.size();
  std::string records_text, timings_text;
  for (auto& r : results) {
    json line = r->ToJson();
    records_text += line.dump() + "\n";
    timings_text += json{{"item_id", r->timing.item_id},
                         {"gold_exec_s", r->timing.gold_exec_s},
                         {"pred_exec_s", r->timing.pred_exec_s},
                         {"llm_latency_s", r->timing.llm_latency_s}}
                        .dump() +
                    "\n";
  }
  // Re-read what was serialized so that `score` sees exactly the same values.
  std::istringstream in(records_text);
  std::string line;
  while (std::getline(in, line)) result.records.push_back(json::parse(line));

  json config_json = cfg.ToJson(prompts);
  result.summary = SummarizeRecords(result.records, config_json);

  fs::create_directories(cfg.out);
  WriteFileAtomic(cfg.out / "records.jsonl", records_text);
  WriteFileAtomic(cfg.out / "timings.jsonl", timings_text);
  WriteFileAtomic(cfg.out / "run_config.json", config_json.dump(2) + "\n");
  WriteFileAtomic(cfg.out / "summary.json", SummaryBytes(result.summary));
  std::vector<TableCountBucket> buckets;
  for (const auto& b : result.summary["buckets"])
    buckets.push_back({b["tables"], b["count"], b["table_recall"], b["column_recall"]});
  WriteFileAtomic(cfg.out / "buckets.csv", BucketsCsv(buckets));
  return result;
}

}  // namespace unjoin
