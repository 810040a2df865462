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

#include "unjoin/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "unjoin/dataset.hpp"
#include "unjoin/report.hpp"
#include "unjoin/schema.hpp"
#include "unjoin/util.hpp"

namespace unjoin {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct DatasetFlags {
  std::string dataset = "spider";
  std::string root;
  std::string split = "dev.json";
};

void AddDatasetFlags(CLI::App* cmd, DatasetFlags& f) {
  cmd->add_option("--dataset", f.dataset, "spider or bird")->check(CLI::IsMember({"spider", "bird"}));
  cmd->add_option("--root", f.root, "dataset root (defaults to $UNJOIN_SPIDER_ROOT or $UNJOIN_BIRD_ROOT)");
  cmd->add_option("--split", f.split, "items file under the root");
}

fs::path ResolveRoot(const DatasetFlags& f) {
  if (!f.root.empty()) return f.root;
  const char* var = f.dataset == "bird" ? "UNJOIN_BIRD_ROOT" : "UNJOIN_SPIDER_ROOT";
  const char* env = std::getenv(var);
  if (!env || !*env) throw ConfigError(std::string("--root not given and $") + var + " is unset");
  return env;
}

std::string MetricsLine(const json& summary) {
  const auto& m = summary.at("metrics");
  std::ostringstream o;
  o << "n " << m.at("n").get<size_t>() << " QE " << FormatFixed2(m.at("qe")) << " EM " << FormatFixed2(m.at("em"))
    << " TP " << FormatFixed2(m.at("table_precision")) << " TR " << FormatFixed2(m.at("table_recall")) << " CP "
    << FormatFixed2(m.at("column_precision")) << " CR " << FormatFixed2(m.at("column_recall"));
  return o.str();
}

void WriteSummaryFiles(const fs::path& dir, const json& summary) {
  fs::create_directories(dir);
  WriteFileAtomic(dir / "summary.json", SummaryBytes(summary));
  std::vector<TableCountBucket> buckets;
  for (const auto& b : summary.at("buckets"))
    buckets.push_back({b["tables"], b["count"], b["table_recall"], b["column_recall"]});
  WriteFileAtomic(dir / "buckets.csv", BucketsCsv(buckets));
}

json ReadJsonFile(const fs::path& p) {
  try {
    return json::parse(ReadFile(p));
  } catch (const json::exception& e) {
    throw ConfigError(p.string() + ": " + e.what());
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-stage multi-table text-to-SQL evaluation", "unjoin"};
  app.require_subcommand(1);

  DatasetFlags simplify_ds;
  std::string simplify_db;
  bool simplify_render = false;
  auto* simplify = app.add_subcommand("simplify", "print a database's simplified schema");
  AddDatasetFlags(simplify, simplify_ds);
  simplify->add_option("--db", simplify_db, "database id")->required();
  simplify->add_flag("--render", simplify_render, "print the prompt listing with descriptions");

  DatasetFlags filter_ds;
  std::string filter_out;
  auto* filter = app.add_subcommand("filter", "keep multi-table items and print counts");
  AddDatasetFlags(filter, filter_ds);
  filter->add_option("--out", filter_out, "write the kept items as JSON lines");

  DatasetFlags run_ds;
  std::string method = "unjoin-mp", cache = "record", model, endpoint, out_dir, cache_dir, templates, retrieval,
              config_file;
  size_t workers = 0, topk = 0, limit = 0;
  double timeout = 0;
  auto* run = app.add_subcommand("run", "run a method over the filtered items");
  AddDatasetFlags(run, run_ds);
  run->add_option("--method", method)->check(CLI::IsMember({"unjoin-sp", "unjoin-mp", "cot", "cot-ss"}));
  run->add_option("--cache", cache)->check(CLI::IsMember({"record", "replay", "live"}));
  run->add_option("--model", model);
  run->add_option("--endpoint", endpoint);
  run->add_option("--workers", workers)->check(CLI::PositiveNumber);
  run->add_option("--topk", topk)->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir);
  run->add_option("--cache-dir", cache_dir, "defaults to <out>/cache");
  run->add_option("--templates", templates);
  run->add_option("--retrieval", retrieval, "retrieval list (JSON lines); enables the open-book setting");
  run->add_option("--config", config_file, "JSON run configuration; flags override it");
  run->add_option("--limit", limit, "evaluate only the first N filtered items");
  run->add_option("--timeout", timeout, "per-query execution timeout in seconds");

  std::string score_records, score_config, score_out;
  auto* score = app.add_subcommand("score", "recompute the summary from a records file");
  score->add_option("records", score_records)->required();
  score->add_option("--config", score_config, "run_config.json (defaults to the one beside the records)");
  score->add_option("--out", score_out, "directory for summary.json and buckets.csv; stdout otherwise");

  std::string diff_a, diff_b;
  auto* diff = app.add_subcommand("diff", "compare two summaries");
  diff->add_option("a", diff_a)->required();
  diff->add_option("b", diff_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string first = e.what();
    err << "usage error: " << first.substr(0, first.find('\n')) << "\n";
    return 2;
  }

  try {
    if (*simplify) {
      Flavor flavor = ParseFlavor(simplify_ds.dataset);
      fs::path root = ResolveRoot(simplify_ds);
      fs::path tables = CatalogueFile(root, flavor);
      if (!fs::exists(tables)) throw DatasetError("missing " + tables.string());
      SchemaCatalogue cat = LoadCatalogue(tables);
      const DatabaseSchema* db = cat.Find(simplify_db);
      if (!db) throw DatasetError("database '" + simplify_db + "' not in " + tables.string());
      SimplifiedSchema s = simplify_schema(*db);
      if (simplify_render) {
        ColumnDescriptions desc = ColumnDescriptions::FromSchema(*db);
        fs::path dir = root / (flavor == Flavor::kBird ? "dev_databases" : "database") / db->db_id() / "database_description";
        if (flavor == Flavor::kBird && fs::is_directory(dir)) desc = LoadBirdDescriptions(*db, dir);
        out << render_simplified(s, &desc);
      } else {
        for (const auto& e : s.entries()) out << e.qualified << "\n";
      }
      return 0;
    }

    if (*filter) {
      Dataset ds = load_dataset(ResolveRoot(filter_ds), ParseFlavor(filter_ds.dataset), filter_ds.split);
      FilterResult r = filter_items(ds.items, ds.catalogue);
      for (const auto& d : r.dropped) err << "dropped " << d.id << ": " << d.reason << "\n";
      if (!filter_out.empty()) {
        std::string text;
        for (const auto& it : r.items)
          text += json{{"item_id", it.id}, {"db_id", it.db_id}, {"question", it.question}, {"gold_sql", it.gold_sql},
                       {"evidence", it.evidence}, {"gold_table_count", it.gold_table_count}}
                      .dump() +
                  "\n";
        WriteFileAtomic(filter_out, text);
      }
      out << r.items.size() << " items, " << r.DatabaseCount() << " databases\n";
      return 0;
    }

    if (*run) {
      RunConfig cfg;
      if (!config_file.empty()) cfg = RunConfig::FromJson(ReadJsonFile(config_file), cfg);
      if (run->count("--dataset") || cfg.root.empty()) cfg.flavor = ParseFlavor(run_ds.dataset);
      if (run->count("--root") || cfg.root.empty()) {
        DatasetFlags f = run_ds;
        f.dataset = FlavorName(cfg.flavor);
        cfg.root = ResolveRoot(f);
      }
      if (run->count("--split")) cfg.split = run_ds.split;
      if (run->count("--method")) cfg.method = ParseMethod(method);
      if (run->count("--cache")) cfg.cache_mode = ParseCacheMode(cache);
      if (!model.empty()) cfg.llm.model = model;
      if (!endpoint.empty()) cfg.llm.endpoint = endpoint;
      if (workers) cfg.workers = workers;
      if (topk) cfg.top_k = topk;
      if (!out_dir.empty()) cfg.out = out_dir;
      if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
      if (!templates.empty()) cfg.templates = templates;
      if (!retrieval.empty()) cfg.retrieval = retrieval;
      if (limit) cfg.limit = limit;
      if (timeout > 0) cfg.exec_timeout_s = timeout;
      RunResult r = run_evaluation(cfg);
      out << MetricsLine(r.summary) << "\n";
      return 0;
    }

    if (*score) {
      fs::path records = score_records;
      fs::path config = score_config.empty() ? records.parent_path() / "run_config.json" : fs::path(score_config);
      json run_config = fs::exists(config) ? ReadJsonFile(config) : json(nullptr);
      json summary = SummarizeRecords(ReadRecords(records), run_config);
      if (score_out.empty()) {
        out << SummaryBytes(summary);
      } else {
        WriteSummaryFiles(score_out, summary);
        out << MetricsLine(summary) << "\n";
      }
      return 0;
    }

    if (*diff) {
      json a = ReadJsonFile(diff_a), b = ReadJsonFile(diff_b);
      bool same = true;
      out << std::left << std::setw(18) << "metric" << std::setw(10) << "a" << std::setw(10) << "b" << "delta\n";
      for (const char* k : {"qe", "em", "table_precision", "table_recall", "column_precision", "column_recall"}) {
        double va = a.at("metrics").at(k), vb = b.at("metrics").at(k);
        same = same && va == vb;
        out << std::setw(18) << k << std::setw(10) << FormatFixed2(va) << std::setw(10) << FormatFixed2(vb)
            << (vb - va >= 0 ? "+" : "") << FormatFixed2(vb - va) << "\n";
      }
      std::map<std::string, std::pair<json, json>> buckets;
      for (const auto& x : a.at("buckets")) buckets[x["tables"]].first = x;
      for (const auto& x : b.at("buckets")) buckets[x["tables"]].second = x;
      for (const auto& [label, pair] : buckets) {
        for (const char* k : {"table_recall", "column_recall"}) {
          std::string va = pair.first.is_null() ? "-" : FormatFixed2(pair.first[k]);
          std::string vb = pair.second.is_null() ? "-" : FormatFixed2(pair.second[k]);
          same = same && va == vb;
          out << std::setw(18) << ("tables=" + label + " " + (k[0] == 't' ? "TR" : "CR")) << std::setw(10) << va
              << std::setw(10) << vb << "\n";
        }
      }
      if (a.at("metrics").at("n") != b.at("metrics").at("n")) same = false;
      out << (same ? "identical metrics\n" : "metrics differ\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (auto& c : msg)
      if (c == '\n') c = ' ';
    err << "error: " << msg << "\n";
    return 1;
  }
  return 1;
}

}  // namespace unjoin
