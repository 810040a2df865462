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

#include "unjoin/llm.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <regex>
#include <thread>

#include "unjoin/util.hpp"

namespace unjoin {

using nlohmann::json;

json LlmConfig::ToJson() const {
  return {{"endpoint", endpoint},   {"model", model},       {"temperature", temperature},
          {"max_tokens", max_tokens}, {"timeout_s", timeout_s}, {"retries", retries},
          {"max_in_flight", max_in_flight}, {"retry_backoff_s", retry_backoff_s}, {"api_key_env", api_key_env}};
}

LlmConfig LlmConfig::FromJson(const json& j, LlmConfig c) {
  c.endpoint = j.value("endpoint", c.endpoint);
  c.model = j.value("model", c.model);
  c.temperature = j.value("temperature", c.temperature);
  c.max_tokens = j.value("max_tokens", c.max_tokens);
  c.timeout_s = j.value("timeout_s", c.timeout_s);
  c.retries = j.value("retries", c.retries);
  c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
  c.retry_backoff_s = j.value("retry_backoff_s", c.retry_backoff_s);
  c.api_key_env = j.value("api_key_env", c.api_key_env);
  return c;
}

CacheMode ParseCacheMode(std::string_view name) {
  std::string n = ToLower(name);
  if (n == "record") return CacheMode::kRecord;
  if (n == "replay") return CacheMode::kReplay;
  if (n == "live") return CacheMode::kLive;
  throw LlmError("unknown cache mode '" + std::string(name) + "'");
}

std::string CacheModeName(CacheMode mode) {
  switch (mode) {
    case CacheMode::kRecord: return "record";
    case CacheMode::kReplay: return "replay";
    case CacheMode::kLive: return "live";
  }
  return "?";
}

json LlmExchange::ToJson() const {
  json j = {{"key", key},       {"model", model},           {"temperature", temperature},
            {"prompt", prompt}, {"completion", completion}, {"latency_s", latency_s}};
  if (prompt_tokens) j["prompt_tokens"] = *prompt_tokens;
  if (completion_tokens) j["completion_tokens"] = *completion_tokens;
  return j;
}

LlmExchange LlmExchange::FromJson(const json& j) {
  LlmExchange e;
  e.key = j.at("key").get<std::string>();
  e.model = j.value("model", "");
  e.temperature = j.value("temperature", 0.0);
  e.prompt = j.value("prompt", "");
  e.completion = j.at("completion").get<std::string>();
  e.latency_s = j.value("latency_s", 0.0);
  if (j.contains("prompt_tokens")) e.prompt_tokens = j["prompt_tokens"].get<int>();
  if (j.contains("completion_tokens")) e.completion_tokens = j["completion_tokens"].get<int>();
  return e;
}

std::string ExchangeKey(std::string_view prompt, const LlmConfig& cfg) {
  // nlohmann::json objects keep keys sorted, so dump() is canonical.
  json j = {{"model", cfg.model}, {"prompt", std::string(prompt)}, {"temperature", cfg.temperature}};
  return Sha256Hex(j.dump());
}

ExchangeCache::ExchangeCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ExchangeCache::PathFor(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<LlmExchange> ExchangeCache::Load(const std::string& key) const {
  auto path = PathFor(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    return LlmExchange::FromJson(json::parse(ReadFile(path)));
  } catch (const json::exception& e) {
    throw LlmError("corrupt cache entry " + path.string() + ": " + e.what());
  }
}

void ExchangeCache::Store(const LlmExchange& exchange) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  std::filesystem::create_directories(dir_);
  WriteFileAtomic(PathFor(exchange.key), exchange.ToJson().dump(1) + "\n");
}

LlmClient::LlmClient(LlmConfig cfg, CacheMode mode, std::filesystem::path cache_dir,
                     std::unique_ptr<Transport> transport)
    : cfg_(std::move(cfg)), mode_(mode), transport_(std::move(transport)) {
  if (mode_ != CacheMode::kLive) {
    if (mode_ == CacheMode::kReplay && !std::filesystem::is_directory(cache_dir))
      throw LlmError("replay mode needs an existing cache directory: " + cache_dir.string());
    cache_ = std::make_unique<ExchangeCache>(std::move(cache_dir));
  }
  if (!transport_ && mode_ != CacheMode::kReplay) transport_ = MakeHttpTransport();
  if (cfg_.max_in_flight < 1) cfg_.max_in_flight = 1;
}

std::string LlmClient::complete(std::string_view prompt) { return Exchange(prompt).completion; }

LlmExchange LlmClient::Exchange(std::string_view prompt) {
  std::string key = ExchangeKey(prompt, cfg_);
  if (cache_) {
    if (auto hit = cache_->Load(key)) return *hit;
    if (mode_ == CacheMode::kReplay) throw ReplayMiss(key);
  }
  LlmExchange e = Request(prompt, key);
  if (mode_ == CacheMode::kRecord) cache_->Store(e);
  return e;
}

LlmExchange LlmClient::Request(std::string_view prompt, const std::string& key) {
  if (!transport_) throw LlmError("no transport configured");
  {
    std::unique_lock<std::mutex> lock(slots_mutex_);
    slots_cv_.wait(lock, [&] { return in_flight_ < cfg_.max_in_flight; });
    ++in_flight_;
  }
  struct Release {
    LlmClient* c;
    ~Release() {
      {
        std::lock_guard<std::mutex> lock(c->slots_mutex_);
        --c->in_flight_;
      }
      c->slots_cv_.notify_one();
    }
  } release{this};

  json body = {{"model", cfg_.model},
               {"messages", json::array({{{"role", "user"}, {"content", std::string(prompt)}}})},
               {"temperature", cfg_.temperature},
               {"max_tokens", cfg_.max_tokens}};
  std::vector<std::pair<std::string, std::string>> headers = {{"Content-Type", "application/json"}};
  if (const char* token = std::getenv(cfg_.api_key_env.c_str()); token && *token)
    headers.emplace_back("Authorization", std::string("Bearer ") + token);

  std::string last_error;
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    if (attempt > 0 && cfg_.retry_backoff_s > 0)
      std::this_thread::sleep_for(std::chrono::duration<double>(cfg_.retry_backoff_s * (1 << (attempt - 1))));
    auto start = std::chrono::steady_clock::now();
    HttpResponse resp;
    ++network_calls_;
    try {
      resp = transport_->Post(cfg_.endpoint, body.dump(), headers, cfg_.timeout_s);
    } catch (const TransportError& e) {
      last_error = e.what();
      continue;
    }
    if (resp.status == 429 || resp.status >= 500) {
      last_error = "HTTP " + std::to_string(resp.status);
      continue;
    }
    if (resp.status != 200)
      throw LlmError("HTTP " + std::to_string(resp.status) + ": " + resp.body.substr(0, 300));
    LlmExchange e;
    e.key = key;
    e.model = cfg_.model;
    e.temperature = cfg_.temperature;
    e.prompt = std::string(prompt);
    e.latency_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
      auto doc = json::parse(resp.body);
      e.completion = doc.at("choices").at(0).at("message").at("content").get<std::string>();
      if (doc.contains("usage")) {
        const auto& u = doc["usage"];
        if (u.contains("prompt_tokens")) e.prompt_tokens = u["prompt_tokens"].get<int>();
        if (u.contains("completion_tokens")) e.completion_tokens = u["completion_tokens"].get<int>();
      }
    } catch (const json::exception& ex) {
      throw LlmError(std::string("malformed completion response: ") + ex.what());
    }
    return e;
  }
  throw TransportError("request failed after " + std::to_string(cfg_.retries + 1) + " attempts: " + last_error);
}

namespace {

bool IsWordChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// WITH must be followed by `[RECURSIVE] name [(cols)] AS (`.
bool LooksLikeCte(std::string_view rest) {
  static const std::regex cte(R"(^\s+(recursive\s+)?[A-Za-z_`"\[][^\s(]*\s*(\([^)]*\)\s*)?as\s*\()",
                              std::regex::icase);
  return std::regex_search(rest.begin(), rest.end(), cte);
}

// Position of the first standalone SELECT or WITH; uppercase spellings are preferred
// so that prose like "we select the rows" is skipped.
size_t FindSqlStart(std::string_view text) {
  for (bool exact : {true, false}) {
    for (size_t i = 0; i < text.size(); ++i) {
      if (i > 0 && IsWordChar(text[i - 1])) continue;
      for (std::string_view kw : {"SELECT", "WITH"}) {
        if (i + kw.size() > text.size()) continue;
        std::string_view word = text.substr(i, kw.size());
        bool match = exact ? word == kw : IEquals(word, kw);
        if (!match) continue;
        size_t end = i + kw.size();
        if (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) continue;
        if (kw == "WITH" && !LooksLikeCte(text.substr(end))) continue;
        return i;
      }
    }
  }
  return std::string_view::npos;
}

// Cuts after the first statement-terminating semicolon outside quotes.
std::string_view CutAtSemicolon(std::string_view sql) {
  char quote = 0;
  for (size_t i = 0; i < sql.size(); ++i) {
    char c = sql[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '\'' || c == '"' || c == '`') {
      quote = c;
    } else if (c == '[') {
      quote = ']';
    } else if (c == ';') {
      return sql.substr(0, i + 1);
    }
  }
  return sql;
}

struct Fence {
  std::string_view content;
};

std::vector<Fence> Fences(std::string_view text) {
  std::vector<Fence> out;
  size_t pos = 0;
  while (true) {
    size_t open = text.find("```", pos);
    if (open == std::string_view::npos) break;
    size_t start = open + 3;
    size_t eol = text.find('\n', start);
    if (eol != std::string_view::npos) {
      // a language tag is a single word on the opening line
      std::string_view tag = Trim(text.substr(start, eol - start));
      bool is_tag = true;
      for (char c : tag) is_tag = is_tag && (IsWordChar(c) || c == '-' || c == '+');
      if (is_tag && !IEquals(tag, "select") && !IEquals(tag, "with")) start = eol + 1;
    }
    for (std::string_view lang : {"sql ", "sqlite ", "mysql ", "postgresql "}) {
      if (start + lang.size() <= text.size() && IEquals(text.substr(start, lang.size()), lang)) {
        start += lang.size();
        break;
      }
    }
    size_t close = text.find("```", start);
    size_t end = close == std::string_view::npos ? text.size() : close;
    out.push_back({text.substr(start, end - start)});
    if (close == std::string_view::npos) break;
    pos = close + 3;
  }
  return out;
}

}  // namespace

std::vector<std::string> extract_sql_blocks(std::string_view completion) {
  std::vector<std::string> out;
  for (const auto& f : Fences(completion)) {
    std::string block(Trim(f.content));
    if (!block.empty()) out.push_back(std::move(block));
  }
  return out;
}

std::string extract_sql(std::string_view completion) {
  if (completion.find("```") != std::string_view::npos) {
    auto fences = Fences(completion);
    std::string block(Trim(fences.front().content));
    if (block.empty()) throw ExtractionError("first fenced block is empty");
    return block;
  }
  size_t start = FindSqlStart(completion);
  if (start == std::string_view::npos) throw ExtractionError("no SQL found in completion");
  std::string sql(Trim(CutAtSemicolon(completion.substr(start))));
  if (sql.empty()) throw ExtractionError("no SQL found in completion");
  return sql;
}

}  // namespace unjoin
