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

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace unjoin {

struct LlmConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4o";
  double temperature = 0.0;
  int max_tokens = 1024;
  double timeout_s = 120.0;
  int retries = 2;
  int max_in_flight = 4;
  double retry_backoff_s = 1.0;
  std::string api_key_env = "UNJOIN_API_KEY";

  nlohmann::json ToJson() const;
  /// Fields absent from `j` keep their value from `base`.
  static LlmConfig FromJson(const nlohmann::json& j, LlmConfig base);
};

enum class CacheMode { kRecord, kReplay, kLive };

CacheMode ParseCacheMode(std::string_view name);
std::string CacheModeName(CacheMode mode);

struct LlmExchange {
  std::string key;
  std::string model;
  double temperature = 0.0;
  std::string prompt;
  std::string completion;
  double latency_s = 0.0;
  std::optional<int> prompt_tokens;
  std::optional<int> completion_tokens;

  nlohmann::json ToJson() const;
  static LlmExchange FromJson(const nlohmann::json& j);
};

/// sha256 over the canonical JSON of {model, prompt, temperature}.
std::string ExchangeKey(std::string_view prompt, const LlmConfig& cfg);

class LlmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReplayMiss : public LlmError {
 public:
  explicit ReplayMiss(const std::string& key) : LlmError("replay cache has no exchange " + key), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class TransportError : public LlmError {
 public:
  using LlmError::LlmError;
};

/// One JSON file per exchange, named by key.
class ExchangeCache {
 public:
  explicit ExchangeCache(std::filesystem::path dir);

  std::optional<LlmExchange> Load(const std::string& key) const;
  void Store(const LlmExchange& exchange);
  std::filesystem::path PathFor(const std::string& key) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::mutex write_mutex_;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// Throws TransportError when no response arrives.
  virtual HttpResponse Post(const std::string& url, const std::string& body,
                            const std::vector<std::pair<std::string, std::string>>& headers, double timeout_s) = 0;
};

std::unique_ptr<Transport> MakeHttpTransport();

class LlmClient {
 public:
  LlmClient(LlmConfig cfg, CacheMode mode, std::filesystem::path cache_dir,
            std::unique_ptr<Transport> transport = nullptr);

  std::string complete(std::string_view prompt);
  LlmExchange Exchange(std::string_view prompt);

  const LlmConfig& config() const { return cfg_; }
  CacheMode mode() const { return mode_; }
  size_t network_calls() const { return network_calls_.load(); }

 private:
  LlmExchange Request(std::string_view prompt, const std::string& key);

  LlmConfig cfg_;
  CacheMode mode_;
  std::unique_ptr<ExchangeCache> cache_;
  std::unique_ptr<Transport> transport_;
  std::atomic<size_t> network_calls_{0};

  std::mutex slots_mutex_;
  std::condition_variable slots_cv_;
  int in_flight_ = 0;
};

class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SQL from a completion: the first fenced block, else the text from the first SELECT/WITH.
std::string extract_sql(std::string_view completion);

/// Contents of every non-empty fenced block, in order.
std::vector<std::string> extract_sql_blocks(std::string_view completion);

}  // namespace unjoin
