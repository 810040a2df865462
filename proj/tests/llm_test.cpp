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

#include <gtest/gtest.h>

#include <deque>
#include <thread>

#include "support/fixtures.hpp"
#include "unjoin/llm.hpp"
#include "unjoin/util.hpp"

namespace unjoin {
namespace {

using nlohmann::json;

// Scripted transport: each call pops one step; "throw" raises a TransportError.
class FakeTransport : public Transport {
 public:
  struct Step {
    int status;
    std::string body;
  };
  explicit FakeTransport(std::deque<Step> steps, size_t* calls) : steps_(std::move(steps)), calls_(calls) {}

  HttpResponse Post(const std::string&, const std::string& body,
                    const std::vector<std::pair<std::string, std::string>>&, double) override {
    ++*calls_;
    last_request = json::parse(body);
    if (steps_.empty()) throw TransportError("no more scripted steps");
    Step s = steps_.front();
    steps_.pop_front();
    if (s.status < 0) throw TransportError("timed out");
    return {s.status, s.body};
  }

  json last_request;

 private:
  std::deque<Step> steps_;
  size_t* calls_;
};

std::string Reply(const std::string& content) {
  return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}},
              {"usage", {{"prompt_tokens", 11}, {"completion_tokens", 3}}}}
      .dump();
}

LlmConfig FastConfig() {
  LlmConfig cfg;
  cfg.model = "test-model";
  cfg.retry_backoff_s = 0;
  return cfg;
}

TEST(Llm, KeyDependsOnPromptModelTemperature) {
  LlmConfig a = FastConfig(), b = FastConfig();
  EXPECT_EQ(ExchangeKey("p", a), ExchangeKey("p", b));
  b.max_tokens = 7;  // not part of the key
  EXPECT_EQ(ExchangeKey("p", a), ExchangeKey("p", b));
  b.temperature = 0.5;
  EXPECT_NE(ExchangeKey("p", a), ExchangeKey("p", b));
  EXPECT_NE(ExchangeKey("p", a), ExchangeKey("q", a));
  b = a;
  b.model = "other";
  EXPECT_NE(ExchangeKey("p", a), ExchangeKey("p", b));
  EXPECT_EQ(ExchangeKey("p", a).size(), 64u);
}

TEST(Llm, RecordThenReplay) {
  auto dir = testing::TempDir("llm_cache");
  size_t calls = 0;
  std::string first;
  {
    LlmClient rec(FastConfig(), CacheMode::kRecord, dir,
                  std::make_unique<FakeTransport>(std::deque<FakeTransport::Step>{{200, Reply("SELECT 1")}}, &calls));
    first = rec.complete("prompt text");
    EXPECT_EQ(first, "SELECT 1");
    EXPECT_EQ(rec.complete("prompt text"), first);  // read-through
    EXPECT_EQ(rec.network_calls(), 1u);
  }
  auto key = ExchangeKey("prompt text", FastConfig());
  ASSERT_TRUE(std::filesystem::exists(dir / (key + ".json")));
  auto stored = json::parse(ReadFile(dir / (key + ".json")));
  EXPECT_EQ(stored["prompt_tokens"], 11);

  LlmClient replay(FastConfig(), CacheMode::kReplay, dir);
  EXPECT_EQ(replay.complete("prompt text"), first);
  EXPECT_EQ(replay.network_calls(), 0u);
  try {
    replay.complete("never recorded");
    FAIL();
  } catch (const ReplayMiss& e) {
    EXPECT_EQ(e.key(), ExchangeKey("never recorded", FastConfig()));
    EXPECT_NE(std::string(e.what()).find(e.key()), std::string::npos);
  }
}

TEST(Llm, ReplayNeedsCacheDirectory) {
  EXPECT_THROW(LlmClient(FastConfig(), CacheMode::kReplay, "/nonexistent/unjoin/cache"), LlmError);
}

TEST(Llm, RetriesTransportErrorsExactly) {
  size_t calls = 0;
  auto cfg = FastConfig();
  cfg.retries = 2;
  LlmClient live(cfg, CacheMode::kLive, "",
                 std::make_unique<FakeTransport>(std::deque<FakeTransport::Step>{{-1, ""}, {-1, ""}, {-1, ""}, {200, Reply("x")}},
                                                 &calls));
  EXPECT_THROW(live.complete("p"), TransportError);
  EXPECT_EQ(calls, 3u);
}

TEST(Llm, RetriesServerErrorsThenSucceeds) {
  size_t calls = 0;
  LlmClient live(FastConfig(), CacheMode::kLive, "",
                 std::make_unique<FakeTransport>(std::deque<FakeTransport::Step>{{503, ""}, {429, ""}, {200, Reply("ok")}},
                                                 &calls));
  EXPECT_EQ(live.complete("p"), "ok");
  EXPECT_EQ(calls, 3u);
}

TEST(Llm, NoRetryOnWellFormedResponses) {
  size_t calls = 0;
  LlmClient bad_request(FastConfig(), CacheMode::kLive, "",
                        std::make_unique<FakeTransport>(std::deque<FakeTransport::Step>{{400, "{}"}, {200, Reply("x")}}, &calls));
  EXPECT_THROW(bad_request.complete("p"), LlmError);
  EXPECT_EQ(calls, 1u);
}

TEST(Llm, WireFormat) {
  size_t calls = 0;
  auto transport = std::make_unique<FakeTransport>(std::deque<FakeTransport::Step>{{200, Reply("x")}}, &calls);
  auto* raw = transport.get();
  LlmClient live(FastConfig(), CacheMode::kLive, "", std::move(transport));
  live.complete("hello");
  EXPECT_EQ(raw->last_request["model"], "test-model");
  EXPECT_EQ(raw->last_request["temperature"], 0.0);
  EXPECT_EQ(raw->last_request["messages"][0]["role"], "user");
  EXPECT_EQ(raw->last_request["messages"][0]["content"], "hello");
}

TEST(Llm, ConcurrentRecordWritesEveryExchange) {
  auto dir = testing::TempDir("llm_concurrent");
  size_t calls = 0;
  std::deque<FakeTransport::Step> steps(32, {200, Reply("SELECT 1")});
  // FakeTransport is not thread-safe on its own; in-flight limit of one serializes it.
  auto cfg = FastConfig();
  cfg.max_in_flight = 1;
  LlmClient rec(cfg, CacheMode::kRecord, dir, std::make_unique<FakeTransport>(steps, &calls));
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&, w] {
      for (int i = 0; i < 8; ++i) rec.complete("prompt " + std::to_string(w * 8 + i));
    });
  for (auto& t : workers) t.join();
  size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 32u);
}

TEST(ExtractSql, Rules) {
  EXPECT_EQ(extract_sql("```sql\nSELECT 1;\n```"), "SELECT 1;");
  EXPECT_EQ(extract_sql("SELECT x FROM t"), "SELECT x FROM t");
  EXPECT_THROW(extract_sql("I cannot answer that."), ExtractionError);
  EXPECT_THROW(extract_sql("```sql\n```"), ExtractionError);
  EXPECT_THROW(extract_sql("I am not able to help with that."), ExtractionError);
  EXPECT_EQ(extract_sql("Sure, with pleasure.\nwith recursive c(n) as (select 1) select n from c"),
            "with recursive c(n) as (select 1) select n from c");
  EXPECT_EQ(extract_sql_blocks("```sql\nA\n```\ntext\n```\nB\n```"), (std::vector<std::string>{"A", "B"}));
}

TEST(ExtractSql, HandLabelledCompletions) {
  auto cases = json::parse(ReadFile(testing::FixtureDir() / "extract_sql_cases.json"));
  ASSERT_EQ(cases.size(), 20u);
  for (const auto& c : cases) EXPECT_EQ(extract_sql(c["completion"].get<std::string>()), c["sql"].get<std::string>());
}

}  // namespace
}  // namespace unjoin
