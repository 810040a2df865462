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

#include "support/fixtures.hpp"
#include "unjoin/prompting.hpp"
#include "unjoin/util.hpp"

namespace unjoin {
namespace {

const PromptLibrary& Lib() {
  static const PromptLibrary lib = PromptLibrary::Load(UNJOIN_TEST_TEMPLATES);
  return lib;
}

std::string Golden(const std::string& name) { return ReadFile(testing::FixtureDir() / "golden" / (name + ".txt")); }

// Asserts the golden blocks appear verbatim and in the given order.
void ExpectInOrder(const std::string& text, const std::vector<std::string>& parts) {
  size_t at = 0;
  for (const auto& p : parts) {
    size_t found = text.find(p, at);
    ASSERT_NE(found, std::string::npos) << "missing or out of order:\n" << p;
    at = found + p.size();
  }
}

size_t Pos(const std::string& text, const std::string& needle) {
  size_t p = text.find(needle);
  EXPECT_NE(p, std::string::npos) << needle;
  return p;
}

struct Fixture {
  DatabaseSchema db = testing::BankWithKeys();
  SimplifiedSchema s = simplify_schema(db);
};

TEST(Prompting, SinglePromptFidelity) {
  Fixture f;
  auto desc = ColumnDescriptions::FromSchema(testing::BankDataExample());
  std::string q = "How many male customers have a loan?";
  auto p = build_sp_prompt(Lib(), f.s, q, f.db, &desc);
  ExpectInOrder(p, {Golden("sp_1_intro"), render_simplified(f.s, &desc), Golden("sp_2_fewshot"),
                    Golden("sp_3_translation"), Golden("sp_4_considerations"), render_original(f.db), q});
  EXPECT_NE(p.find("DO NOT do any join operations."), std::string::npos);
  EXPECT_EQ(p.find('{'), std::string::npos);
  EXPECT_EQ(p, build_sp_prompt(Lib(), f.s, q, f.db, &desc));
}

TEST(Prompting, SinglePromptWithoutDescriptions) {
  Fixture f;
  auto p = build_sp_prompt(Lib(), f.s, "q?", f.db);
  EXPECT_NE(p.find("Simplified Schema:\nTable: bank_data\ncustomer.customer_id\ncustomer.name\n"), std::string::npos);
}

TEST(Prompting, MultiPromptStepOne) {
  Fixture f;
  std::string q = "List all customers with an approved loan.";
  auto p = build_mp_step1_prompt(Lib(), f.s, q);
  ExpectInOrder(p, {Golden("mp1_1_intro"), Golden("sp_2_fewshot"), render_simplified(f.s), q + "\n\nOutput:\n"});
  EXPECT_NE(p.find("Treat this as a single table."), std::string::npos);
  EXPECT_LT(Pos(p, "Schema:\nTable: bank_data"), Pos(p, "Question:\n" + q));
  // the instruction list follows the examples in the listing, the schema follows it
  ExpectInOrder(p, {Golden("mp1_2_instructions").substr(0, Golden("mp1_2_instructions").find("Output:")),
                    "Schema:\n", "Output:\n"});
  EXPECT_EQ(p, build_mp_step1_prompt(Lib(), f.s, q));
}

TEST(Prompting, MultiPromptStepTwo) {
  Fixture f;
  std::string q = "List all customers with an approved loan.";
  std::string sql = "SELECT customer.name FROM bank_data WHERE loan.status = 'Approved'";
  auto p = build_mp_step2_prompt(Lib(), f.s, sql, q, f.db);
  ExpectInOrder(p, {Golden("mp2_1_steps"), Golden("mp2_2_considerations"), q, render_simplified(f.s), sql,
                    render_original(f.db), Golden("mp2_3_output")});
  EXPECT_NE(p.find("Construct Necessary Joins"), std::string::npos);
  EXPECT_NE(p.find("loan.customer_id = customer.customer_id\n"), std::string::npos);
  EXPECT_EQ(p, build_mp_step2_prompt(Lib(), f.s, sql, q, f.db));
}

TEST(Prompting, Baselines) {
  Fixture f;
  std::string original = render_original(f.db);
  std::string simplified = render_simplified(f.s);
  auto cot = build_baseline_prompt(Lib(), BaselineKind::kCot, original, "q?");
  EXPECT_NE(cot.find(original), std::string::npos);
  EXPECT_EQ(cot.find("Simplified Schema"), std::string::npos);
  auto ss = build_baseline_prompt(Lib(), BaselineKind::kCotSs, simplified, "q?");
  EXPECT_NE(ss.find(simplified), std::string::npos);
  EXPECT_EQ(ss.find("CREATE TABLE"), std::string::npos);
  EXPECT_NE(ss.find("include every JOIN"), std::string::npos);
  // shared few-shot block
  EXPECT_NE(cot.find(Lib().Text(PromptLibrary::kFewshotCot)), std::string::npos);
  EXPECT_NE(ss.find(Lib().Text(PromptLibrary::kFewshotCot)), std::string::npos);
  EXPECT_EQ(cot, build_baseline_prompt(Lib(), BaselineKind::kCot, original, "q?"));
  EXPECT_THROW(ParseBaselineKind("pot"), ConfigError);
  EXPECT_EQ(ParseBaselineKind("CoT-SS"), BaselineKind::kCotSs);
}

TEST(Prompting, FewShotNeverLeaksEvaluationSchemas) {
  for (const char* id : {PromptLibrary::kFewshotSimplified, PromptLibrary::kFewshotTranslation,
                         PromptLibrary::kFewshotCot}) {
    std::string text = ToLower(Lib().Text(id));
    for (const auto& db : testing::MiniCatalogue().databases())
      for (const auto& t : db.tables()) EXPECT_EQ(text.find(ToLower(t.name) + "."), std::string::npos) << t.name;
    EXPECT_NE(text.find("bank_data"), std::string::npos);
  }
}

TEST(Prompting, RenderSlotRules) {
  auto dir = testing::TempDir("templates");
  for (const char* id : {"unjoin_sp", "unjoin_mp_step1", "unjoin_mp_step2", "cot", "cot_ss", "fewshot_simplified",
                         "fewshot_translation", "fewshot_cot"})
    WriteFileAtomic(dir / (std::string(id) + ".txt"), "A {question} B {not a slot} {}\n");
  auto lib = PromptLibrary::Load(dir);
  EXPECT_EQ(lib.Render("cot", {{"question", "{question}"}}), "A {question} B {not a slot} {}\n");
  EXPECT_THROW(lib.Render("cot", {}), ConfigError);
  EXPECT_THROW(lib.Render("cot", {{"question", "x"}, {"extra", "y"}}), ConfigError);
  EXPECT_EQ(lib.Hashes().size(), 8u);
  EXPECT_EQ(lib.Hashes().at("cot"), Sha256Hex("A {question} B {not a slot} {}\n"));
  std::filesystem::remove(dir / "cot.txt");
  EXPECT_THROW(PromptLibrary::Load(dir), ConfigError);
}

}  // namespace
}  // namespace unjoin
