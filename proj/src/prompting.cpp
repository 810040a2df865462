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

#include "unjoin/prompting.hpp"

#include <set>

#include "unjoin/util.hpp"

#ifndef UNJOIN_DEFAULT_TEMPLATE_DIR
#define UNJOIN_DEFAULT_TEMPLATE_DIR "templates"
#endif

namespace unjoin {

namespace {

const char* const kAllTemplates[] = {
    PromptLibrary::kUnjoinSp,          PromptLibrary::kMpStep1,        PromptLibrary::kMpStep2,
    PromptLibrary::kCot,               PromptLibrary::kCotSs,          PromptLibrary::kFewshotSimplified,
    PromptLibrary::kFewshotTranslation, PromptLibrary::kFewshotCot,
};

bool IsSlotChar(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

// Removes one trailing newline so blocks sit flush against the template's own line breaks.
std::string Block(std::string text) {
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

}  // namespace

PromptLibrary PromptLibrary::Load(const std::filesystem::path& dir) {
  PromptLibrary lib;
  lib.dir_ = dir;
  std::string missing;
  for (const char* id : kAllTemplates) {
    auto path = dir / (std::string(id) + ".txt");
    if (!std::filesystem::exists(path)) {
      missing += (missing.empty() ? "" : ", ") + path.string();
      continue;
    }
    lib.texts_.emplace(id, ReadFile(path));
  }
  if (!missing.empty()) throw ConfigError("missing prompt templates: " + missing);
  return lib;
}

const PromptLibrary& PromptLibrary::Default() {
  static const PromptLibrary lib = Load(UNJOIN_DEFAULT_TEMPLATE_DIR);
  return lib;
}

const std::string& PromptLibrary::Text(std::string_view id) const {
  auto it = texts_.find(id);
  if (it == texts_.end()) throw ConfigError("unknown template '" + std::string(id) + "'");
  return it->second;
}

std::map<std::string, std::string> PromptLibrary::Hashes() const {
  std::map<std::string, std::string> out;
  for (const auto& [id, text] : texts_) out[id] = Sha256Hex(text);
  return out;
}

std::string PromptLibrary::Render(std::string_view id, const std::map<std::string, std::string>& slots) const {
  const std::string& text = Text(id);
  std::string out;
  out.reserve(text.size() + 1024);
  std::set<std::string> used;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      size_t j = i + 1;
      while (j < text.size() && IsSlotChar(text[j])) ++j;
      if (j < text.size() && text[j] == '}' && j > i + 1) {
        std::string name = text.substr(i + 1, j - i - 1);
        auto it = slots.find(name);
        if (it == slots.end())
          throw ConfigError("template '" + std::string(id) + "' has no value for slot {" + name + "}");
        out += it->second;
        used.insert(name);
        i = j + 1;
        continue;
      }
    }
    out += text[i++];
  }
  for (const auto& [name, value] : slots)
    if (!used.count(name)) throw ConfigError("template '" + std::string(id) + "' has no slot {" + name + "}");
  return out;
}

BaselineKind ParseBaselineKind(std::string_view name) {
  std::string n = ToLower(name);
  if (n == "cot") return BaselineKind::kCot;
  if (n == "cot-ss" || n == "cot_ss") return BaselineKind::kCotSs;
  throw ConfigError("unknown baseline kind '" + std::string(name) + "'");
}

std::string build_sp_prompt(const PromptLibrary& lib, const SimplifiedSchema& s, std::string_view question,
                            const DatabaseSchema& db, const ColumnDescriptions* descriptions) {
  return lib.Render(PromptLibrary::kUnjoinSp,
                    {{"schema_block", Block(render_simplified(s, descriptions))},
                     {"examples_block", Block(lib.Text(PromptLibrary::kFewshotTranslation))},
                     {"original_schema_block", Block(render_original(db))},
                     {"question", std::string(question)}});
}

std::string build_mp_step1_prompt(const PromptLibrary& lib, const SimplifiedSchema& s, std::string_view question,
                                  const ColumnDescriptions* descriptions) {
  return lib.Render(PromptLibrary::kMpStep1, {{"schema_block", Block(render_simplified(s, descriptions))},
                                              {"examples_block", Block(lib.Text(PromptLibrary::kFewshotSimplified))},
                                              {"question", std::string(question)}});
}

std::string build_mp_step2_prompt(const PromptLibrary& lib, const SimplifiedSchema& s,
                                  std::string_view simplified_sql, std::string_view question,
                                  const DatabaseSchema& db, const ColumnDescriptions* descriptions) {
  return lib.Render(PromptLibrary::kMpStep2,
                    {{"schema_block", Block(render_simplified(s, descriptions))},
                     {"examples_block", Block(lib.Text(PromptLibrary::kFewshotTranslation))},
                     {"simplified_query", std::string(simplified_sql)},
                     {"original_schema_block", Block(render_original(db))},
                     {"question", std::string(question)}});
}

std::string build_baseline_prompt(const PromptLibrary& lib, BaselineKind kind, std::string_view schema_block,
                                  std::string_view question) {
  std::map<std::string, std::string> slots = {{"examples_block", Block(lib.Text(PromptLibrary::kFewshotCot))},
                                              {"question", std::string(question)}};
  if (kind == BaselineKind::kCot) {
    slots["original_schema_block"] = Block(std::string(schema_block));
    return lib.Render(PromptLibrary::kCot, slots);
  }
  slots["schema_block"] = Block(std::string(schema_block));
  return lib.Render(PromptLibrary::kCotSs, slots);
}

}  // namespace unjoin
