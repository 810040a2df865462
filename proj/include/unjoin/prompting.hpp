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

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "unjoin/schema.hpp"

namespace unjoin {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named template files with `{slot}` placeholders.
class PromptLibrary {
 public:
  static constexpr const char* kUnjoinSp = "unjoin_sp";
  static constexpr const char* kMpStep1 = "unjoin_mp_step1";
  static constexpr const char* kMpStep2 = "unjoin_mp_step2";
  static constexpr const char* kCot = "cot";
  static constexpr const char* kCotSs = "cot_ss";
  static constexpr const char* kFewshotSimplified = "fewshot_simplified";
  static constexpr const char* kFewshotTranslation = "fewshot_translation";
  static constexpr const char* kFewshotCot = "fewshot_cot";

  /// Loads every template the builders need from `dir`; throws ConfigError when one is missing.
  static PromptLibrary Load(const std::filesystem::path& dir);
  /// Templates shipped with the source tree.
  static const PromptLibrary& Default();

  const std::string& Text(std::string_view id) const;
  const std::filesystem::path& directory() const { return dir_; }

  /// sha256 of each template file's bytes, keyed by id.
  std::map<std::string, std::string> Hashes() const;

  /// Single-pass substitution. Every placeholder needs a value and every value a placeholder.
  std::string Render(std::string_view id, const std::map<std::string, std::string>& slots) const;

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::string, std::less<>> texts_;
};

enum class BaselineKind { kCot, kCotSs };

BaselineKind ParseBaselineKind(std::string_view name);

std::string build_sp_prompt(const PromptLibrary& lib, const SimplifiedSchema& s, std::string_view question,
                            const DatabaseSchema& db, const ColumnDescriptions* descriptions = nullptr);

std::string build_mp_step1_prompt(const PromptLibrary& lib, const SimplifiedSchema& s, std::string_view question,
                                  const ColumnDescriptions* descriptions = nullptr);

std::string build_mp_step2_prompt(const PromptLibrary& lib, const SimplifiedSchema& s,
                                  std::string_view simplified_sql, std::string_view question,
                                  const DatabaseSchema& db, const ColumnDescriptions* descriptions = nullptr);

std::string build_baseline_prompt(const PromptLibrary& lib, BaselineKind kind, std::string_view schema_block,
                                  std::string_view question);

}  // namespace unjoin
