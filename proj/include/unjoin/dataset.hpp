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
#include <string>
#include <string_view>
#include <vector>

#include "unjoin/catalogue.hpp"
#include "unjoin/pipeline.hpp"

namespace unjoin {

enum class Flavor { kSpider, kBird };

Flavor ParseFlavor(std::string_view name);
std::string FlavorName(Flavor f);

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dataset {
  Flavor flavor = Flavor::kSpider;
  std::filesystem::path root;
  SchemaCatalogue catalogue;
  std::vector<EvalItem> items;
  std::map<std::string, ColumnDescriptions> descriptions;  // by db_id, BIRD only

  std::filesystem::path DatabaseFile(std::string_view db_id) const;
  const ColumnDescriptions* DescriptionsFor(std::string_view db_id) const;
};

/// The flavor's tables.json (BIRD prefers dev_tables.json).
std::filesystem::path CatalogueFile(const std::filesystem::path& root, Flavor flavor);

/// Reads the flavor's standard layout under `root`. `split` names the items file.
Dataset load_dataset(const std::filesystem::path& root, Flavor flavor, const std::string& split = "dev.json");

struct DroppedItem {
  std::string id;
  std::string reason;
};

struct FilterResult {
  std::vector<EvalItem> items;
  std::vector<DroppedItem> dropped;  // unparseable gold SQL only
  size_t single_table = 0;

  size_t DatabaseCount() const;
};

/// Keeps multi-table items and fills their gold table count.
FilterResult filter_items(const std::vector<EvalItem>& items, const SchemaCatalogue& catalogue);

}  // namespace unjoin
