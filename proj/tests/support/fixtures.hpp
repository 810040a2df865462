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
#include <string>

#include "unjoin/catalogue.hpp"
#include "unjoin/schema.hpp"

namespace unjoin::testing {

std::filesystem::path FixtureDir();

/// The eight-column bank_data example (customer, account, loan) with its descriptions.
DatabaseSchema BankDataExample();

/// bank_data with key columns, used where join paths matter.
DatabaseSchema BankWithKeys();

/// Catalogue of the three spider_mini databases.
const SchemaCatalogue& MiniCatalogue();

/// Copies spider_mini into `dst` and builds each `<db>/<db>.sqlite` from its schema.sql.
std::filesystem::path MaterializeSpiderMini(const std::filesystem::path& dst);

/// Creates a SQLite file from a script.
void BuildDatabase(const std::filesystem::path& db_file, const std::string& script);

/// Fresh empty directory under the system temp dir.
std::filesystem::path TempDir(const std::string& name);

}  // namespace unjoin::testing

namespace unjoin::testing {

/// Scores every case of the frozen metrics fixture and returns one line per mismatch.
std::vector<std::string> CheckMetricOracle(size_t* fixtures_checked = nullptr);

}  // namespace unjoin::testing
