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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace unjoin {

std::string ToLower(std::string_view s);
std::string ToUpper(std::string_view s);
bool IEquals(std::string_view a, std::string_view b);
std::string_view Trim(std::string_view s);
std::string_view TrimRight(std::string_view s);

/// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

std::string ReadFile(const std::filesystem::path& path);
/// Writes through a sibling temp file and renames, so readers never see a partial file.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

/// Fixed two-decimal rendering used by every report surface.
std::string FormatFixed2(double value);

}  // namespace unjoin

namespace unjoin {

/// Returns valid UTF-8: well-formed sequences are kept, stray bytes are read as Latin-1.
std::string SanitizeUtf8(std::string_view s);

}  // namespace unjoin
