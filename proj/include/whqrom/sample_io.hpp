// Copyright 2026 The whqrom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace whqrom::io {

/// Raw little-endian IEEE-754 binary64 values.
std::vector<double> read_f64_binary(const std::filesystem::path& path);
void write_f64_binary(const std::filesystem::path& path, const std::vector<double>& values);

/// One value per line; blank lines and lines starting with '#' are skipped.
/// Throws ParseError carrying the 1-based line number.
std::vector<double> read_csv_values(const std::filesystem::path& path);
std::vector<double> parse_csv_values(const std::string& text);

/// Chooses the reader from the extension (.csv / .txt versus anything else).
std::vector<double> read_samples(const std::filesystem::path& path);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_text(const std::filesystem::path& path);

}  // namespace whqrom::io
