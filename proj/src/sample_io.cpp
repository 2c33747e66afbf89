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

#include "whqrom/sample_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "whqrom/error.hpp"

namespace whqrom::io {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> read_f64_binary(const fs::path& path) {
  const std::string raw = read_text(path);
  if (raw.size() % 8 != 0)
    throw ParseError(0, path.string() + ": size is not a multiple of 8 bytes");
  std::vector<double> out(raw.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b)
      bits = (bits << 8) | static_cast<unsigned char>(raw[8 * i + static_cast<std::size_t>(b)]);
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

void write_f64_binary(const fs::path& path, const std::vector<double>& values) {
  std::string raw(values.size() * 8, '\0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) {
      raw[8 * i + static_cast<std::size_t>(b)] = static_cast<char>(bits & 0xff);
      bits >>= 8;
    }
  }
  write_file_atomic(path, raw);
}

std::vector<double> parse_csv_values(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r,");
    std::string_view tok(line.data() + first, last - first + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(lineno, "cannot parse '" + std::string(tok) + "' as a number");
    out.push_back(v);
  }
  return out;
}

std::vector<double> read_csv_values(const fs::path& path) {
  return parse_csv_values(read_text(path));
}

std::vector<double> read_samples(const fs::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv" || ext == ".txt") return read_csv_values(path);
  return read_f64_binary(path);
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace whqrom::io
