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

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace whqrom {

struct CostReport {
  std::uint64_t tCount = 0;
  std::uint64_t toffoliCount = 0;
  std::uint64_t cnotCount = 0;
  std::uint64_t cliffordCount = 0;
  std::uint64_t qubitCount = 0;
  std::uint64_t tDepth = 0;
  std::uint64_t quantumVolume = 0;

  bool operator==(const CostReport&) const = default;
};

nlohmann::json to_json(const CostReport& r);
CostReport cost_report_from_json(const nlohmann::json& j);

/// JSON encoding of a ratio; an infinite ratio becomes the string "∞".
nlohmann::json ratio_json(double r);
std::string ratio_text(double r);

}  // namespace whqrom
