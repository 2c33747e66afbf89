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

#include "whqrom/cost_report.hpp"

#include <cmath>
#include <sstream>

namespace whqrom {

nlohmann::json to_json(const CostReport& r) {
  return {{"tCount", r.tCount},           {"toffoliCount", r.toffoliCount},
          {"cnotCount", r.cnotCount},     {"cliffordCount", r.cliffordCount},
          {"qubitCount", r.qubitCount},   {"tDepth", r.tDepth},
          {"quantumVolume", r.quantumVolume}};
}

CostReport cost_report_from_json(const nlohmann::json& j) {
  CostReport r;
  r.tCount = j.at("tCount").get<std::uint64_t>();
  r.toffoliCount = j.at("toffoliCount").get<std::uint64_t>();
  r.cnotCount = j.at("cnotCount").get<std::uint64_t>();
  r.cliffordCount = j.at("cliffordCount").get<std::uint64_t>();
  r.qubitCount = j.at("qubitCount").get<std::uint64_t>();
  r.tDepth = j.at("tDepth").get<std::uint64_t>();
  r.quantumVolume = j.at("quantumVolume").get<std::uint64_t>();
  return r;
}

nlohmann::json ratio_json(double r) {
  if (std::isinf(r)) return "∞";
  return r;
}

std::string ratio_text(double r) {
  if (std::isinf(r)) return "∞";
  std::ostringstream ss;
  ss.precision(17);
  ss << r;
  return ss.str();
}

}  // namespace whqrom
