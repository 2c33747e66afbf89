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
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "whqrom/cost_report.hpp"
#include "whqrom/pes.hpp"
#include "whqrom/qrom.hpp"
#include "whqrom/wht.hpp"

namespace whqrom::baseline {

struct SelectSwapModel {
  int eta;
  int digits;
  std::uint64_t lambda;

  SelectSwapModel(int eta, int digits, std::uint64_t lambda);
};

std::uint64_t selectswap_toffoli(int eta, int digits, std::uint64_t lambda);
std::uint64_t selectswap_depth(int eta, std::uint64_t lambda);

/// Sum over x of popcount(f(x) as d-bit two's complement).
std::uint64_t cnot_lower_bound(const wht::SampledFunction& f);

/// cnotCount carries the lower bound; cliffordCount equals it.
CostReport selectswap_cost(const SelectSwapModel& model, const wht::SampledFunction& f);

struct LambdaChoice {
  std::uint64_t lambda;       // exhaustive integer scan, ties to the smaller lambda
  std::uint64_t lambda_pow2;  // best power of two
  CostReport report;
  CostReport report_pow2;
};

LambdaChoice optimize_lambda(int eta, int digits, const wht::SampledFunction& f);

struct Ratios {
  double qubits;
  double toffoli_count;
  double toffoli_depth;
  double toffoli_volume;
  double cnot;
  double weighted;
};

struct RatioRecord {
  int eta;
  int digits_wh;
  int digits_ss;
  double epsilon;
  std::size_t k;
  std::uint64_t lambda;
  CostReport wh;
  CostReport ss;
  Ratios ratios;  // SELECT-SWAP over WH; infinity when WH is zero
};

/// toffoli + cnot / 50.
double weighted_score(const CostReport& r);
double safe_ratio(double num, double den);

/// WH side: minimal truncation, Gray ordering, pair cancellation.
RatioRecord compare(const wht::SampledFunction& f, double epsilon);
/// Separate digit counts for the two sides.
RatioRecord compare(const wht::SampledFunction& f_wh, const wht::SampledFunction& f_ss,
                    double epsilon);

nlohmann::json to_json(const RatioRecord& r);
std::string csv_header();
std::string to_csv_row(const RatioRecord& r);

enum class Normalization { Raw, Arccos };

/// Raw: clamp(V / |V|_inf, -1, 1 - 2^(1-d)). Arccos: arccos(V / (2 |V|_inf)) / pi.
std::vector<double> normalize_pes(std::span<const double> v, Normalization mode, int digits);

/// Synthetic PES sampled on eta address bits, normalized and quantized to d digits.
wht::SampledFunction pes_function(const pes::SyntheticPes& p, int eta, int digits,
                                  Normalization mode);

}  // namespace whqrom::baseline
