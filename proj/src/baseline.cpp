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

#include "whqrom/baseline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "whqrom/error.hpp"

namespace whqrom::baseline {

SelectSwapModel::SelectSwapModel(int eta_, int digits_, std::uint64_t lambda_)
    : eta(eta_), digits(digits_), lambda(lambda_) {
  if (eta < 0 || eta > 40) throw RangeError("SELECT-SWAP: eta out of range");
  if (digits < 1) throw RangeError("SELECT-SWAP: d must be positive");
  if (lambda < 1 || lambda > (std::uint64_t{1} << eta))
    throw RangeError("SELECT-SWAP: lambda must lie in [1, 2^eta]");
}

std::uint64_t selectswap_toffoli(int eta, int digits, std::uint64_t lambda) {
  const std::uint64_t n = std::uint64_t{1} << eta;
  return (n + lambda - 1) / lambda + 2 * static_cast<std::uint64_t>(digits) * lambda;
}

std::uint64_t selectswap_depth(int eta, std::uint64_t lambda) {
  const std::uint64_t n = std::uint64_t{1} << eta;
  if (std::has_single_bit(lambda))
    return (n + lambda - 1) / lambda + static_cast<std::uint64_t>(std::countr_zero(lambda));
  const double v = static_cast<double>(n) / static_cast<double>(lambda) +
                   std::log2(static_cast<double>(lambda));
  return static_cast<std::uint64_t>(std::ceil(v));
}

std::uint64_t cnot_lower_bound(const wht::SampledFunction& f) {
  const std::uint64_t mask =
      f.digits() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << f.digits()) - 1;
  std::uint64_t total = 0;
  for (auto v : f.values()) total += std::popcount(static_cast<std::uint64_t>(v) & mask);
  return total;
}

namespace {

CostReport report_for(int eta, int digits, std::uint64_t lambda, std::uint64_t cnot) {
  CostReport r;
  r.toffoliCount = selectswap_toffoli(eta, digits, lambda);
  r.tCount = 4 * r.toffoliCount;
  r.qubitCount = 2 * static_cast<std::uint64_t>(eta) + lambda * static_cast<std::uint64_t>(digits);
  r.tDepth = selectswap_depth(eta, lambda);
  r.cnotCount = cnot;
  r.cliffordCount = cnot;
  r.quantumVolume = r.tCount * r.qubitCount;
  return r;
}

}  // namespace

CostReport selectswap_cost(const SelectSwapModel& model, const wht::SampledFunction& f) {
  if (f.eta() != model.eta || f.digits() != model.digits)
    throw ShapeError("SELECT-SWAP: function does not match model");
  return report_for(model.eta, model.digits, model.lambda, cnot_lower_bound(f));
}

LambdaChoice optimize_lambda(int eta, int digits, const wht::SampledFunction& f) {
  if (f.eta() != eta || f.digits() != digits)
    throw ShapeError("optimize_lambda: function does not match eta / d");
  const std::uint64_t n = std::uint64_t{1} << eta;
  std::uint64_t best = 1, best_p2 = 1;
  std::uint64_t best_t = selectswap_toffoli(eta, digits, 1);
  std::uint64_t best_t_p2 = best_t;
  for (std::uint64_t l = 2; l <= n; ++l) {
    if (2 * static_cast<std::uint64_t>(digits) * l > best_t_p2) break;
    const std::uint64_t t = selectswap_toffoli(eta, digits, l);
    if (t < best_t) {
      best_t = t;
      best = l;
    }
    if (std::has_single_bit(l) && t < best_t_p2) {
      best_t_p2 = t;
      best_p2 = l;
    }
  }
  const std::uint64_t cnot = cnot_lower_bound(f);
  return {best, best_p2, report_for(eta, digits, best, cnot), report_for(eta, digits, best_p2, cnot)};
}

double weighted_score(const CostReport& r) {
  return static_cast<double>(r.toffoliCount) + static_cast<double>(r.cnotCount) / 50.0;
}

double safe_ratio(double num, double den) {
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

RatioRecord compare(const wht::SampledFunction& f, double epsilon) { return compare(f, f, epsilon); }

RatioRecord compare(const wht::SampledFunction& f_wh, const wht::SampledFunction& f_ss,
                    double epsilon) {
  if (f_wh.eta() != f_ss.eta()) throw ShapeError("compare: eta differs between sides");
  const wht::TruncatedSpectrum t = wht::minimal_truncation(f_wh, epsilon);
  const qrom::QromCircuit c = qrom::pair_cancel(qrom::synthesize(t), t);
  const CostReport wh = qrom::cost(c);
  const LambdaChoice lc = optimize_lambda(f_ss.eta(), f_ss.digits(), f_ss);
  const CostReport& ss = lc.report;
  auto d = [](std::uint64_t v) { return static_cast<double>(v); };
  Ratios q{};
  q.qubits = safe_ratio(d(ss.qubitCount), d(wh.qubitCount));
  q.toffoli_count = safe_ratio(d(ss.toffoliCount), d(wh.toffoliCount));
  q.toffoli_depth = safe_ratio(d(ss.tDepth), d(wh.tDepth));
  q.toffoli_volume = safe_ratio(d(ss.toffoliCount) * d(ss.qubitCount),
                                d(wh.toffoliCount) * d(wh.qubitCount));
  q.cnot = safe_ratio(d(ss.cnotCount), d(wh.cnotCount));
  q.weighted = safe_ratio(weighted_score(ss), weighted_score(wh));
  return {f_wh.eta(), f_wh.digits(), f_ss.digits(), epsilon, t.k(), lc.lambda, wh, ss, q};
}

nlohmann::json to_json(const RatioRecord& r) {
  nlohmann::json ss = whqrom::to_json(r.ss);
  ss["cnot_lower_bound"] = r.ss.cnotCount;
  ss["lambda"] = r.lambda;
  return {{"eta", r.eta},
          {"digits_wh", r.digits_wh},
          {"digits_ss", r.digits_ss},
          {"epsilon", r.epsilon},
          {"k", r.k},
          {"wh", whqrom::to_json(r.wh)},
          {"selectswap", ss},
          {"ratios",
           {{"qubits", ratio_json(r.ratios.qubits)},
            {"toffoli_count", ratio_json(r.ratios.toffoli_count)},
            {"toffoli_depth", ratio_json(r.ratios.toffoli_depth)},
            {"toffoli_volume", ratio_json(r.ratios.toffoli_volume)},
            {"cnot", ratio_json(r.ratios.cnot)},
            {"weighted", ratio_json(r.ratios.weighted)}}}};
}

std::string csv_header() {
  return "eta,digits_wh,digits_ss,epsilon,k,lambda,wh_toffoli,wh_cnot,wh_qubits,wh_depth,"
         "ss_toffoli,ss_cnot,ss_qubits,ss_depth,r_qubits,r_toffoli,r_depth,r_volume,r_cnot,"
         "r_weighted";
}

std::string to_csv_row(const RatioRecord& r) {
  std::ostringstream s;
  s.precision(17);
  s << r.eta << ',' << r.digits_wh << ',' << r.digits_ss << ',' << r.epsilon << ',' << r.k << ','
    << r.lambda << ',' << r.wh.toffoliCount << ',' << r.wh.cnotCount << ',' << r.wh.qubitCount
    << ',' << r.wh.tDepth << ',' << r.ss.toffoliCount << ',' << r.ss.cnotCount << ','
    << r.ss.qubitCount << ',' << r.ss.tDepth << ',' << ratio_text(r.ratios.qubits) << ','
    << ratio_text(r.ratios.toffoli_count) << ',' << ratio_text(r.ratios.toffoli_depth) << ','
    << ratio_text(r.ratios.toffoli_volume) << ',' << ratio_text(r.ratios.cnot) << ','
    << ratio_text(r.ratios.weighted);
  return s.str();
}

std::vector<double> normalize_pes(std::span<const double> v, Normalization mode, int digits) {
  double norm = 0.0;
  for (double x : v) norm = std::max(norm, std::abs(x));
  if (norm == 0.0) throw DegenerateNormError("PES has zero sup-norm");
  std::vector<double> out(v.size());
  const double hi = 1.0 - std::ldexp(1.0, 1 - digits);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (mode == Normalization::Raw)
      out[i] = std::clamp(v[i] / norm, -1.0, hi);
    else
      out[i] = std::acos(v[i] / (2.0 * norm)) / M_PI;
  }
  return out;
}

wht::SampledFunction pes_function(const pes::SyntheticPes& p, int eta, int digits,
                                  Normalization mode) {
  const auto bits = pes::split_bits(eta, p.dims());
  const auto v = pes::sample_grid(p, bits);
  return wht::quantize(normalize_pes(v, mode, digits), digits);
}

}  // namespace whqrom::baseline
