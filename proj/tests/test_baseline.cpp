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


#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "test_util.hpp"
#include "whqrom/baseline.hpp"
#include "whqrom/error.hpp"

namespace whqrom::baseline {
namespace {

using wht::SampledFunction;

SampledFunction zeros(int eta, int digits) {
  return SampledFunction(eta, digits, std::vector<std::int64_t>(std::size_t{1} << eta, 0));
}

TEST(SelectSwapCost, InstantiatesTheClosedForm) {
  const auto f = zeros(10, 15);
  const CostReport r = selectswap_cost(SelectSwapModel(10, 15, 8), f);
  EXPECT_EQ(r.toffoliCount, 368u);
  EXPECT_EQ(r.qubitCount, 140u);
  EXPECT_EQ(r.tCount, 4u * 368u);
  EXPECT_EQ(r.tDepth, 128u + 3u);
  EXPECT_EQ(r.quantumVolume, r.tCount * r.qubitCount);
}

TEST(SelectSwapCost, LambdaOne) {
  for (int eta = 1; eta <= 12; ++eta)
    for (int d : {1, 7, 15}) EXPECT_EQ(selectswap_toffoli(eta, d, 1), (1u << eta) + 2u * d);
}

TEST(SelectSwapCost, NonPowerOfTwoLambdaRoundsUp) {
  EXPECT_EQ(selectswap_toffoli(10, 15, 6), 171u + 180u);
  EXPECT_EQ(selectswap_depth(10, 6), static_cast<std::uint64_t>(std::ceil(1024.0 / 6 + std::log2(6.0))));
}

TEST(SelectSwapCost, ZeroFunctionHasNoCnots) {
  EXPECT_EQ(selectswap_cost(SelectSwapModel(6, 8, 2), zeros(6, 8)).cnotCount, 0u);
}

TEST(SelectSwapCost, CnotCountIsTwosComplementWeight) {
  SampledFunction f(1, 4, {-1, 5});
  EXPECT_EQ(cnot_lower_bound(f), 4u + 2u);
}

TEST(SelectSwapModel, RejectsLambdaOutsideRange) {
  EXPECT_THROW(SelectSwapModel(4, 8, 0), RangeError);
  EXPECT_THROW(SelectSwapModel(4, 8, 17), RangeError);
  EXPECT_NO_THROW(SelectSwapModel(4, 8, 16));
}

TEST(SelectSwapCost, ShapeMismatchThrows) {
  EXPECT_THROW(selectswap_cost(SelectSwapModel(4, 8, 2), zeros(5, 8)), ShapeError);
}

TEST(OptimizeLambda, NeverBeatenByExhaustiveScan) {
  for (int eta = 1; eta <= 12; ++eta) {
    for (int d : {1, 3, 8, 15, 33}) {
      const auto choice = optimize_lambda(eta, d, zeros(eta, d));
      std::uint64_t best = std::numeric_limits<std::uint64_t>::max(), arg = 0;
      for (std::uint64_t l = 1; l <= (1u << eta); ++l) {
        const std::uint64_t t = ((1u << eta) + l - 1) / l + 2u * d * l;
        if (t < best) best = t, arg = l;
      }
      EXPECT_EQ(choice.report.toffoliCount, best) << eta << " " << d;
      EXPECT_EQ(choice.lambda, arg) << eta << " " << d;
      EXPECT_TRUE(std::has_single_bit(choice.lambda_pow2));
      EXPECT_GE(choice.report_pow2.toffoliCount, best);
    }
  }
}

TEST(OptimizeLambda, NearTheRealOptimum) {
  const auto c = optimize_lambda(10, 15, zeros(10, 15));
  const double star = std::sqrt(1024.0 / 30.0);
  EXPECT_NEAR(static_cast<double>(c.lambda), star, 1.0);
  EXPECT_EQ(c.report.toffoliCount, selectswap_toffoli(10, 15, c.lambda));
}

TEST(OptimizeLambda, WideDigitsForceLambdaOne) {
  for (int eta = 1; eta <= 6; ++eta) {
    const int d = 1 << (eta - 1);
    EXPECT_EQ(optimize_lambda(eta, d, zeros(eta, d)).lambda, 1u) << eta;
  }
}

TEST(Compare, ZeroFunctionReportsInfinity) {
  const auto r = compare(zeros(6, 10), std::ldexp(1.0, -6));
  EXPECT_EQ(r.k, 0u);
  EXPECT_EQ(r.wh.toffoliCount, 0u);
  EXPECT_TRUE(std::isinf(r.ratios.toffoli_count));
  EXPECT_EQ(to_json(r)["ratios"]["toffoli_count"], "∞");
  EXPECT_NE(to_csv_row(r).find("∞"), std::string::npos);
}

TEST(Compare, RatiosAreQuotientsOfReports) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const auto f = testing::random_function(rng, 7, 9);
    const auto r = compare(f, std::ldexp(1.0, -6));
    auto d = [](std::uint64_t v) { return static_cast<double>(v); };
    EXPECT_NEAR(r.ratios.qubits, d(r.ss.qubitCount) / d(r.wh.qubitCount), 1e-12);
    EXPECT_NEAR(r.ratios.toffoli_count, d(r.ss.toffoliCount) / d(r.wh.toffoliCount), 1e-12);
    EXPECT_NEAR(r.ratios.toffoli_depth, d(r.ss.tDepth) / d(r.wh.tDepth), 1e-12);
    EXPECT_NEAR(r.ratios.toffoli_volume,
                d(r.ss.toffoliCount) * d(r.ss.qubitCount) /
                    (d(r.wh.toffoliCount) * d(r.wh.qubitCount)),
                1e-12);
    EXPECT_NEAR(r.ratios.cnot, d(r.ss.cnotCount) / d(r.wh.cnotCount), 1e-12);
    EXPECT_NEAR(r.ratios.weighted, weighted_score(r.ss) / weighted_score(r.wh), 1e-12);
    const auto j = to_json(r);
    EXPECT_EQ(j["selectswap"]["cnot_lower_bound"], r.ss.cnotCount);
    EXPECT_EQ(j["selectswap"]["lambda"], r.lambda);
  }
}

TEST(Compare, CsvRowMatchesHeaderWidth) {
  const auto f = pes_function(pes::SyntheticPes(pes::PesKind::Harmonic, 2), 8, 12,
                              Normalization::Raw);
  const auto r = compare(f, std::ldexp(1.0, -8));
  auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  EXPECT_EQ(commas(csv_header()), commas(to_csv_row(r)));
}

TEST(Compare, SmoothHarmonicBeatsSelectSwapAtLargerGrids) {
  const pes::SyntheticPes p(pes::PesKind::Harmonic, 2);
  for (int eta : {13, 14}) {
    const auto r = compare(pes_function(p, eta, 15, Normalization::Raw), std::ldexp(1.0, -10));
    EXPECT_GT(r.ratios.toffoli_count, 1.0) << eta;
    EXPECT_LE(r.wh.qubitCount, 3u * eta + 30u);
  }
}

TEST(Compare, SmoothHarmonicAtTwelveBitsIsNearParity) {
  const pes::SyntheticPes p(pes::PesKind::Harmonic, 2);
  const auto r = compare(pes_function(p, 12, 15, Normalization::Raw), std::ldexp(1.0, -10));
  EXPECT_EQ(r.wh.toffoliCount, 707u);
  EXPECT_EQ(r.ss.toffoliCount, 702u);
  EXPECT_EQ(r.lambda, 12u);
}

TEST(NormalizePes, ZeroNormThrows) {
  std::vector<double> v(8, 0.0);
  EXPECT_THROW(normalize_pes(v, Normalization::Raw, 10), DegenerateNormError);
}

TEST(NormalizePes, RawRangeIsQuantizable) {
  std::vector<double> v{-3.0, 3.0, 0.5, 1.0};
  const auto out = normalize_pes(v, Normalization::Raw, 6);
  EXPECT_DOUBLE_EQ(out[0], -1.0);
  EXPECT_LT(out[1], 1.0);
  EXPECT_NO_THROW(wht::quantize(out, 6));
}

TEST(NormalizePes, ArccosStaysInMiddleThird) {
  std::vector<double> v{-2.0, 2.0, 0.0, 1.0};
  const auto out = normalize_pes(v, Normalization::Arccos, 8);
  EXPECT_NEAR(out[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(out[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(out[2], 0.5, 1e-15);
}

}  // namespace
}  // namespace whqrom::baseline
