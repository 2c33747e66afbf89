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

#include <cmath>
#include <random>

#include "whqrom/dvr.hpp"
#include "whqrom/error.hpp"

namespace whqrom::dvr {
namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Quadrature, LegendreTwoPoint) {
  const auto q = gauss_quadrature(QuadratureKind::Legendre, 2);
  EXPECT_NEAR(q.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(q.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(q.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(q.weights[1], 1.0, 1e-15);
}

TEST(Quadrature, HermiteOnePoint) {
  const auto q = gauss_quadrature(QuadratureKind::Hermite, 1);
  EXPECT_EQ(q.nodes[0], 0.0);
  EXPECT_NEAR(q.weights[0], std::sqrt(M_PI), 1e-15);
}

TEST(Quadrature, RejectsEmptyOrder) {
  EXPECT_THROW(gauss_quadrature(QuadratureKind::Hermite, 0), RangeError);
  EXPECT_THROW(parse_kind("laguerre"), ConfigError);
  EXPECT_EQ(parse_kind("legendre"), QuadratureKind::Legendre);
}

// Relative to the sum of absolute contributions so odd and large moments share one scale.
void expect_exact(QuadratureKind kind, int n, double tol) {
  const auto q = gauss_quadrature(kind, n);
  for (int k = 0; k <= 2 * n - 1; ++k) {
    double s = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      const double term = q.weights[static_cast<std::size_t>(i)] *
                          std::pow(q.nodes[static_cast<std::size_t>(i)], k);
      s += term;
      scale += std::abs(term);
    }
    EXPECT_LE(std::abs(s - moment(kind, k)), tol * std::max(1.0, scale))
        << kind_name(kind) << " n=" << n << " k=" << k;
  }
}

TEST(Quadrature, MonomialExactness) {
  expect_exact(QuadratureKind::Legendre, 16, 1e-12);
  for (int n : {1, 2, 3, 5, 8, 13, 32, 64}) {
    expect_exact(QuadratureKind::Legendre, n, 1e-11);
    expect_exact(QuadratureKind::Hermite, n, 1e-11);
  }
}

TEST(Quadrature, NodesIncreasingWeightsPositive) {
  for (auto kind : {QuadratureKind::Hermite, QuadratureKind::Legendre}) {
    for (int n = 1; n <= 64; ++n) {
      const auto q = gauss_quadrature(kind, n);
      for (int k = 0; k < n; ++k) EXPECT_GT(q.weights[static_cast<std::size_t>(k)], 0.0);
      for (int k = 1; k < n; ++k)
        EXPECT_GT(q.nodes[static_cast<std::size_t>(k)], q.nodes[static_cast<std::size_t>(k - 1)]);
    }
  }
}

TEST(Transform, SinglePointIsIdentity) {
  for (auto kind : {QuadratureKind::Hermite, QuadratureKind::Legendre}) {
    const auto t = build_transform(gauss_quadrature(kind, 1));
    EXPECT_NEAR(t.t(0, 0), 1.0, 1e-15);
  }
}

TEST(Transform, Orthogonal) {
  for (auto kind : {QuadratureKind::Hermite, QuadratureKind::Legendre})
    for (int n : {2, 8, 17, 32, 64})
      EXPECT_LT(unitarity_deviation(build_transform(gauss_quadrature(kind, n))), 1e-10)
          << kind_name(kind) << " " << n;
}

TEST(Transform, NormalizersMatchClassicalNorms) {
  const auto t = build_transform(gauss_quadrature(QuadratureKind::Legendre, 4));
  EXPECT_NEAR(t.normalizers[3], std::sqrt(3.5), 1e-15);
  const auto h = build_transform(gauss_quadrature(QuadratureKind::Hermite, 4));
  EXPECT_NEAR(h.normalizers[2], 1.0 / std::sqrt(std::sqrt(M_PI) * 8.0), 1e-15);
}

TEST(FbrPotential, ConstantGivesScaledIdentity) {
  const auto t = build_transform(gauss_quadrature(QuadratureKind::Legendre, 10));
  std::vector<double> v(10, 2.5);
  EXPECT_LT(max_abs(fbr_potential(t, v) - 2.5 * Eigen::MatrixXd::Identity(10, 10)), 1e-12);
}

TEST(FbrPotential, PositionMatchesOscillatorLadder) {
  const int n = 12;
  const auto t = build_transform(gauss_quadrature(QuadratureKind::Hermite, n));
  const auto m = fbr_potential(t, t.quadrature.nodes);
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) ref(j + 1, j) = ref(j, j + 1) = std::sqrt((j + 1) / 2.0);
  EXPECT_LT(max_abs(m - ref), 1e-12);
}

TEST(FbrPotential, SimilarityKeepsGridValues) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto t = build_transform(gauss_quadrature(QuadratureKind::Hermite, 8));
  std::vector<double> v(8);
  for (auto& x : v) x = u(rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fbr_potential(t, v));
  std::vector<double> want = v;
  std::sort(want.begin(), want.end());
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(es.eigenvalues()[k], want[static_cast<std::size_t>(k)], 1e-12);
  EXPECT_THROW(fbr_potential(t, std::vector<double>(7, 0.0)), ShapeError);
}

TEST(FbrPotential, FbrAndDvrSpectraAgree) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n : {4, 16, 32}) {
    const HoScaling s{1.7, 0.8, 0.0};
    const auto t = build_transform(gauss_quadrature(QuadratureKind::Hermite, n));
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = u(rng);
    const Eigen::MatrixXd k = ho_kinetic(n, s);
    const Eigen::MatrixXd h_fbr = k + fbr_potential(t, v);
    const Eigen::MatrixXd tinv = t.t.inverse();
    Eigen::MatrixXd h_dvr = tinv.transpose() * k * tinv;
    for (int i = 0; i < n; ++i) h_dvr(i, i) += v[static_cast<std::size_t>(i)];
    h_dvr = 0.5 * (h_dvr + h_dvr.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(h_fbr), b(h_dvr);
    EXPECT_LT((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff(), 1e-8) << n;
  }
}

TEST(Oscillator, GridHamiltonianReproducesLadder) {
  const HoScaling s{2.0, 0.5, 1.3};
  const int n = 20;
  const auto q = gauss_quadrature(QuadratureKind::Hermite, n);
  const auto t = build_transform(q);
  const auto r = physical_nodes(q, s);
  std::vector<double> v(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    v[i] = 0.5 * s.mass * s.omega * s.omega * (r[i] - s.center) * (r[i] - s.center);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ho_kinetic(n, s) + fbr_potential(t, v));
  for (int j = 0; j < n / 2; ++j) EXPECT_NEAR(es.eigenvalues()[j], s.omega * (j + 0.5), 1e-10);
  EXPECT_THROW(physical_nodes(gauss_quadrature(QuadratureKind::Legendre, 3), s), ConfigError);
}

void expect_recursion(QuadratureKind kind, int n, int f) {
  const auto t = build_transform(gauss_quadrature(kind, n));
  const auto r = recursion_coeffs(kind, n, f);
  const auto rec = recursion_columns(r, t.quadrature.nodes, midpoint_columns(t, f));
  EXPECT_LT(max_abs(rec - t.t), 1e-8) << kind_name(kind) << " n=" << n << " F=" << f;
}

TEST(Recursion, ReconstructsTransform) {
  expect_recursion(QuadratureKind::Legendre, 8, 8);
  expect_recursion(QuadratureKind::Legendre, 16, 4);
  for (auto kind : {QuadratureKind::Hermite, QuadratureKind::Legendre})
    for (int n : {2, 4, 8, 16, 32})
      for (int f = 2; f <= n; f *= 2) expect_recursion(kind, n, f);
}

TEST(Recursion, TwoColumnsNeedNoSteps) {
  const auto t = build_transform(gauss_quadrature(QuadratureKind::Legendre, 2));
  const auto init = midpoint_columns(t, 2);
  EXPECT_EQ(init, t.t);
  const auto r = recursion_coeffs(QuadratureKind::Legendre, 2, 2);
  EXPECT_EQ(r.gamma[0], 1.0);
  EXPECT_EQ(r.gamma[1], 1.0);
  EXPECT_EQ(recursion_columns(r, t.quadrature.nodes, init), t.t);
}

TEST(Recursion, MidpointScalesAreOne) {
  const auto r = recursion_coeffs(QuadratureKind::Hermite, 32, 8);
  for (int w = 0; w < 4; ++w) {
    EXPECT_EQ(r.gamma[static_cast<std::size_t>(8 * w + 3)], 1.0);
    EXPECT_EQ(r.gamma[static_cast<std::size_t>(8 * w + 4)], 1.0);
  }
}

TEST(Recursion, UnscaledRecurrenceHoldsOnColumns) {
  const int n = 10;
  const auto t = build_transform(gauss_quadrature(QuadratureKind::Hermite, n));
  const auto r = recursion_coeffs(QuadratureKind::Hermite, n, 2);
  for (int q = 0; q + 2 < n; ++q)
    for (int p = 0; p < n; ++p) {
      const auto u = static_cast<std::size_t>(q);
      const double x = t.quadrature.nodes[static_cast<std::size_t>(p)];
      EXPECT_NEAR(t.t(p, q + 2), (r.a[u] + r.b[u] * x) * t.t(p, q + 1) + r.c[u] * t.t(p, q), 1e-10);
    }
}

TEST(Recursion, SegmentMustDivide) {
  EXPECT_THROW(recursion_coeffs(QuadratureKind::Legendre, 12, 8), ShapeError);
  EXPECT_THROW(recursion_coeffs(QuadratureKind::Legendre, 12, 3), ShapeError);
}

TEST(OracleCost, StubCoster) {
  const QromCoster stub = [](std::uint64_t n, int d) {
    CostReport r;
    r.tCount = n + static_cast<std::uint64_t>(d);
    return r;
  };
  const std::vector<int> one{16};
  EXPECT_EQ(dvr_oracle_cost(one, 8, stub).tCount, 1584u);
  EXPECT_EQ(dvr_oracle_cost(std::vector<int>{}, 8, stub).tCount, 0u);
  const std::vector<int> three{16, 16, 16};
  EXPECT_EQ(dvr_oracle_cost(three, 8, stub).tCount, 3u * 1584u);
}

TEST(OracleCost, SelectSwapCosterUsesOptimalLambda) {
  const auto c = selectswap_coster()(1024, 15);
  EXPECT_EQ(c.toffoliCount, 171u + 180u);
}

TEST(OracleCost, WhCosterRunsOnSmallTable) {
  const auto c = wh_transform_coster(QuadratureKind::Legendre, std::ldexp(1.0, -6))(64, 10);
  EXPECT_GT(c.toffoliCount, 0u);
  EXPECT_THROW(wh_transform_coster(QuadratureKind::Legendre, 0.01)(63, 10), ShapeError);
}

TEST(InitCost, ClosedForms) {
  EXPECT_DOUBLE_EQ(init_cost_selectswap(64, 16, 4), 2 * 64 * 4 / 2.0 + 32.0);
  EXPECT_DOUBLE_EQ(init_cost_select(64, 4), 1024.0 + 64.0);
}

TEST(Csv, SeventeenDigits) {
  Eigen::MatrixXd m(1, 2);
  m << 1.0 / 3.0, 2.0;
  EXPECT_EQ(to_csv(m), "0.33333333333333331,2\n");
  const auto q = gauss_quadrature(QuadratureKind::Hermite, 1);
  EXPECT_EQ(to_csv(q).substr(0, 12), "node,weight\n");
}

}  // namespace
}  // namespace whqrom::dvr
