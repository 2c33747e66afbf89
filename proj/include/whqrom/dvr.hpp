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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "whqrom/cost_report.hpp"

namespace whqrom::dvr {

enum class QuadratureKind { Hermite, Legendre };

QuadratureKind parse_kind(const std::string& name);
std::string kind_name(QuadratureKind kind);

/// Weight exp(-x^2) on the real line (Hermite) or 1 on [-1, 1] (Legendre).
struct Quadrature {
  QuadratureKind kind;
  int n;
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline constexpr int kMaxHermiteOrder = 320;

Quadrature gauss_quadrature(QuadratureKind kind, int n);

/// Off-diagonal Jacobi entries: a_j for j = 1..n, index 0 unused.
std::vector<double> jacobi_offdiagonal(QuadratureKind kind, int n);
double zeroth_moment(QuadratureKind kind);

/// Orthonormal polynomials p_0..p_{count-1} evaluated at x.
std::vector<double> orthonormal_values(QuadratureKind kind, int count, double x);

/// Exact integral of x^k against the weight function.
double moment(QuadratureKind kind, int k);

struct DvrTransform {
  Quadrature quadrature;
  Eigen::MatrixXd t;  // t(k, j) = sqrt(w_k) p_j(x_k)
  std::vector<double> normalizers;

  int n() const { return quadrature.n; }
};

DvrTransform build_transform(const Quadrature& q);

double unitarity_deviation(const DvrTransform& t);

/// T^T diag(v) T.
Eigen::MatrixXd fbr_potential(const DvrTransform& t, std::span<const double> v);

/// Harmonic-oscillator coordinate r = center + x / sqrt(mass omega).
struct HoScaling {
  double mass = 1.0;
  double omega = 1.0;
  double center = 0.0;

  double length() const;
  double to_physical(double x) const { return center + x * length(); }
};

std::vector<double> physical_nodes(const Quadrature& q, const HoScaling& s);

/// <m| p^2 / (2 mass) |n> in the scaled Hermite basis.
Eigen::MatrixXd ho_kinetic(int n, const HoScaling& s);

/// Column recurrence T_{p;q+2} = (A_q + B_q x_p) T_{p;q+1} + C_q T_{pq}.
struct RecursionCoeffs {
  int n = 0;
  int segment = 0;
  std::vector<double> a, b, c;             // index q, valid for q <= n - 3
  std::vector<double> gamma;               // per column
  std::vector<double> a_scaled, b_scaled;  // per column, unused at the two midpoints
};

RecursionCoeffs recursion_coeffs(QuadratureKind kind, int n, int segment);

/// Midpoint columns wF + F/2 - 1 and wF + F/2 of every segment, as an n x (2n/F) matrix.
Eigen::MatrixXd midpoint_columns(const DvrTransform& t, int segment);

Eigen::MatrixXd recursion_columns(const RecursionCoeffs& coeffs, std::span<const double> nodes,
                                  const Eigen::MatrixXd& init);

/// Cost of a table lookup with N entries of d bits.
using QromCoster = std::function<CostReport(std::uint64_t entries, int digits)>;

/// Toffoli count of SELECT-SWAP at its optimal lambda.
QromCoster selectswap_coster();

/// Synthesizes the quantized transform table (N = n^2) as a WH-QROM at the given precision.
QromCoster wh_transform_coster(QuadratureKind kind, double epsilon);

/// 2 sum_i floor(pi sqrt(n_i) / 4) C_Q(n_i^2, d).
CostReport dvr_oracle_cost(std::span<const int> n, int digits, const QromCoster& coster);

std::uint64_t amplification_rounds(int n);

double init_cost_selectswap(double n, double m, double segment);
double init_cost_select(double n, double segment);

std::string to_csv(const Eigen::MatrixXd& m);
std::string to_csv(const Quadrature& q);

}  // namespace whqrom::dvr
