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

#include <vector>

#include <Eigen/Dense>

#include "whqrom/dvr.hpp"
#include "whqrom/molham.hpp"

namespace whqrom::molham::detail {

struct RadialGrid {
  double mass = 0.0;
  double omega = 0.0;
  dvr::HoScaling scaling;
  dvr::DvrTransform transform;
  std::vector<double> nodes;
  Eigen::MatrixXd kinetic;     // DVR, p^2 / 2 mass
  Eigen::MatrixXd derivative;  // DVR, d/dR
  std::vector<double> potential;
};

struct AngularGrid {
  dvr::DvrTransform transform;
  std::vector<double> nodes;
  Eigen::MatrixXd slope;    // grid x DVR; P_theta^dag g P_theta = slope^T diag(g) slope
  Eigen::MatrixXd antisym;  // DVR; P_theta^dag sin + sin P_theta = i antisym
  std::vector<double> potential;
};

double reduced_mass(const ToyMoleculeSpec& s);
RadialGrid radial_grid(const ToyMoleculeSpec& s);
AngularGrid angular_grid(const ToyMoleculeSpec& s);

/// (M_0 x M_1 x ... ) X for row-major mode ordering.
Eigen::MatrixXd mode_product(const Eigen::MatrixXd& x, const std::vector<int>& dims,
                             const std::vector<Eigen::MatrixXd>& mats);

}  // namespace whqrom::molham::detail
