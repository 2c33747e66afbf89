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
#include <nlohmann/json.hpp>

#include "whqrom/qrom.hpp"

namespace whqrom::blockenc {

/// Largest dense unitary any construction will build.
inline constexpr int kMaxDenseDim = 8192;

/// Real orthogonal block encoding; full index = ancilla * system_dim + system.
struct BlockEncodingResult {
  Eigen::MatrixXd unitary;
  Eigen::MatrixXd target;
  int system_dim = 0;
  int ancilla_dim = 0;
  double zeta = 0.0;
  double residual = 0.0;
  double unitarity_deviation = 0.0;

  int system_qubits() const;
  int ancilla_qubits() const;
  Eigen::MatrixXd sub_block() const;
};

/// Recomputes residual and unitarity deviation in place.
void verify(BlockEncodingResult& r);

BlockEncodingResult make_result(Eigen::MatrixXd unitary, Eigen::MatrixXd target, int system_dim,
                                double zeta);

/// Column-index function of a sparse matrix: f(j, l) is the l-th listed column of row j.
using ColumnFunction = std::function<int(int j, int l)>;

struct SparseOracle {
  Eigen::MatrixXd a;
  int rho = 0;
  ColumnFunction f;

  int n() const { return static_cast<int>(a.rows()); }
  double max_norm() const;
  /// Throws ConfigError unless each row lists rho distinct columns covering its nonzeros
  /// and those of the matching column.
  void validate() const;
  /// f(j, .) extended to a permutation of 0..n-1.
  std::vector<int> row_permutation(int j) const;
};

/// Pattern taken from the union of row j and column j nonzeros, padded with zero slots.
SparseOracle from_dense(const Eigen::MatrixXd& a, int rho = 0);

/// f(j, l) = l + 2^n1 (j >> n1): copy of the block index, no arithmetic.
ColumnFunction block_diagonal_columns(int n1);

double max_norm(const Eigen::MatrixXd& a);
double spectral_radius(const Eigen::MatrixXd& a);

/// Unitary whose column 0 is the given unit vector.
Eigen::MatrixXd state_preparation(const Eigen::VectorXd& state);

/// Householder completion: the listed columns of the result equal the given columns.
Eigen::MatrixXd complete_isometry(const Eigen::MatrixXd& columns, std::span<const int> positions);

/// Ancilla order (flag1, flag2, reg1), system reg2; zeta = rho |A|_max.
BlockEncodingResult dsparse_standard(const SparseOracle& oracle);
BlockEncodingResult dsparse_fused(const SparseOracle& oracle);
/// One ancilla; zeta = |A|_max.
BlockEncodingResult diagonal_fused(std::span<const double> diagonal);

/// Diagonal D_x = values[x] loaded by a d-digit QROM, then the LCU of Z strings; zeta = 2^d - 1.
BlockEncodingResult diag_no_rotation(std::span<const std::uint64_t> values, int digits,
                                     const qrom::QromCircuit& oracle);
/// Exact full-spectrum WH-QROM loading of values (as d-bit two's complement).
qrom::QromCircuit diagonal_oracle(std::span<const std::uint64_t> values, int digits);

/// Z-string LCU of the ramp operator on d qubits: coefficients and signed diagonal unitaries.
struct RampLcu {
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> diagonals;
};
RampLcu ramp_lcu(int digits);

BlockEncodingResult lcu_sum(std::span<const BlockEncodingResult> parts);
BlockEncodingResult product_be(const BlockEncodingResult& left, const BlockEncodingResult& right);

/// Registers are listed least significant first.
Eigen::MatrixXd swap_registers(std::span<const int> dims, int i, int j);

/// Encodes H_eff + SWAP H_eff SWAP with zeta = 2 zeta_eff.
BlockEncodingResult symmetry_swap_reduction(const BlockEncodingResult& h_eff,
                                            std::span<const int> dims, int i, int j);
/// Same, after checking the supplied full operator against the symmetric sum.
BlockEncodingResult symmetry_swap_reduction(const BlockEncodingResult& h_eff,
                                            std::span<const int> dims, int i, int j,
                                            const Eigen::MatrixXd& full);

/// Column index of the mu-th nonzero of row (a, b, c) of A x I x I + I x B x I + I x I x C.
struct SumTensorIndex {
  int na, nb, nc;

  int rho() const { return na + nb + nc - 2; }
  int flat(int a, int b, int c) const { return a + na * (b + nb * c); }
  int first(int a, int mu) const;  // row (a, 0, 0)
  int operator()(int a, int b, int c, int mu) const;
  ColumnFunction column_function() const;
};

SumTensorIndex of_sum_tensor(int na, int nb, int nc);

/// Neighbour map on 0..2J as written, with both boundary slots reflected.
int of_angular_momentum(int two_j, int j, int mu);
/// Injective variant: a missing neighbour points back at j itself.
int of_angular_momentum_injective(int two_j, int j, int mu);

/// J_x and i J_y in the |J, k> basis, k = -J..J; twice J is passed.
Eigen::MatrixXd angular_momentum_x(int two_j);
Eigen::MatrixXd angular_momentum_iy(int two_j);

nlohmann::json to_json(const BlockEncodingResult& r, const std::string& construction);

/// Coordinate list "row,col,value"; # comments and blank lines skipped.
Eigen::MatrixXd parse_coo(const std::string& text, int n = 0);

}  // namespace whqrom::blockenc
