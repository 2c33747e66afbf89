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

#include "whqrom/cost_report.hpp"

namespace whqrom::molham {

inline constexpr double kElectronMassPerDalton = 1822.888486209;
inline constexpr double kCmPerHartree = 219474.6313632;
inline constexpr double kBohrPerAngstrom = 1.0 / 0.529177210903;

enum class SystemKind { Water, Modes };
enum class Strategy { FullDvr, SeparateDvr, FbrDvr, LcuFbr };
enum class Backend { SelectSwap, Wh };

SystemKind parse_system(const std::string& name);
std::string system_name(SystemKind kind);
Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);
Backend parse_backend(const std::string& name);
std::string backend_name(Backend b);

struct Mode {
  double mass_da = 1.0;
  double omega_cm = 1000.0;
  int n = 8;
};

/// Masses in Da, frequencies and energies in cm^-1, lengths in angstrom.
struct ToyMoleculeSpec {
  SystemKind kind = SystemKind::Water;

  double mass_h = 1.00782503207;
  double mass_o = 15.99491461956;
  double omega = 3800.0;  // radial oscillator basis
  double r0 = 0.9578;
  int n_r = 8;
  int n_theta = 8;
  double theta_max = 1.0;  // in units of pi/2
  double morse_de = 40000.0;
  double morse_a = 2.27;  // 1/angstrom
  double bend_k = 33000.0;  // cm^-1 / rad^2
  double theta0_deg = 104.52;
  double stretch_coupling = 0.0;  // cm^-1 / angstrom^2
  bool decoupled = false;
  // Integration points per radial / angular register (quadrature_r also covers every mode);
  // 0 means the basis size, i.e. the DVR form.
  int quadrature_r = 0;
  int quadrature_theta = 0;

  std::vector<Mode> modes;
  double mode_coupling = 0.0;  // cm^-1, times q_i q_{i+1} in oscillator units

  int j = 0;

  void validate() const;
  /// Per-register basis sizes: (n_r, n_r, n_theta) or the mode sizes.
  std::vector<int> dims() const;
  std::uint64_t dimension() const;
};

ToyMoleculeSpec water_default();
ToyMoleculeSpec single_mode(double mass_da, double omega_cm, int n);

ToyMoleculeSpec parse_config(const std::string& text);
ToyMoleculeSpec load_config(const std::string& path);
nlohmann::json to_json(const ToyMoleculeSpec& spec);

inline constexpr std::uint64_t kMaxDenseDimension = 4096;

/// Hamiltonian in hartree; dvr = T fbr T^T with T the product transform.
struct Hamiltonian {
  std::vector<int> dims;
  Eigen::MatrixXd fbr;
  Eigen::MatrixXd dvr;
  std::vector<double> radial_nodes;   // bohr, water only
  std::vector<double> angular_nodes;  // cos(theta), water only
};

Hamiltonian water_hamiltonian(const ToyMoleculeSpec& spec);
Hamiltonian modes_hamiltonian(const ToyMoleculeSpec& spec);
Hamiltonian build_hamiltonian(const ToyMoleculeSpec& spec);

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& h);

/// d/dR in the scaled oscillator basis (real antisymmetric).
Eigen::MatrixXd ho_derivative(int n, double mass, double omega);
/// <n| P_u |m> = sqrt((2n+1)(2m+1)) for n < m with n + m odd.
Eigen::MatrixXd legendre_momentum(int n);
/// diag(-J..J).
Eigen::MatrixXd angular_momentum_z(int j);

/// Radial one-mode Hamiltonian in the oscillator DVR (hartree).
Eigen::MatrixXd radial_dvr(const ToyMoleculeSpec& spec);
/// Bending Hamiltonian with the metric frozen at r0, in the Legendre DVR (hartree).
Eigen::MatrixXd bend_dvr(const ToyMoleculeSpec& spec);

struct NormTerm {
  std::string name;
  double norm_cm;
  std::uint64_t count;
};

struct NormEstimate {
  Strategy strategy;
  double lambda_pr = 0.0;  // a.u., per radial register
  double lambda_pu = 0.0;
  double lambda_jz = 0.0;
  double lambda_jx = 0.0;
  double r_min = 0.0;         // bohr
  double inv_sin2_max = 0.0;  // over the restricted angular grid
  double v_max_cm = 0.0;
  bool singular_warning = false;
  bool l2_is_bound = false;
  std::vector<NormTerm> terms;
  double total_cm = 0.0;

  double total_hartree() const { return total_cm / kCmPerHartree; }
};

/// sqrt(m omega n / 2): the largest element of the n-dimensional oscillator momentum.
double lambda_radial(double mass, double omega, int n);
double lambda_legendre(int n_theta);

NormEstimate norm_estimates(const ToyMoleculeSpec& spec, Strategy strategy);

struct CostOptions {
  Backend backend = Backend::SelectSwap;
  int digits = 15;
  double epsilon = 0x1p-10;
  std::uint64_t lambda = 0;  // 0: optimal per lookup
};

/// 4 ceil(N / lambda) + 8 b lambda T gates with b lambda + ceil(log2 N) ancillas.
CostReport table_lookup_cost(std::uint64_t entries, int bits, std::uint64_t lambda);
CostReport optimal_table_lookup_cost(std::uint64_t entries, int bits);
int rotation_bits(double epsilon);

struct CostComponent {
  std::string name;
  std::uint64_t count;
  CostReport each;
};

struct StrategyCost {
  Strategy strategy;
  Backend backend;
  CostReport report;
  std::uint64_t ancillas = 0;
  std::uint64_t clifford_estimate = 0;
  double zeta_cm = 0.0;
  std::vector<CostComponent> components;
};

StrategyCost strategy_cost(const ToyMoleculeSpec& spec, Strategy strategy, const CostOptions& opts);

struct SweepPoint {
  std::uint64_t lambda;
  StrategyCost cost;
};

std::vector<SweepPoint> lambda_sweep(const ToyMoleculeSpec& spec, Strategy strategy,
                                     CostOptions opts, std::span<const std::uint64_t> lambdas);

struct QpeCost {
  std::uint64_t calls;
  double zeta_over_epsilon;
  CostReport report;
};

QpeCost qpe_cost(double zeta_cm, const CostReport& c_h, double epsilon_cm);

struct ScalingSample {
  double eta;
  double epsilon;
  double tau;
};

struct ScalingFit {
  double c1, c2, c3, r2;
};

ScalingFit fit_scaling(std::span<const ScalingSample> samples);

struct DiscretizationCheck {
  double measured;
  double bound;         // sqrt(2) pi K sqrt(sum 4^-m)
  double proven_bound;  // 2 pi K sqrt(sum 4^-m)
};

using PhaseFunction = std::function<double(std::span<const double>)>;

/// Signed fraction of an n-bit string read most significant bit first: -x0 + sum x_a 2^-a.
double signed_fraction(std::uint64_t v, int bits);

DiscretizationCheck discretization_bound_check(const PhaseFunction& theta, int dims,
                                               double lipschitz, int m, int m_fine);

int m_epsilon(int dims, double gradient_bound, double epsilon);

nlohmann::json to_json(const NormEstimate& n);
nlohmann::json to_json(const StrategyCost& c);
nlohmann::json to_json(const QpeCost& q);
nlohmann::json to_json(const ScalingFit& f);

}  // namespace whqrom::molham
