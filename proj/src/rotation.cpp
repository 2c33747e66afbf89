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

#include "whqrom/rotation.hpp"

#include <cmath>
#include <complex>

#include "whqrom/error.hpp"

namespace whqrom::qrom {

namespace {

using cd = std::complex<double>;

void check_scale(const wht::SampledFunction& f) {
  if (f.eta() + 1 + f.digits() > kMaxRotationQubits)
    throw ScaleError("multiplexed rotation: eta + 1 + d exceeds dense verification limit");
}

}  // namespace

Eigen::MatrixXcd multiplexed_rotation_direct(const wht::SampledFunction& f) {
  check_scale(f);
  const Eigen::Index n = static_cast<Eigen::Index>(f.size());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (Eigen::Index x = 0; x < n; ++x) {
    const double t =
        2.0 * M_PI * std::ldexp(static_cast<double>(f[static_cast<std::size_t>(x)]), -f.digits());
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    u(2 * x, 2 * x) = c;
    u(2 * x, 2 * x + 1) = -s;
    u(2 * x + 1, 2 * x) = s;
    u(2 * x + 1, 2 * x + 1) = c;
  }
  return u;
}

Eigen::VectorXcd kickback_phases(const QromCircuit& circuit) {
  const std::uint64_t n = std::uint64_t{1} << circuit.eta();
  Eigen::VectorXcd d(static_cast<Eigen::Index>(n));
  const int b = circuit.payload_bits();
  for (std::uint64_t x = 0; x < n; ++x) {
    const std::uint64_t y = simulate(circuit, x, 0);
    d(static_cast<Eigen::Index>(x)) =
        std::polar(1.0, 2.0 * M_PI * std::ldexp(static_cast<double>(y), -b));
  }
  return d;
}

Eigen::MatrixXcd multiplexed_rotation_phase(const wht::SampledFunction& f) {
  check_scale(f);
  const std::size_t n = f.size();
  std::vector<std::int64_t> big(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    big[2 * x] = f[x];
    big[2 * x + 1] = -f[x];
  }
  const wht::SampledFunction F(f.eta() + 1, f.digits() + 1, std::move(big));
  const wht::WalshSpectrum spec = wht::forward(F);
  const wht::TruncatedSpectrum full = wht::truncate(spec, spec.size());
  const QromCircuit circuit = pair_cancel(synthesize(full), full);
  const Eigen::VectorXcd phases = kickback_phases(circuit);

  const cd i(0.0, 1.0);
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  s(0, 0) = 1;
  s(1, 1) = i;
  const Eigen::Matrix2cd pre = h * s;
  const Eigen::Matrix2cd post = s.adjoint() * h;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(2 * n),
                                              static_cast<Eigen::Index>(2 * n));
  for (std::size_t x = 0; x < n; ++x) {
    const auto e = static_cast<Eigen::Index>(2 * x);
    const Eigen::Matrix2cd d = Eigen::Vector2cd(phases(e), phases(e + 1)).asDiagonal();
    u.block<2, 2>(e, e) = post * d * pre;
  }
  return u;
}

}  // namespace whqrom::qrom
