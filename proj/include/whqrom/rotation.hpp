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

#include <Eigen/Dense>

#include "whqrom/qrom.hpp"
#include "whqrom/wht.hpp"

namespace whqrom::qrom {

/// Dense verification is limited to eta + 1 + d qubits.
inline constexpr int kMaxRotationQubits = 14;

/// Basis index 2x + a, with a the flag qubit.
/// Block x is R_Y(2 pi f(x) / 2^d), R_Y(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
Eigen::MatrixXcd multiplexed_rotation_direct(const wht::SampledFunction& f);

/// (S^dag H (x) 1) D_F (H S (x) 1), with D_F realised by phase kickback through a
/// synthesized WH-QROM for F(a, x) = (-1)^a f(x) on d + 1 bits.
Eigen::MatrixXcd multiplexed_rotation_phase(const wht::SampledFunction& f);

/// exp(2 pi i U(x, 0) / 2^b) for every address x: the diagonal a QROM imprints on
/// a payload prepared in the Fourier state of -1.
Eigen::VectorXcd kickback_phases(const QromCircuit& circuit);

}  // namespace whqrom::qrom
