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
#include <vector>

namespace whqrom::pes {

enum class PesKind { Harmonic, Morse, GaussianWells };

PesKind parse_kind(const std::string& name);
std::string kind_name(PesKind kind);

/// Smooth synthetic potentials on the box [-1, 1]^D.
///
/// Harmonic:       sum_a w_a^2 q_a^2 with w_a = 1 - 0.2 a.
/// Morse:          sum_a (1 - exp(-1.2 (q_a + 0.3)))^2.
/// GaussianWells:  -exp(-|q - c1|^2 / 0.5) - 0.7 exp(-|q - c2|^2 / 0.5),
///                 c1 = (-0.4, ...), c2 = (0.5, ...).
class SyntheticPes {
 public:
  SyntheticPes(PesKind kind, int dims);

  PesKind kind() const { return kind_; }
  int dims() const { return dims_; }
  double value(std::span<const double> q) const;
  /// Upper bound on |grad V| over the box.
  double gradient_bound() const;

 private:
  PesKind kind_;
  int dims_;
};

/// eta bits shared out over dims as evenly as possible, earlier dims first.
std::vector<int> split_bits(int eta, int dims);

/// Grid coordinate -1 + 2 i / 2^m for index i on m bits.
double grid_coordinate(std::uint64_t i, int m);

/// Samples on the product grid; dimension 0 occupies the lowest address bits.
std::vector<double> sample_grid(const SyntheticPes& pes, std::span<const int> bits);

}  // namespace whqrom::pes
