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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "whqrom/cost_report.hpp"
#include "whqrom/wht.hpp"

namespace whqrom::qrom {

enum class Ordering { GrayCode, MagnitudeDescending };

/// Flip every payload bit when parity(x & mask) is odd: y -> -y-1 mod 2^width.
struct Pfx {
  std::uint64_t mask;
  int width;
};
/// y -> y + k mod 2^width on the payload register.
struct Adder {
  std::int64_t k;
  int width;
};
struct ControlledAdder {
  std::int64_t k;
  int width;
  int control;
};
struct Cnot {
  int control;
  int target;
};
struct CSwap {
  int control;
  std::vector<std::pair<int, int>> pairs;
};
struct XGate {
  int target;
};
struct Hadamard {
  int target;
};
struct SGate {
  int target;
};
struct SDagger {
  int target;
};

using Gate =
    std::variant<Pfx, Adder, ControlledAdder, Cnot, CSwap, XGate, Hadamard, SGate, SDagger>;

/// Qubits: x in [0, eta), payload in [eta, eta + b), ancillas after that.
class QromCircuit {
 public:
  QromCircuit(int eta, int digits, int ancillas = 0);

  int eta() const { return eta_; }
  int digits() const { return digits_; }
  int payload_bits() const { return eta_ + digits_; }
  int ancilla_count() const { return ancillas_; }
  int register_qubits() const { return eta_ + payload_bits() + ancillas_; }
  int payload_qubit(int j) const { return eta_ + j; }
  int ancilla_qubit(int i) const { return eta_ + payload_bits() + i; }
  const std::vector<Gate>& gates() const { return gates_; }

  /// Appends, folding a PFX into a preceding PFX (dropping it if the masks cancel).
  void append(Gate g);
  /// Appends without folding.
  void append_raw(Gate g);

 private:
  int eta_;
  int digits_;
  int ancillas_;
  std::vector<Gate> gates_;
};

/// An adder constant applied under the cumulative PFX mask active at that point.
struct Term {
  std::uint64_t mask;
  std::int64_t k;
  bool operator==(const Term&) const = default;
};

/// Terms of a circuit made only of PFX and Adder gates; throws otherwise.
std::vector<Term> adder_terms(const QromCircuit& circuit);

std::uint64_t gray_rank(std::uint64_t z);

QromCircuit synthesize(const wht::TruncatedSpectrum& spectrum,
                       Ordering ordering = Ordering::GrayCode);

/// The unmerged product of W_z blocks, two PFX gates per nonzero term.
QromCircuit naive_product(const wht::TruncatedSpectrum& spectrum,
                          Ordering ordering = Ordering::GrayCode);

/// Replaces pairs of terms by one adder plus one parity-controlled adder where
/// that strictly lowers T without raising CNOT.
QromCircuit pair_cancel(const QromCircuit& circuit, const wht::TruncatedSpectrum& spectrum);

/// Signed representative of k mod 2^width in (-2^(width-1), 2^(width-1)].
std::int64_t wrap(std::int64_t k, int width);
/// Index of the lowest set bit of k mod 2^width, or width when k is 0 mod 2^width.
int lsb(std::int64_t k, int width);

std::uint64_t adder_t_count(std::int64_t k, int width);
std::uint64_t controlled_adder_t_count(std::int64_t k, int width);

CostReport cost(const QromCircuit& circuit);

/// Classical action on |x>|y>|0...0>; returns the final payload value.
std::uint64_t simulate(const QromCircuit& circuit, std::uint64_t x, std::uint64_t y);

std::string to_text(const QromCircuit& circuit);
QromCircuit from_text(const std::string& text);

struct SplitSupport {
  QromCircuit first;
  QromCircuit second;
};

/// Alternating split of the retained support into two independent circuits.
SplitSupport split_support(const wht::TruncatedSpectrum& spectrum,
                           Ordering ordering = Ordering::GrayCode);
/// Both halves side by side, then one quantum-quantum adder joining the payloads.
CostReport split_support_cost(const SplitSupport& split);

}  // namespace whqrom::qrom
