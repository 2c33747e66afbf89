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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace whqrom::wht {

/// Largest eta + d for which coefficients fit in 64-bit arithmetic.
inline constexpr int kMaxBits = 62;

/// Integer samples f(x) on d-bit two's complement, 2^eta entries.
class SampledFunction {
 public:
  SampledFunction(int eta, int digits, std::vector<std::int64_t> values);

  int eta() const { return eta_; }
  int digits() const { return digits_; }
  std::size_t size() const { return values_.size(); }
  std::int64_t operator[](std::size_t x) const { return values_[x]; }
  std::span<const std::int64_t> values() const { return values_; }

 private:
  int eta_;
  int digits_;
  std::vector<std::int64_t> values_;
};

/// Walsh-Hadamard coefficients WH(f)(z), stored on b = eta + d bits.
class WalshSpectrum {
 public:
  WalshSpectrum(int eta, int digits, std::vector<std::int64_t> coeffs);

  int eta() const { return eta_; }
  int digits() const { return digits_; }
  int payload_bits() const { return eta_ + digits_; }
  std::size_t size() const { return coeffs_.size(); }
  std::int64_t operator[](std::uint64_t z) const { return coeffs_[z]; }
  std::span<const std::int64_t> coeffs() const { return coeffs_; }

 private:
  int eta_;
  int digits_;
  std::vector<std::int64_t> coeffs_;
};

/// Values numerator[x] / 2^eta; what the inverse transform produces.
class DyadicFunction {
 public:
  DyadicFunction(int eta, std::vector<std::int64_t> numerators);

  static DyadicFunction from_samples(const SampledFunction& f);

  int eta() const { return eta_; }
  std::size_t size() const { return num_.size(); }
  std::int64_t numerator(std::size_t x) const { return num_[x]; }
  std::span<const std::int64_t> numerators() const { return num_; }
  double value(std::size_t x) const;

 private:
  int eta_;
  std::vector<std::int64_t> num_;
};

/// A retained subset of a spectrum. Support is kept in retention order.
class TruncatedSpectrum {
 public:
  TruncatedSpectrum(const WalshSpectrum& base, std::vector<std::uint64_t> support);

  int eta() const { return eta_; }
  int digits() const { return digits_; }
  int payload_bits() const { return eta_ + digits_; }
  std::size_t k() const { return support_.size(); }
  std::span<const std::uint64_t> support() const { return support_; }
  std::span<const std::int64_t> coefficients() const { return coeffs_; }
  std::int64_t coefficient_at(std::size_t i) const { return coeffs_[i]; }

  /// g = inverse transform of the retained coefficients.
  DyadicFunction reconstruct() const;

 private:
  int eta_;
  int digits_;
  std::vector<std::uint64_t> support_;
  std::vector<std::int64_t> coeffs_;
};

/// f(x) = floor(2^(d-1) * theta(x)); theta must lie in [-1, 1).
SampledFunction quantize(std::span<const double> theta, int digits);

/// In-place integer butterfly; length must be a power of two.
void fwht_inplace(std::span<std::int64_t> data);

WalshSpectrum forward(const SampledFunction& f);

/// Exact inverse of a full spectrum.
DyadicFunction inverse(const WalshSpectrum& spectrum);

/// 2 max_x |sin(2 pi (f(x) - g(x)) / 2^d)|.
double diag_error(const DyadicFunction& f, const DyadicFunction& g, int digits);
double diag_error(const SampledFunction& f, const DyadicFunction& g);

/// Order in which coefficients are retained: |c| descending, ties to smaller z.
std::vector<std::uint64_t> retention_order(const WalshSpectrum& spectrum);

/// Keeps the first k entries of retention_order.
TruncatedSpectrum truncate(const WalshSpectrum& spectrum, std::size_t k);

/// Smallest k (linear scan) whose truncation has diag_error < epsilon.
TruncatedSpectrum minimal_truncation(const SampledFunction& f, double epsilon);

/// Error of every prefix k = 0..2^eta of the retention order.
std::vector<double> truncation_error_profile(const SampledFunction& f);

int popcount(std::uint64_t v);
int parity(std::uint64_t v);
bool is_power_of_two(std::uint64_t v);
int log2_exact(std::uint64_t v);

}  // namespace whqrom::wht
