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

#include "whqrom/wht.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "whqrom/error.hpp"

namespace whqrom::wht {

int popcount(std::uint64_t v) { return std::popcount(v); }
int parity(std::uint64_t v) { return std::popcount(v) & 1; }
bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }
int log2_exact(std::uint64_t v) { return std::countr_zero(v); }

namespace {

int eta_of_length(std::size_t n) {
  if (!is_power_of_two(n))
    throw ShapeError("sample count " + std::to_string(n) + " is not a power of two");
  return log2_exact(n);
}

void check_bits(int eta, int digits) {
  if (digits < 1) throw RangeError("digit count must be at least 1");
  if (eta + digits > kMaxBits)
    throw RangeError("eta + d = " + std::to_string(eta + digits) + " exceeds " +
                     std::to_string(kMaxBits));
}

}  // namespace

SampledFunction::SampledFunction(int eta, int digits, std::vector<std::int64_t> values)
    : eta_(eta), digits_(digits), values_(std::move(values)) {
  check_bits(eta, digits);
  if (values_.size() != (std::size_t{1} << eta))
    throw ShapeError("expected 2^eta samples");
  const std::int64_t lo = -(std::int64_t{1} << (digits - 1));
  const std::int64_t hi = (std::int64_t{1} << (digits - 1)) - 1;
  for (auto v : values_)
    if (v < lo || v > hi) throw RangeError("sample outside d-bit two's complement range");
}

WalshSpectrum::WalshSpectrum(int eta, int digits, std::vector<std::int64_t> coeffs)
    : eta_(eta), digits_(digits), coeffs_(std::move(coeffs)) {
  check_bits(eta, digits);
  if (coeffs_.size() != (std::size_t{1} << eta)) throw ShapeError("expected 2^eta coefficients");
}

DyadicFunction::DyadicFunction(int eta, std::vector<std::int64_t> numerators)
    : eta_(eta), num_(std::move(numerators)) {
  if (num_.size() != (std::size_t{1} << eta)) throw ShapeError("expected 2^eta numerators");
}

DyadicFunction DyadicFunction::from_samples(const SampledFunction& f) {
  std::vector<std::int64_t> num(f.values().begin(), f.values().end());
  for (auto& v : num) v *= std::int64_t{1} << f.eta();
  return DyadicFunction(f.eta(), std::move(num));
}

double DyadicFunction::value(std::size_t x) const {
  return std::ldexp(static_cast<double>(num_[x]), -eta_);
}

TruncatedSpectrum::TruncatedSpectrum(const WalshSpectrum& base,
                                     std::vector<std::uint64_t> support)
    : eta_(base.eta()), digits_(base.digits()), support_(std::move(support)) {
  coeffs_.reserve(support_.size());
  std::vector<bool> seen(base.size(), false);
  for (auto z : support_) {
    if (z >= base.size()) throw RangeError("support mask out of range");
    if (seen[z]) throw RangeError("duplicate support mask");
    seen[z] = true;
    coeffs_.push_back(base[z]);
  }
}

DyadicFunction TruncatedSpectrum::reconstruct() const {
  std::vector<std::int64_t> full(std::size_t{1} << eta_, 0);
  for (std::size_t i = 0; i < support_.size(); ++i) full[support_[i]] = coeffs_[i];
  fwht_inplace(full);
  return DyadicFunction(eta_, std::move(full));
}

SampledFunction quantize(std::span<const double> theta, int digits) {
  const int eta = eta_of_length(theta.size());
  check_bits(eta, digits);
  std::vector<std::int64_t> f(theta.size());
  for (std::size_t x = 0; x < theta.size(); ++x) {
    const double t = theta[x];
    if (!(t >= -1.0 && t < 1.0))
      throw RangeError("theta[" + std::to_string(x) + "] = " + std::to_string(t) +
                       " outside [-1, 1)");
    f[x] = static_cast<std::int64_t>(std::floor(std::ldexp(t, digits - 1)));
  }
  return SampledFunction(eta, digits, std::move(f));
}

void fwht_inplace(std::span<std::int64_t> data) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw ShapeError("transform length is not a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t a = data[j];
        const std::int64_t b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

WalshSpectrum forward(const SampledFunction& f) {
  std::vector<std::int64_t> c(f.values().begin(), f.values().end());
  fwht_inplace(c);
  return WalshSpectrum(f.eta(), f.digits(), std::move(c));
}

DyadicFunction inverse(const WalshSpectrum& spectrum) {
  std::vector<std::int64_t> num(spectrum.coeffs().begin(), spectrum.coeffs().end());
  fwht_inplace(num);
  return DyadicFunction(spectrum.eta(), std::move(num));
}

namespace {

// |sin(2 pi diff / 2^(eta+d))| reduced exactly over its period.
double abs_sin_term(std::int64_t diff, int total_bits) {
  if (total_bits <= 1) return 0.0;
  const std::int64_t period = std::int64_t{1} << (total_bits - 1);
  std::int64_t r = diff % period;
  if (r < 0) r += period;
  const std::int64_t u = std::min(r, period - r);
  if (u == 0) return 0.0;
  return std::sin(M_PI * std::ldexp(static_cast<double>(u), -(total_bits - 1)));
}

double error_of(std::span<const std::int64_t> f, std::span<const std::int64_t> g, int total_bits,
                double stop_at) {
  double worst = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    worst = std::max(worst, 2.0 * abs_sin_term(f[x] - g[x], total_bits));
    if (worst >= stop_at) break;
  }
  return worst;
}

}  // namespace

double diag_error(const DyadicFunction& f, const DyadicFunction& g, int digits) {
  if (f.eta() != g.eta()) throw ShapeError("diag_error: eta mismatch");
  check_bits(f.eta(), digits);
  return error_of(f.numerators(), g.numerators(), f.eta() + digits, 2.0);
}

double diag_error(const SampledFunction& f, const DyadicFunction& g) {
  return diag_error(DyadicFunction::from_samples(f), g, f.digits());
}

std::vector<std::uint64_t> retention_order(const WalshSpectrum& spectrum) {
  std::vector<std::uint64_t> order(spectrum.size());
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  auto mag = [&](std::uint64_t z) {
    const std::int64_t c = spectrum[z];
    return c < 0 ? -static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return mag(a) > mag(b); });
  return order;
}

TruncatedSpectrum truncate(const WalshSpectrum& spectrum, std::size_t k) {
  auto order = retention_order(spectrum);
  if (k > order.size()) throw RangeError("k exceeds spectrum size");
  order.resize(k);
  return TruncatedSpectrum(spectrum, std::move(order));
}

namespace {

void accumulate_component(std::vector<std::int64_t>& g, std::uint64_t z, std::int64_t c) {
  for (std::size_t x = 0; x < g.size(); ++x) g[x] += parity(x & z) ? -c : c;
}

}  // namespace

TruncatedSpectrum minimal_truncation(const SampledFunction& f, double epsilon) {
  if (!(epsilon > 0.0)) throw RangeError("epsilon must be positive");
  const WalshSpectrum spec = forward(f);
  const auto order = retention_order(spec);
  const DyadicFunction target = DyadicFunction::from_samples(f);
  const int total = f.eta() + f.digits();
  std::vector<std::int64_t> g(f.size(), 0);
  for (std::size_t k = 0;; ++k) {
    if (error_of(target.numerators(), g, total, epsilon) < epsilon) {
      std::vector<std::uint64_t> support(order.begin(), order.begin() + k);
      return TruncatedSpectrum(spec, std::move(support));
    }
    if (k == order.size()) break;
    accumulate_component(g, order[k], spec[order[k]]);
  }
  // The full spectrum reproduces f exactly, so this is unreachable for epsilon > 0.
  throw NumericalError("minimal_truncation: no k satisfies epsilon");
}

std::vector<double> truncation_error_profile(const SampledFunction& f) {
  const WalshSpectrum spec = forward(f);
  const auto order = retention_order(spec);
  const DyadicFunction target = DyadicFunction::from_samples(f);
  const int total = f.eta() + f.digits();
  std::vector<std::int64_t> g(f.size(), 0);
  std::vector<double> out;
  out.reserve(order.size() + 1);
  out.push_back(error_of(target.numerators(), g, total, 2.0));
  for (auto z : order) {
    accumulate_component(g, z, spec[z]);
    out.push_back(error_of(target.numerators(), g, total, 2.0));
  }
  return out;
}

}  // namespace whqrom::wht
