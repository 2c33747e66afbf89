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

#include "whqrom/pes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "whqrom/error.hpp"

namespace whqrom::pes {

namespace {

constexpr double kMorseAlpha = 1.2;
constexpr double kMorseShift = 0.3;
constexpr double kWellWidth2 = 0.25;  // 2 s^2 = 0.5

double well_center(int which) { return which == 0 ? -0.4 : 0.5; }
double well_depth(int which) { return which == 0 ? 1.0 : 0.7; }

}  // namespace

PesKind parse_kind(const std::string& name) {
  if (name == "harmonic") return PesKind::Harmonic;
  if (name == "morse") return PesKind::Morse;
  if (name == "gauss" || name == "gaussian") return PesKind::GaussianWells;
  throw ConfigError("pes", "unknown synthetic potential '" + name + "'");
}

std::string kind_name(PesKind kind) {
  switch (kind) {
    case PesKind::Harmonic:
      return "harmonic";
    case PesKind::Morse:
      return "morse";
    case PesKind::GaussianWells:
      return "gauss";
  }
  return "?";
}

SyntheticPes::SyntheticPes(PesKind kind, int dims) : kind_(kind), dims_(dims) {
  if (dims < 1 || dims > 5) throw ConfigError("dims", "must lie in [1, 5]");
}

double SyntheticPes::value(std::span<const double> q) const {
  if (static_cast<int>(q.size()) != dims_) throw ShapeError("PES: coordinate count mismatch");
  double v = 0.0;
  switch (kind_) {
    case PesKind::Harmonic:
      for (int a = 0; a < dims_; ++a) {
        const double w = 1.0 - 0.2 * a;
        v += w * w * q[static_cast<std::size_t>(a)] * q[static_cast<std::size_t>(a)];
      }
      break;
    case PesKind::Morse:
      for (double x : q) {
        const double e = 1.0 - std::exp(-kMorseAlpha * (x + kMorseShift));
        v += e * e;
      }
      break;
    case PesKind::GaussianWells:
      for (int w = 0; w < 2; ++w) {
        double r2 = 0.0;
        for (double x : q) r2 += (x - well_center(w)) * (x - well_center(w));
        v -= well_depth(w) * std::exp(-r2 / (2.0 * kWellWidth2));
      }
      break;
  }
  return v;
}

double SyntheticPes::gradient_bound() const {
  switch (kind_) {
    case PesKind::Harmonic: {
      double s = 0.0;
      for (int a = 0; a < dims_; ++a) s += std::pow(1.0 - 0.2 * a, 4);
      return 2.0 * std::sqrt(s);
    }
    case PesKind::Morse: {
      // d/dq (1 - e^-y)^2 = 2 alpha (e^-y - e^-2y); |e^-y - e^-2y| peaks at an endpoint
      // of y in [alpha(-1 + 0.3), alpha(1 + 0.3)] or at y = ln 2.
      auto h = [](double y) { return std::abs(std::exp(-y) - std::exp(-2 * y)); };
      const double lo = kMorseAlpha * (-1.0 + kMorseShift);
      const double hi = kMorseAlpha * (1.0 + kMorseShift);
      double m = std::max(h(lo), h(hi));
      if (std::log(2.0) > lo && std::log(2.0) < hi) m = std::max(m, 0.25);
      return std::sqrt(static_cast<double>(dims_)) * 2.0 * kMorseAlpha * m;
    }
    case PesKind::GaussianWells:
      // |grad A exp(-r^2 / 2s^2)| <= A / (s sqrt(e)).
      return (well_depth(0) + well_depth(1)) / (std::sqrt(kWellWidth2) * std::sqrt(std::exp(1.0)));
  }
  return 0.0;
}

std::vector<int> split_bits(int eta, int dims) {
  if (dims < 1 || eta < dims) throw ConfigError("eta", "too few address bits for the dimension");
  std::vector<int> out(static_cast<std::size_t>(dims), eta / dims);
  for (int a = 0; a < eta % dims; ++a) ++out[static_cast<std::size_t>(a)];
  return out;
}

double grid_coordinate(std::uint64_t i, int m) {
  return -1.0 + std::ldexp(2.0 * static_cast<double>(i), -m);
}

std::vector<double> sample_grid(const SyntheticPes& pes, std::span<const int> bits) {
  if (static_cast<int>(bits.size()) != pes.dims()) throw ShapeError("PES: bit split mismatch");
  int total = 0;
  for (int b : bits) total += b;
  if (total > 30) throw ScaleError("PES grid too large");
  const std::uint64_t n = std::uint64_t{1} << total;
  std::vector<double> out(n);
  std::vector<double> q(bits.size());
  for (std::uint64_t x = 0; x < n; ++x) {
    std::uint64_t rest = x;
    for (std::size_t a = 0; a < bits.size(); ++a) {
      const std::uint64_t i = rest & ((std::uint64_t{1} << bits[a]) - 1);
      rest >>= bits[a];
      q[a] = grid_coordinate(i, bits[a]);
    }
    out[x] = pes.value(q);
  }
  return out;
}

}  // namespace whqrom::pes
