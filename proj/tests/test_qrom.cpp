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

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "test_util.hpp"
#include "whqrom/error.hpp"
#include "whqrom/qrom.hpp"
#include "whqrom/rotation.hpp"

namespace whqrom::qrom {
namespace {

using wht::SampledFunction;
using wht::TruncatedSpectrum;

std::uint64_t mask_of(int b) { return (std::uint64_t{1} << b) - 1; }

// Expected payload: y + 2^eta g(x) mod 2^b, from the spectral reconstruction.
void expect_implements(const QromCircuit& c, const TruncatedSpectrum& t, std::uint64_t y_seed) {
  const auto g = t.reconstruct();
  const int b = t.payload_bits();
  std::mt19937_64 rng(y_seed);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << t.eta()); ++x) {
    for (std::uint64_t y : {std::uint64_t{0}, rng() & mask_of(b)}) {
      const std::uint64_t want = (y + static_cast<std::uint64_t>(g.numerator(x))) & mask_of(b);
      ASSERT_EQ(simulate(c, x, y), want) << "x=" << x << " y=" << y;
    }
  }
}

TruncatedSpectrum smooth_spectrum(int eta, int d, double eps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> a(-0.45, 0.45);
  const double c1 = a(rng), c2 = a(rng);
  const std::size_t n = std::size_t{1} << eta;
  std::vector<double> t(n);
  for (std::size_t x = 0; x < n; ++x) {
    const double q = 2.0 * static_cast<double>(x) / static_cast<double>(n) - 1.0;
    t[x] = c1 * q * q + c2 * q * q * q;
  }
  return wht::minimal_truncation(wht::quantize(t, d), eps);
}

TEST(Synthesize, ZeroMaskOnlyGivesSingleAdder) {
  wht::WalshSpectrum s(3, 4, {40, 0, 0, 0, 0, 0, 0, 0});
  auto c = synthesize(wht::truncate(s, 1));
  ASSERT_EQ(c.gates().size(), 1u);
  const auto* a = std::get_if<Adder>(&c.gates()[0]);
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->k, 40);
  EXPECT_EQ(a->width, 7);
}

TEST(Synthesize, SingleMaskIsConjugatedAdder) {
  wht::WalshSpectrum s(3, 4, {0, 0, 0, 0, 0, 24, 0, 0});
  auto c = synthesize(wht::truncate(s, 1));
  ASSERT_EQ(c.gates().size(), 3u);
  EXPECT_EQ(std::get<Pfx>(c.gates()[0]).mask, 5u);
  EXPECT_EQ(std::get<Adder>(c.gates()[1]).k, 24);
  EXPECT_EQ(std::get<Pfx>(c.gates()[2]).mask, 5u);
}

TEST(Synthesize, EmptySupportIsIdentity) {
  wht::WalshSpectrum s(2, 3, {1, 2, 3, 4});
  auto c = synthesize(wht::truncate(s, 0));
  EXPECT_TRUE(c.gates().empty());
  for (std::uint64_t x = 0; x < 4; ++x) EXPECT_EQ(simulate(c, x, 9), 9u);
}

TEST(Synthesize, GrayCodeMergesConsecutiveMasks) {
  std::vector<std::int64_t> coeffs(8, 0);
  coeffs[0b001] = 8;
  coeffs[0b011] = -16;
  coeffs[0b010] = 24;
  wht::WalshSpectrum s(3, 5, coeffs);
  auto t = wht::truncate(s, 3);
  auto gray = synthesize(t, Ordering::GrayCode);
  std::vector<std::uint64_t> masks;
  for (const auto& g : gray.gates())
    if (auto* p = std::get_if<Pfx>(&g)) masks.push_back(p->mask);
  EXPECT_EQ(masks, (std::vector<std::uint64_t>{0b001, 0b010, 0b001, 0b010}));
  auto mag = synthesize(t, Ordering::MagnitudeDescending);
  for (std::uint64_t x = 0; x < 8; ++x)
    for (std::uint64_t y = 0; y < 256; y += 37) EXPECT_EQ(simulate(gray, x, y), simulate(mag, x, y));
  expect_implements(gray, t, 1);
}

TEST(Synthesize, NoAdjacentPfxAfterMerging) {
  auto t = smooth_spectrum(8, 10, std::ldexp(1.0, -10), 3);
  for (auto ord : {Ordering::GrayCode, Ordering::MagnitudeDescending}) {
    auto c = synthesize(t, ord);
    for (std::size_t i = 1; i < c.gates().size(); ++i)
      EXPECT_FALSE(std::holds_alternative<Pfx>(c.gates()[i - 1]) &&
                   std::holds_alternative<Pfx>(c.gates()[i]));
  }
}

TEST(Simulate, ConstantFunction) {
  SampledFunction f(3, 6, std::vector<std::int64_t>(8, -7));
  auto t = wht::minimal_truncation(f, 1e-3);
  auto c = synthesize(t);
  const int b = 9;
  for (std::uint64_t x = 0; x < 8; ++x)
    EXPECT_EQ(simulate(c, x, 5), (5 + static_cast<std::uint64_t>(-7 * 8)) & mask_of(b));
}

TEST(Simulate, RandomFunctionMatchesReconstruction) {
  std::mt19937_64 rng(21);
  auto f = testing::random_function(rng, 8, 8);
  auto t = wht::minimal_truncation(f, std::ldexp(1.0, -3));
  auto c = synthesize(t);
  auto g = t.reconstruct();
  for (std::uint64_t x = 0; x < 256; ++x)
    EXPECT_EQ(simulate(c, x, 0), static_cast<std::uint64_t>(g.numerator(x)) & mask_of(16));
}

TEST(Simulate, RangeChecks) {
  QromCircuit c(2, 3);
  EXPECT_THROW(simulate(c, 4, 0), RangeError);
  EXPECT_THROW(simulate(c, 0, 32), RangeError);
}

TEST(Simulate, PfxComposition) {
  QromCircuit two(4, 3), one(4, 3);
  two.append_raw(Pfx{0b0110, 7});
  two.append_raw(Pfx{0b1100, 7});
  one.append_raw(Pfx{0b1010, 7});
  for (std::uint64_t x = 0; x < 16; ++x)
    for (std::uint64_t y = 0; y < 128; y += 5) EXPECT_EQ(simulate(two, x, y), simulate(one, x, y));
  QromCircuit merged(4, 3);
  merged.append(Pfx{0b0110, 7});
  merged.append(Pfx{0b1100, 7});
  ASSERT_EQ(merged.gates().size(), 1u);
  EXPECT_EQ(std::get<Pfx>(merged.gates()[0]).mask, 0b1010u);
  merged.append(Pfx{0b1010, 7});
  EXPECT_TRUE(merged.gates().empty());
}

TEST(Simulate, BlocksCommute) {
  auto t = smooth_spectrum(6, 8, std::ldexp(1.0, -10), 5);
  ASSERT_GE(t.k(), 3u);
  std::vector<std::size_t> perm(t.k());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(6);
  std::shuffle(perm.begin(), perm.end(), rng);
  QromCircuit shuffled(t.eta(), t.digits());
  const int b = t.payload_bits();
  for (auto i : perm) {
    shuffled.append(Pfx{t.support()[i], b});
    shuffled.append(Adder{wrap(t.coefficient_at(i), b), b});
    shuffled.append(Pfx{t.support()[i], b});
  }
  expect_implements(shuffled, t, 7);
}

TEST(Cost, AdderInstances) {
  EXPECT_EQ(adder_t_count(4, 8), 16u);
  EXPECT_EQ(adder_t_count(7, 8), 24u);
  EXPECT_EQ(adder_t_count(-3, 8), 24u);
  EXPECT_EQ(adder_t_count(0, 8), 0u);
  EXPECT_EQ(adder_t_count(256, 8), 0u);
  EXPECT_EQ(adder_t_count(64, 8), 0u);
  EXPECT_EQ(controlled_adder_t_count(4, 8), 20u);
  QromCircuit c(2, 6);
  c.append(Adder{4, 8});
  auto r = cost(c);
  EXPECT_EQ(r.tCount, 16u);
  EXPECT_EQ(r.toffoliCount, 4u);
  EXPECT_EQ(r.qubitCount, 2u + 8u + 4u);
}

TEST(Cost, PfxCnotCount) {
  QromCircuit c(5, 4);
  c.append(Pfx{0b10110, 9});
  auto r = cost(c);
  EXPECT_EQ(r.cnotCount, 2u * (3 - 1) + 9u);
  EXPECT_EQ(r.tCount, 0u);
}

TEST(Cost, IndependentTally) {
  std::mt19937_64 rng(22);
  auto f = testing::random_function(rng, 6, 6);
  auto t = wht::minimal_truncation(f, std::ldexp(1.0, -6));
  for (const auto& c : {synthesize(t), pair_cancel(synthesize(t), t)}) {
    std::uint64_t tc = 0, cnot = 0, maxanc = 0;
    for (const auto& g : c.gates()) {
      if (auto* a = std::get_if<Adder>(&g)) {
        const std::uint64_t u = static_cast<std::uint64_t>(a->k) & mask_of(a->width);
        if (u) {
          const int l = std::countr_zero(u);
          tc += 4 * static_cast<std::uint64_t>(std::max(0, a->width - 2 - l));
          maxanc = std::max<std::uint64_t>(maxanc, static_cast<std::uint64_t>(std::max(0, a->width - 2 - l)));
        }
      } else if (auto* ca = std::get_if<ControlledAdder>(&g)) {
        const std::uint64_t u = static_cast<std::uint64_t>(ca->k) & mask_of(ca->width);
        const int l = std::countr_zero(u);
        tc += 4 * static_cast<std::uint64_t>(std::max(0, ca->width - 1 - l));
        maxanc = std::max<std::uint64_t>(maxanc, static_cast<std::uint64_t>(std::max(0, ca->width - 1 - l)));
      } else if (auto* p = std::get_if<Pfx>(&g)) {
        cnot += 2 * static_cast<std::uint64_t>(std::popcount(p->mask) - 1) + static_cast<std::uint64_t>(p->width);
      } else if (std::holds_alternative<Cnot>(g)) {
        ++cnot;
      }
    }
    auto r = cost(c);
    EXPECT_EQ(r.tCount, tc);
    EXPECT_EQ(r.cnotCount, cnot);
    EXPECT_EQ(r.qubitCount, static_cast<std::uint64_t>(c.register_qubits()) + maxanc);
    EXPECT_EQ(r.quantumVolume, r.tCount * r.qubitCount);
    EXPECT_LE(r.qubitCount, 3u * 6 + 2u * 6);
  }
}

wht::TruncatedSpectrum spectrum_from(int eta, int d, const std::vector<std::pair<std::uint64_t, std::int64_t>>& cs) {
  std::vector<std::int64_t> v(std::size_t{1} << eta, 0);
  for (auto [z, c] : cs) v[z] = c;
  wht::WalshSpectrum s(eta, d, v);
  std::size_t nz = 0;
  for (auto [z, c] : cs) nz += c != 0;
  return wht::truncate(s, nz);
}

TEST(PairCancel, EqualPairSavesOneAdder) {
  const int eta = 4, d = 12, b = 16;
  for (std::int64_t sign : {1, -1}) {
    auto t = spectrum_from(eta, d, {{0b0011, 1000}, {0b0101, sign * 1000}, {0b1000, 77}});
    auto base = synthesize(t);
    auto opt = pair_cancel(base, t);
    expect_implements(opt, t, 8);
    const auto r0 = cost(base), r1 = cost(opt);
    EXPECT_EQ(r0.tCount - r1.tCount, adder_t_count(1000, b));
    EXPECT_LE(r1.cnotCount, r0.cnotCount);
    EXPECT_EQ(opt.ancilla_count(), 1);
  }
}

TEST(PairCancel, SameLsbPairSaving) {
  const int eta = 4, d = 12, b = 16;
  const std::int64_t k = 3 * 4, l = 5 * 4;  // both lsb 2
  auto t = spectrum_from(eta, d, {{0b0110, k}, {0b1001, l}});
  auto base = synthesize(t);
  auto opt = pair_cancel(base, t);
  expect_implements(opt, t, 9);
  const int lk = std::countr_zero(static_cast<std::uint64_t>(k));
  const int lp = std::countr_zero(static_cast<std::uint64_t>(k + l));
  const int lm = std::countr_zero(static_cast<std::uint64_t>(l - k));
  const std::uint64_t predicted = 4 * static_cast<std::uint64_t>(std::max(lp, lm) - lk);
  EXPECT_GE(predicted, 4u);
  EXPECT_EQ(cost(base).tCount - cost(opt).tCount, predicted);
  (void)b;
}

TEST(PairCancel, NothingToPair) {
  auto t = spectrum_from(3, 8, {{1, 1}, {2, 2}, {4, 4}});
  auto base = synthesize(t);
  auto opt = pair_cancel(base, t);
  EXPECT_EQ(to_text(opt), to_text(base));
}

TEST(PairCancel, PreservesBehaviourAndNeverCostsMore) {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const int eta = 4 + static_cast<int>(seed % 5);
    auto t = smooth_spectrum(eta, 9, std::ldexp(1.0, -8), seed);
    auto gray = synthesize(t);
    auto naive = naive_product(t);
    auto opt = pair_cancel(gray, t);
    expect_implements(opt, t, seed);
    expect_implements(naive, t, seed);
    const auto rn = cost(naive), rg = cost(gray), ro = cost(opt);
    EXPECT_EQ(rg.tCount, rn.tCount);
    EXPECT_LE(rg.cnotCount, rn.cnotCount);
    EXPECT_LE(ro.tCount, rg.tCount);
    EXPECT_LE(ro.cnotCount, rg.cnotCount);
  }
}

TEST(PairCancel, RejectsMismatchedSpectrum) {
  auto t = spectrum_from(3, 6, {{1, 8}, {2, 8}});
  auto other = spectrum_from(3, 6, {{1, 8}, {2, 16}});
  EXPECT_THROW(pair_cancel(synthesize(t), other), Error);
}

TEST(Text, RoundTrip) {
  auto t = spectrum_from(4, 10, {{3, 400}, {5, -400}, {8, 12}, {0, 9}});
  auto c = pair_cancel(synthesize(t), t);
  c.append_raw(CSwap{0, {{1, 2}, {3, 4}}});
  c.append_raw(Hadamard{1});
  c.append_raw(SGate{2});
  c.append_raw(SDagger{2});
  const std::string text = to_text(c);
  EXPECT_EQ(to_text(from_text(text)), text);
  EXPECT_NE(text.find("CADD "), std::string::npos);
}

TEST(Text, ParseErrors) {
  EXPECT_THROW(from_text("ADD 1 4\n"), ParseError);
  try {
    from_text("QROM 2 3 0\nADD 1 5\nFOO 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SplitSupport, HalvesSumToWhole) {
  auto t = smooth_spectrum(6, 9, std::ldexp(1.0, -9), 44);
  auto split = split_support(t);
  const int b = t.payload_bits();
  auto g = t.reconstruct();
  for (std::uint64_t x = 0; x < 64; ++x) {
    const std::uint64_t y1 = simulate(split.first, x, 0);
    const std::uint64_t y2 = simulate(split.second, x, 0);
    EXPECT_EQ((y1 + y2) & mask_of(b), static_cast<std::uint64_t>(g.numerator(x)) & mask_of(b));
  }
  const auto r = split_support_cost(split);
  const auto r1 = cost(split.first), r2 = cost(split.second);
  EXPECT_EQ(r.tCount, r1.tCount + r2.tCount + 4u * static_cast<std::uint64_t>(b - 1));
  EXPECT_EQ(r.tDepth, std::max(r1.tDepth, r2.tDepth) + static_cast<std::uint64_t>(b - 1));
  EXPECT_LE(r.tDepth, cost(synthesize(t)).tDepth + static_cast<std::uint64_t>(b));
}

TEST(Rotation, ZeroFunctionIsIdentity) {
  SampledFunction f(3, 4, std::vector<std::int64_t>(8, 0));
  auto u = multiplexed_rotation_direct(f);
  EXPECT_LT((u - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((multiplexed_rotation_phase(f) - u).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Rotation, QuarterTurn) {
  const int d = 5;
  SampledFunction f(2, d, std::vector<std::int64_t>(4, 1 << (d - 2)));
  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  for (const auto& u : {multiplexed_rotation_direct(f), multiplexed_rotation_phase(f)}) {
    for (int x = 0; x < 4; ++x) {
      EXPECT_NEAR(std::abs(u(2 * x, 2 * x) - c), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(u(2 * x, 2 * x + 1) + s), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(u(2 * x + 1, 2 * x) - s), 0.0, 1e-12);
    }
  }
}

TEST(Rotation, RoutesAgreeOnRandomFunctions) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    auto f = testing::random_function(rng, 4, 5);
    auto a = multiplexed_rotation_direct(f);
    auto b = multiplexed_rotation_phase(f);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
    for (int x = 0; x < 16; ++x) {
      const double t = 2 * M_PI * static_cast<double>(f[static_cast<std::size_t>(x)]) / 32.0;
      EXPECT_NEAR(a(2 * x, 2 * x).real(), std::cos(t / 2), 1e-14);
      EXPECT_NEAR(a(2 * x + 1, 2 * x).real(), std::sin(t / 2), 1e-14);
    }
    EXPECT_LT((a.adjoint() * a - Eigen::MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Rotation, ScaleLimit) {
  SampledFunction f(4, 10, std::vector<std::int64_t>(16, 0));
  EXPECT_THROW(multiplexed_rotation_direct(f), ScaleError);
}

}  // namespace
}  // namespace whqrom::qrom
