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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "whqrom/baseline.hpp"
#include "whqrom/molham.hpp"
#include "whqrom/pes.hpp"
#include "whqrom/qrom.hpp"
#include "whqrom/sample_io.hpp"
#include "whqrom/wht.hpp"

namespace whqrom::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "whqrom_cli";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string data(const std::string& name) { return std::string(WHQROM_SOURCE_DIR) + "/tools/data/" + name; }

std::string slurp(const fs::path& p) { return io::read_text(p); }

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(call({"--help"}).code, 0);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"wht-analyze", "--no-such-flag"}).code, 2);
  EXPECT_EQ(call({"wht-analyze", "--digits", "34"}).code, 2);
  EXPECT_EQ(call({"wht-analyze", "--format", "xml"}).code, 2);
  EXPECT_EQ(call({"wht-analyze", "--epsilon", "0"}).code, 2);
}

TEST(Cli, ZeroInputNeedsNoTerms) {
  const auto p = scratch("zeros.csv");
  write(p, "0\n0\n0\n0\n0\n0\n0\n0\n");
  const auto r = call({"wht-analyze", "--input", p.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["k"], 0);
  EXPECT_EQ(r.j()["error"], 0.0);
}

TEST(Cli, CsvAndBinaryInputsAgree) {
  std::vector<double> v;
  for (int i = 0; i < 64; ++i) v.push_back(std::sin(0.3 * i) + 0.01 * i);
  const auto bin = scratch("table.f64"), txt = scratch("table.csv");
  io::write_f64_binary(bin, v);
  std::ostringstream csv;
  csv << std::setprecision(17);
  for (double x : v) csv << x << '\n';
  write(txt, csv.str());
  for (const std::string cmd : {"wht-analyze", "qrom-synth", "compare"}) {
    auto a = call({cmd, "--input", bin.string()}).j();
    auto b = call({cmd, "--input", txt.string()}).j();
    a.erase("source");
    b.erase("source");
    EXPECT_EQ(a, b) << cmd;
  }
}

TEST(Cli, WhtAnalyzeMatchesLibrary) {
  const auto r = call({"wht-analyze", "--eta", "12", "--pes", "harmonic", "--dims", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const pes::SyntheticPes p(pes::PesKind::Harmonic, 2);
  const auto f = baseline::pes_function(p, 12, 15, baseline::Normalization::Raw);
  const auto tr = wht::minimal_truncation(f, 0x1p-10);
  EXPECT_EQ(r.j()["k"], tr.k());
  EXPECT_LT(r.j()["error"].get<double>(), 0x1p-10);
  const auto& curve = r.j()["curve"];
  for (std::size_t i = 1; i < curve.size(); ++i)
    EXPECT_LE(curve[i]["epsilon"].get<double>(), curve[i - 1]["epsilon"].get<double>() + 1e-15);
}

TEST(Cli, MalformedInputReportsLine) {
  const auto p = scratch("bad.csv");
  write(p, "0.5\n0.25\nbanana\n0.125\n");
  const auto r = call({"wht-analyze", "--input", p.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  const auto q = scratch("three.csv");
  write(q, "1\n2\n3\n");
  EXPECT_EQ(call({"wht-analyze", "--input", q.string()}).code, 3);
  EXPECT_EQ(call({"wht-analyze", "--input", scratch("missing.f64").string()}).code, 3);
}

TEST(Cli, QromSynthWritesReloadableCircuit) {
  const auto path = scratch("circuit.txt");
  const auto r = call({"qrom-synth", "--eta", "8", "--pes", "morse", "--circuit", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["simulation_mismatches"], 0);
  const auto c = qrom::from_text(slurp(path));
  EXPECT_EQ(to_json(qrom::cost(c)), r.j()["cost"]);
}

TEST(Cli, CompareEmitsBothModes) {
  const auto r = call({"compare", "--eta", "10", "--pes", "harmonic"});
  ASSERT_EQ(r.code, 0) << r.err;
  const pes::SyntheticPes p(pes::PesKind::Harmonic, 2);
  for (auto [mode, name] : {std::pair{baseline::Normalization::Raw, "raw"}, {baseline::Normalization::Arccos, "arccos"}}) {
    const auto rec = baseline::compare(baseline::pes_function(p, 10, 15, mode), 0x1p-10);
    EXPECT_EQ(r.j()[name], baseline::to_json(rec)) << name;
  }
  const auto csv = call({"compare", "--eta", "10", "--format", "csv"});
  EXPECT_NE(csv.out.find("\nraw,"), std::string::npos);
  EXPECT_NE(csv.out.find("\narccos,"), std::string::npos);
}

TEST(Cli, CompareFlagsTrivialWhSide) {
  const auto p = scratch("zeros16.csv");
  std::string z;
  for (int i = 0; i < 16; ++i) z += "0\n";
  write(p, z);
  const auto r = call({"compare", "--input", p.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["raw"]["k"], 0);
  EXPECT_NE(r.out.find("∞"), std::string::npos);
}

TEST(Cli, DvrCheckPasses) {
  for (const std::string kind : {"hermite", "legendre"})
    for (const std::string n : {"2", "8", "32", "64"}) {
      const auto r = call({"dvr-check", "--kind", kind, "--n", n});
      EXPECT_EQ(r.code, 0) << kind << n << r.out;
      EXPECT_TRUE(r.j()["pass"].get<bool>());
    }
  EXPECT_EQ(call({"dvr-check", "--n", "1"}).code, 2);
  EXPECT_EQ(call({"dvr-check", "--n", "400"}).code, 2);
}

TEST(Cli, BlockencVerify) {
  for (const std::string c : {"dsparse-standard", "dsparse-fused"}) {
    const auto r = call({"blockenc-verify", "--construction", c, "--n", "8", "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.j()["zeta_bounds_spectral_radius"].get<bool>());
  }
  const auto coo = scratch("diag.coo");
  write(coo, "# diagonal\n0,0,0.5\n1,1,-0.25\n2,2,0.125\n3,3,0\n");
  const auto d = call({"blockenc-verify", "--construction", "diagonal-fused", "--input", coo.string()});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_DOUBLE_EQ(d.j()["zeta"].get<double>(), 0.5);
  const auto off = scratch("off.coo");
  write(off, "0,1,0.5\n1,0,0.5\n");
  EXPECT_EQ(call({"blockenc-verify", "--construction", "diagonal-fused", "--input", off.string()}).code, 2);
  EXPECT_EQ(call({"blockenc-verify", "--construction", "magic"}).code, 2);
}

TEST(Cli, MolhamBundledWater) {
  const auto r = call({"molham", "--config", data("water.cfg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.j();
  ASSERT_EQ(j["eigenvalues_cm"].size(), 10u);
  ASSERT_EQ(j["strategies"].size(), 4u);
  const auto spec = molham::load_config(data("water.cfg"));
  const auto e = molham::eigenvalues(molham::build_hamiltonian(spec).dvr);
  EXPECT_DOUBLE_EQ(j["eigenvalues_cm"][0].get<double>(), e(0) * molham::kCmPerHartree);
  const auto fbr = molham::strategy_cost(spec, molham::Strategy::FbrDvr, {});
  EXPECT_EQ(j["strategies"][2]["cost"]["tCount"], fbr.report.tCount);
  for (const auto& s : j["strategies"])
    EXPECT_GE(s["zeta_cm"].get<double>(), j["spectral_radius_cm"].get<double>());
}

TEST(Cli, MolhamConfigErrorsCarryFieldPath) {
  const auto p = scratch("bad_mass.cfg");
  write(p, "system = water\nmass_h = -1\n");
  const auto r = call({"molham", "--config", p.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("mass_h"), std::string::npos) << r.err;
  const auto q = scratch("bad_number.cfg");
  write(q, "system = water\nn_r = lots\n");
  const auto s = call({"molham", "--config", q.string()});
  EXPECT_EQ(s.code, 3);
  EXPECT_NE(s.err.find("line 2"), std::string::npos) << s.err;
  EXPECT_EQ(call({"molham", "--strategy", "magic"}).code, 2);
}

TEST(Cli, MolhamSweepFeedsFit) {
  const auto sweep = scratch("sweep.csv");
  const auto r = call({"molham", "--config", data("two_mode.cfg"), "--strategy", "fbr-dvr", "--sweep-n", "4,8,16",
                       "--sweep-epsilon", "0.01,0.001,0.0001", "--format", "csv", "--out", sweep.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto text = slurp(sweep);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 10);
  const auto f = call({"fit-scaling", "--input", sweep.string()});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(f.j()["samples"], 9);
}

TEST(Cli, FitScalingSweepAndErrors) {
  const auto r = call({"fit-scaling", "--pes", "morse", "--eta-min", "8", "--eta", "11", "--points", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.j()["fit"].contains("c1"));
  EXPECT_TRUE(r.j().contains("sublinear_in_eta"));
  const auto p = scratch("fit_bad.csv");
  write(p, "eta,epsilon,tau\n10,0.01,100\n11,x,200\n");
  const auto bad = call({"fit-scaling", "--input", p.string()});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos);
  const auto q = scratch("fit_rank.csv");
  write(q, "10,0.01,100\n11,0.01,200\n12,0.01,400\n");
  EXPECT_EQ(call({"fit-scaling", "--input", q.string()}).code, 2);
}

TEST(Cli, RepeatedRunsAreIdentical) {
  const std::vector<std::vector<std::string>> cmds = {
      {"wht-analyze", "--eta", "10", "--pes", "gauss"},
      {"compare", "--eta", "9", "--format", "csv"},
      {"blockenc-verify", "--seed", "42"},
      {"molham", "--config", data("two_mode.cfg")},
      {"fit-scaling", "--eta-min", "6", "--eta", "8", "--points", "5"}};
  for (const auto& c : cmds) {
    const auto a = call(c), b = call(c);
    EXPECT_EQ(a.code, 0) << c[0] << a.err;
    EXPECT_EQ(a.out, b.out) << c[0];
  }
}

TEST(Cli, BinaryWritesIdenticalFiles) {
  const std::string tool = WHQROM_TOOL_PATH;
  const auto a = scratch("det_a.json"), b = scratch("det_b.json");
  for (const auto& p : {a, b}) {
    const std::string cmd = tool + " molham --config " + data("water.cfg") + " --seed 7 --out " + p.string();
    ASSERT_EQ(std::system(cmd.c_str()), 0);
  }
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(fs::exists(a.string() + ".tmp"));
}

}  // namespace
}  // namespace whqrom::cli
