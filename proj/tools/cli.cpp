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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "whqrom/baseline.hpp"
#include "whqrom/blockenc.hpp"
#include "whqrom/cost_report.hpp"
#include "whqrom/dvr.hpp"
#include "whqrom/error.hpp"
#include "whqrom/molham.hpp"
#include "whqrom/pes.hpp"
#include "whqrom/qrom.hpp"
#include "whqrom/sample_io.hpp"
#include "whqrom/wht.hpp"

namespace whqrom::cli {
namespace {

using nlohmann::json;

struct Common {
  int eta = 0;
  int digits = 15;
  double epsilon = 0x1p-10;
  std::uint64_t lambda = 0;
  std::string strategy = "all";
  std::string backend = "select-swap";
  std::string format = "json";
  std::uint64_t seed = 1;
  std::string out;
};

struct Source {
  std::string input;
  std::string pes = "harmonic";
  int dims = 2;
};

struct Report {
  json data;
  std::string csv;
  bool tolerance_ok = true;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// ---------------------------------------------------------------- inputs

struct Table {
  std::vector<double> values;
  int eta;
  std::string label;
};

Table load_table(const Common& c, const Source& s) {
  Table t;
  if (!s.input.empty()) {
    t.values = io::read_samples(s.input);
    if (t.values.empty() || !wht::is_power_of_two(t.values.size()))
      throw ParseError(0, s.input + ": sample count " + std::to_string(t.values.size()) + " is not a power of two");
    t.eta = wht::log2_exact(t.values.size());
    if (c.eta != 0 && c.eta != t.eta)
      throw ConfigError("eta", "input holds 2^" + std::to_string(t.eta) + " samples");
    t.label = s.input;
    return t;
  }
  t.eta = c.eta == 0 ? 10 : c.eta;
  if (t.eta < 1 || t.eta > 24) throw ConfigError("eta", "synthetic tables need 1 <= eta <= 24");
  const pes::SyntheticPes p(pes::parse_kind(s.pes), s.dims);
  const auto bits = pes::split_bits(t.eta, s.dims);
  t.values = pes::sample_grid(p, bits);
  t.label = "synthetic:" + pes::kind_name(p.kind()) + ":" + std::to_string(s.dims) + "d";
  return t;
}

// A zero table normalizes to zeros (raw) or to the constant 1/2 (arccos).
wht::SampledFunction normalized(const Table& t, baseline::Normalization mode, int digits) {
  std::vector<double> theta;
  try {
    theta = baseline::normalize_pes(t.values, mode, digits);
  } catch (const DegenerateNormError&) {
    theta.assign(t.values.size(), mode == baseline::Normalization::Raw ? 0.0 : 0.5);
  }
  return wht::quantize(theta, digits);
}

void check_epsilon(double eps) {
  if (!(eps > 0.0) || eps >= 1.0) throw ConfigError("epsilon", "must lie in (0, 1)");
}

std::vector<molham::Strategy> strategies(const std::string& name) {
  using molham::Strategy;
  if (name == "all") return {Strategy::FullDvr, Strategy::SeparateDvr, Strategy::FbrDvr, Strategy::LcuFbr};
  return {molham::parse_strategy(name)};
}

// ---------------------------------------------------------------- wht-analyze

Report wht_analyze(const Common& c, const Source& s) {
  check_epsilon(c.epsilon);
  const Table t = load_table(c, s);
  const auto f = normalized(t, baseline::Normalization::Raw, c.digits);
  const auto spectrum = wht::forward(f);
  const auto chosen = wht::minimal_truncation(f, c.epsilon);
  const double achieved = wht::diag_error(f, chosen.reconstruct());

  std::vector<std::size_t> ks = {0};
  for (std::size_t k = 1; k <= f.size(); k *= 2) ks.push_back(k);
  ks.push_back(chosen.k());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  Report r;
  r.data = {{"command", "wht-analyze"}, {"source", t.label}, {"eta", t.eta},     {"digits", c.digits},
            {"epsilon", c.epsilon},     {"size", f.size()},   {"k", chosen.k()}, {"error", achieved}};
  std::size_t nonzero = 0;
  for (auto v : spectrum.coeffs()) nonzero += v != 0;
  r.data["nonzero_coefficients"] = nonzero;
  auto& curve = r.data["curve"] = json::array();
  std::ostringstream csv;
  csv << "k,epsilon\n";
  for (auto k : ks) {
    const double e = wht::diag_error(f, wht::truncate(spectrum, k).reconstruct());
    curve.push_back({{"k", k}, {"epsilon", e}});
    csv << k << ',' << fmt(e) << '\n';
  }
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------- qrom-synth

constexpr int kMaxVerifyEta = 12;

Report qrom_synth(const Common& c, const Source& s, const std::string& circuit_path) {
  check_epsilon(c.epsilon);
  const Table t = load_table(c, s);
  const auto f = normalized(t, baseline::Normalization::Raw, c.digits);
  const auto tr = wht::minimal_truncation(f, c.epsilon);
  const auto circuit = qrom::pair_cancel(qrom::synthesize(tr), tr);
  const auto g = tr.reconstruct();
  const double err = wht::diag_error(f, g);
  const CostReport cost = qrom::cost(circuit);

  Report r;
  r.data = {{"command", "qrom-synth"}, {"source", t.label},  {"eta", t.eta},       {"digits", c.digits},
            {"epsilon", c.epsilon},    {"k", tr.k()},        {"error", err},       {"gates", circuit.gates().size()},
            {"cost", to_json(cost)}};
  r.tolerance_ok = err < c.epsilon || tr.k() == 0;
  if (t.eta <= kMaxVerifyEta) {
    const int b = circuit.payload_bits();
    const std::uint64_t mask = b >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << b) - 1;
    std::uint64_t mismatches = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x)
      if (qrom::simulate(circuit, x, 0) != (static_cast<std::uint64_t>(g.numerator(x)) & mask)) ++mismatches;
    r.data["simulation_mismatches"] = mismatches;
    r.tolerance_ok = r.tolerance_ok && mismatches == 0;
  }
  if (!circuit_path.empty()) io::write_file_atomic(circuit_path, qrom::to_text(circuit));
  std::ostringstream csv;
  csv << "eta,digits,epsilon,k,error,t_count,toffoli_count,cnot_count,qubits\n"
      << t.eta << ',' << c.digits << ',' << fmt(c.epsilon) << ',' << tr.k() << ',' << fmt(err) << ','
      << cost.tCount << ',' << cost.toffoliCount << ',' << cost.cnotCount << ',' << cost.qubitCount << '\n';
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------- compare

Report compare(const Common& c, const Source& s) {
  check_epsilon(c.epsilon);
  const Table t = load_table(c, s);
  Report r;
  r.data = {{"command", "compare"}, {"source", t.label}, {"eta", t.eta}, {"digits", c.digits}, {"epsilon", c.epsilon}};
  std::ostringstream csv;
  csv << "mode," << baseline::csv_header() << '\n';
  for (auto mode : {baseline::Normalization::Raw, baseline::Normalization::Arccos}) {
    const std::string name = mode == baseline::Normalization::Raw ? "raw" : "arccos";
    const auto rec = baseline::compare(normalized(t, mode, c.digits), c.epsilon);
    r.data[name] = baseline::to_json(rec);
    csv << name << ',' << baseline::to_csv_row(rec) << '\n';
  }
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------- dvr-check

constexpr int kMaxCheckedOrder = 64;
constexpr int kMaxRecursionOrder = 32;

Report dvr_check(const std::string& kind_name, int n) {
  const auto kind = dvr::parse_kind(kind_name);
  if (n < 2) throw ConfigError("n", "must be at least 2");
  const auto q = dvr::gauss_quadrature(kind, n);
  const auto t = dvr::build_transform(q);
  const double unit = dvr::unitarity_deviation(t);

  double quad = 0.0;
  for (int k = 0; k <= 2 * n - 1; ++k) {
    double sum = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      const double term = q.weights[static_cast<std::size_t>(i)] * std::pow(q.nodes[static_cast<std::size_t>(i)], k);
      sum += term;
      scale += std::abs(term);
    }
    quad = std::max(quad, std::abs(sum - dvr::moment(kind, k)) / std::max(1.0, scale));
  }

  std::optional<double> rec;
  if (n <= kMaxRecursionOrder && n % 2 == 0) {
    int seg = 2;
    while (seg * 2 <= 8 && n % (seg * 2) == 0) seg *= 2;
    const auto coeffs = dvr::recursion_coeffs(kind, n, seg);
    rec = (dvr::recursion_columns(coeffs, q.nodes, dvr::midpoint_columns(t, seg)) - t.t).cwiseAbs().maxCoeff();
  }

  // Anharmonic test operator: x^2/2 + x^4/10 in the FBR versus its DVR image.
  Eigen::MatrixXd fbr = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> v;
  for (double x : q.nodes) v.push_back(0.5 * x * x + 0.1 * x * x * x * x);
  fbr += dvr::fbr_potential(t, v);
  if (kind == dvr::QuadratureKind::Hermite) fbr += dvr::ho_kinetic(n, {});
  for (int i = 0; i < n; ++i) fbr(i, i) += i;
  const Eigen::MatrixXd dvr_m = t.t * fbr * t.t.transpose();
  const double agree = (molham::eigenvalues(fbr) - molham::eigenvalues(0.5 * (dvr_m + dvr_m.transpose()))).cwiseAbs().maxCoeff();

  Report r;
  r.data = {{"command", "dvr-check"},      {"kind", dvr::kind_name(kind)}, {"n", n},
            {"unitarity_deviation", unit}, {"quadrature_error", quad},     {"fbr_dvr_eigenvalue_gap", agree}};
  r.data["recursion_error"] = rec ? json(*rec) : json(nullptr);
  const bool checked = n <= kMaxCheckedOrder;
  r.data["tolerances_checked"] = checked;
  if (checked)
    r.tolerance_ok = unit < 1e-10 && quad < 1e-11 && agree < 1e-8 && (!rec || *rec < 1e-8);
  r.data["pass"] = r.tolerance_ok;
  std::ostringstream csv;
  csv << "kind,n,unitarity_deviation,quadrature_error,recursion_error,fbr_dvr_eigenvalue_gap\n"
      << dvr::kind_name(kind) << ',' << n << ',' << fmt(unit) << ',' << fmt(quad) << ','
      << (rec ? fmt(*rec) : std::string()) << ',' << fmt(agree) << '\n';
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------- blockenc-verify

Eigen::MatrixXd random_sparse_symmetric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = u(rng);
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const double w = u(rng);
    a(i, j) += w;
    a(j, i) += w;
  }
  return a;
}

Report blockenc_verify(const Common& c, const std::string& input, const std::string& construction, int n) {
  Eigen::MatrixXd a;
  if (!input.empty())
    a = blockenc::parse_coo(io::read_text(input));
  else {
    if (n < 1 || n > 256) throw ConfigError("n", "random operators need 1 <= n <= 256");
    a = random_sparse_symmetric(n, c.seed);
  }
  blockenc::BlockEncodingResult be;
  if (construction == "dsparse-standard")
    be = blockenc::dsparse_standard(blockenc::from_dense(a));
  else if (construction == "dsparse-fused")
    be = blockenc::dsparse_fused(blockenc::from_dense(a));
  else if (construction == "diagonal-fused") {
    if ((a - Eigen::MatrixXd(a.diagonal().asDiagonal())).cwiseAbs().maxCoeff() != 0.0)
      throw ConfigError("construction", "diagonal-fused needs a diagonal operator");
    const Eigen::VectorXd d = a.diagonal();
    be = blockenc::diagonal_fused(std::vector<double>(d.data(), d.data() + d.size()));
  } else {
    throw ConfigError("construction", "unknown construction '" + construction + "'");
  }
  const double rho = blockenc::spectral_radius(a);
  Report r;
  r.data = blockenc::to_json(be, construction);
  r.data["command"] = "blockenc-verify";
  r.data["source"] = input.empty() ? "random:seed=" + std::to_string(c.seed) : input;
  r.data["max_norm"] = blockenc::max_norm(a);
  r.data["spectral_radius"] = rho;
  r.data["zeta_bounds_spectral_radius"] = be.zeta >= rho - 1e-12;
  r.tolerance_ok = be.residual < 1e-9 && be.unitarity_deviation < 1e-10 && be.zeta >= rho - 1e-12;
  r.data["pass"] = r.tolerance_ok;
  std::ostringstream csv;
  csv << "construction,system_dim,ancilla_qubits,zeta,spectral_radius,residual,unitarity_deviation\n"
      << construction << ',' << be.system_dim << ',' << be.ancilla_qubits() << ',' << fmt(be.zeta) << ','
      << fmt(rho) << ',' << fmt(be.residual) << ',' << fmt(be.unitarity_deviation) << '\n';
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------- molham

struct MolhamOptions {
  std::string config;
  double qpe_epsilon_cm = 1.0;
  int eigenvalue_count = 10;
  std::vector<int> sweep_n;
  std::vector<double> sweep_epsilon;
};

molham::CostOptions cost_options(const Common& c, double epsilon) {
  molham::CostOptions o;
  o.backend = molham::parse_backend(c.backend);
  o.digits = c.digits;
  o.epsilon = epsilon;
  o.lambda = c.lambda;
  return o;
}

const char* kMolhamCsvHeader =
    "strategy,backend,n_r,n_theta,dimension,eta,epsilon,t_count,tau,qubits,ancillas,zeta_cm,qpe_calls,"
    "qpe_t_count,qpe_qubits,qpe_volume\n";

void molham_row(std::ostream& csv, const molham::ToyMoleculeSpec& spec, double eps, const molham::StrategyCost& sc,
                const molham::QpeCost& q) {
  const auto dims = spec.dims();
  const std::uint64_t dim = spec.dimension();
  csv << molham::strategy_name(sc.strategy) << ',' << molham::backend_name(sc.backend) << ','
      << (spec.kind == molham::SystemKind::Water ? spec.n_r : dims.front()) << ','
      << (spec.kind == molham::SystemKind::Water ? spec.n_theta : 0) << ',' << dim << ','
      << fmt(std::log2(static_cast<double>(dim))) << ',' << fmt(eps) << ',' << sc.report.tCount << ','
      << sc.report.toffoliCount << ',' << sc.report.qubitCount << ',' << sc.ancillas << ',' << fmt(sc.zeta_cm) << ','
      << q.calls << ',' << q.report.tCount << ',' << q.report.qubitCount << ',' << q.report.quantumVolume << '\n';
}

molham::ToyMoleculeSpec resized(molham::ToyMoleculeSpec s, int n) {
  if (s.kind == molham::SystemKind::Water) {
    s.n_r = n;
    s.n_theta = 2 * n;
  } else {
    for (auto& m : s.modes) m.n = n;
  }
  s.quadrature_r = s.quadrature_r ? std::max(s.quadrature_r, 2 * n) : 0;
  s.quadrature_theta = s.quadrature_theta ? std::max(s.quadrature_theta, 2 * n) : 0;
  return s;
}

Report molham_cmd(const Common& c, const MolhamOptions& m) {
  check_epsilon(c.epsilon);
  if (!(m.qpe_epsilon_cm > 0.0)) throw ConfigError("qpe-epsilon", "must be positive");
  const auto spec = m.config.empty() ? molham::water_default() : molham::load_config(m.config);
  spec.validate();
  const auto strats = strategies(c.strategy);
  Report r;
  std::ostringstream csv;
  csv << kMolhamCsvHeader;
  r.data = {{"command", "molham"}, {"spec", molham::to_json(spec)}, {"qpe_epsilon_cm", m.qpe_epsilon_cm}};

  if (!m.sweep_n.empty() || !m.sweep_epsilon.empty()) {
    const std::vector<int> ns = m.sweep_n.empty() ? std::vector<int>{0} : m.sweep_n;
    const std::vector<double> eps = m.sweep_epsilon.empty() ? std::vector<double>{c.epsilon} : m.sweep_epsilon;
    auto& rows = r.data["sweep"] = json::array();
    for (int n : ns) {
      const auto s = n == 0 ? spec : resized(spec, n);
      s.validate();
      for (double e : eps) {
        check_epsilon(e);
        for (auto st : strats) {
          const auto sc = molham::strategy_cost(s, st, cost_options(c, e));
          const auto q = molham::qpe_cost(sc.zeta_cm, sc.report, m.qpe_epsilon_cm);
          rows.push_back({{"dims", s.dims()}, {"epsilon", e}, {"cost", molham::to_json(sc)}, {"qpe", molham::to_json(q)}});
          molham_row(csv, s, e, sc, q);
        }
      }
    }
    r.csv = csv.str();
    return r;
  }

  if (m.eigenvalue_count > 0 && spec.dimension() <= molham::kMaxDenseDimension) {
    const auto h = molham::build_hamiltonian(spec);
    const Eigen::VectorXd e = molham::eigenvalues(h.dvr);
    auto& ev = r.data["eigenvalues_cm"] = json::array();
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(m.eigenvalue_count, e.size()); ++i)
      ev.push_back(e(i) * molham::kCmPerHartree);
    r.data["spectral_radius_cm"] = e.cwiseAbs().maxCoeff() * molham::kCmPerHartree;
  }
  auto& table = r.data["strategies"] = json::array();
  for (auto st : strats) {
    const auto sc = molham::strategy_cost(spec, st, cost_options(c, c.epsilon));
    const auto q = molham::qpe_cost(sc.zeta_cm, sc.report, m.qpe_epsilon_cm);
    json row = molham::to_json(sc);
    row["norms"] = molham::to_json(molham::norm_estimates(spec, st));
    row["qpe"] = molham::to_json(q);
    table.push_back(row);
    molham_row(csv, spec, c.epsilon, sc, q);
  }
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------- fit-scaling

std::vector<molham::ScalingSample> read_scaling_csv(const std::string& path) {
  const std::string text = io::read_text(path);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  int ce = 0, cp = 1, ct = 2;
  std::vector<molham::ScalingSample> out;
  bool first = true;
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::string item;
    std::istringstream s(l);
    while (std::getline(s, item, ',')) {
      const auto b = item.find_first_not_of(" \t\r");
      const auto e = item.find_last_not_of(" \t\r");
      f.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return f;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split(line);
    const bool header = first && std::isalpha(static_cast<unsigned char>(f[0].empty() ? ' ' : f[0][0]));
    first = false;
    if (header) {
      auto find = [&](const std::string& name) {
        const auto it = std::find(f.begin(), f.end(), name);
        if (it == f.end()) throw ParseError(lineno, "header lacks column '" + name + "'");
        return static_cast<int>(it - f.begin());
      };
      ce = find("eta");
      cp = find("epsilon");
      ct = find("tau");
      continue;
    }
    auto num = [&](int col) {
      if (col >= static_cast<int>(f.size())) throw ParseError(lineno, "missing column");
      try {
        std::size_t used = 0;
        const double v = std::stod(f[static_cast<std::size_t>(col)], &used);
        if (used != f[static_cast<std::size_t>(col)].size()) throw std::invalid_argument("trailing");
        return v;
      } catch (const std::exception&) {
        throw ParseError(lineno, "cannot parse '" + f[static_cast<std::size_t>(col)] + "' as a number");
      }
    };
    out.push_back({num(ce), num(cp), num(ct)});
  }
  return out;
}

std::vector<molham::ScalingSample> wh_sweep(const Common& c, const Source& s, int eta_min, int points) {
  const int eta_max = c.eta == 0 ? 12 : c.eta;
  if (eta_min < 2 || eta_min > eta_max || eta_max > 20) throw ConfigError("eta", "need 2 <= eta-min <= eta <= 20");
  if (points < 2) throw ConfigError("points", "must be at least 2");
  const pes::SyntheticPes p(pes::parse_kind(s.pes), s.dims);
  // epsilon from 2^-3 down to the quantization floor 2^(2 - d), log spaced.
  const double lo = 3.0, hi = std::max(4.0, c.digits - 2.0);
  std::vector<molham::ScalingSample> out;
  for (int eta = eta_min; eta <= eta_max; ++eta) {
    const auto f = baseline::pes_function(p, eta, c.digits, baseline::Normalization::Raw);
    for (int i = 0; i < points; ++i) {
      const double eps = std::exp2(-(lo + (hi - lo) * i / (points - 1)));
      const auto tr = wht::minimal_truncation(f, eps);
      const auto cost = qrom::cost(qrom::pair_cancel(qrom::synthesize(tr), tr));
      if (cost.toffoliCount > 0) out.push_back({static_cast<double>(eta), eps, static_cast<double>(cost.toffoliCount)});
    }
  }
  return out;
}

Report fit_cmd(const Common& c, const Source& s, int eta_min, int points) {
  const auto samples = s.input.empty() ? wh_sweep(c, s, eta_min, points) : read_scaling_csv(s.input);
  const auto fit = molham::fit_scaling(samples);
  Report r;
  r.data = {{"command", "fit-scaling"},
            {"source", s.input.empty() ? "wh-sweep:" + s.pes + ":" + std::to_string(s.dims) + "d" : s.input},
            {"model", "log2(tau) = c1 eta + c2 log2(log2(1/epsilon)) + c3"},
            {"fit", molham::to_json(fit)},
            {"samples", samples.size()}};
  r.data["sublinear_in_eta"] = fit.c1 < 1.0;
  std::ostringstream csv;
  csv << "eta,epsilon,tau\n";
  auto& rows = r.data["data"] = json::array();
  for (const auto& x : samples) {
    csv << fmt(x.eta) << ',' << fmt(x.epsilon) << ',' << fmt(x.tau) << '\n';
    rows.push_back({x.eta, x.epsilon, x.tau});
  }
  csv << "# c1=" << fmt(fit.c1) << " c2=" << fmt(fit.c2) << " c3=" << fmt(fit.c3) << " r2=" << fmt(fit.r2) << '\n';
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------- driver

void emit(const Common& c, const Report& r, std::ostream& out) {
  const std::string text = c.format == "csv" ? r.csv : r.data.dump(2) + "\n";
  if (c.out.empty())
    out << text;
  else
    io::write_file_atomic(c.out, text);
}

void add_source(CLI::App* sub, Source& s) {
  sub->add_option("--input", s.input, "sample file (.csv/.txt text, otherwise raw float64)");
  sub->add_option("--pes", s.pes, "synthetic potential when no input is given")
      ->check(CLI::IsMember({"harmonic", "morse", "gauss"}));
  sub->add_option("--dims", s.dims, "synthetic potential dimension")->check(CLI::Range(1, 6));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Walsh-Hadamard QROM and rovibrational block-encoding resource estimator", "whqrom"};
  app.fallthrough();
  app.require_subcommand(1);
  Common c;
  app.add_option("--eta", c.eta, "address bits");
  app.add_option("--digits", c.digits, "output precision d")->check(CLI::Range(2, 33));
  app.add_option("--epsilon", c.epsilon, "target precision");
  app.add_option("--lambda", c.lambda, "SELECT-SWAP lambda (0: optimal)");
  app.add_option("--strategy", c.strategy, "full-dvr, separate-dvr, fbr-dvr, lcu-fbr or all");
  app.add_option("--backend", c.backend, "select-swap or wh")->check(CLI::IsMember({"select-swap", "wh"}));
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", c.seed, "seed for synthetic data");
  app.add_option("--out", c.out, "output file (written atomically)");

  Source src;
  auto* wa = app.add_subcommand("wht-analyze", "Walsh spectrum concentration of a table");
  add_source(wa, src);
  std::string circuit_path;
  auto* qs = app.add_subcommand("qrom-synth", "synthesize and cost a WH-QROM");
  add_source(qs, src);
  qs->add_option("--circuit", circuit_path, "write the circuit as text");
  auto* cmp = app.add_subcommand("compare", "SELECT-SWAP over WH-QROM cost ratios");
  add_source(cmp, src);
  std::string kind = "hermite";
  int n = 16;
  auto* dc = app.add_subcommand("dvr-check", "DVR transform, quadrature and recursion checks");
  dc->add_option("--kind", kind)->check(CLI::IsMember({"hermite", "legendre"}));
  dc->add_option("--n", n, "basis size");
  std::string construction = "dsparse-standard", coo;
  int be_n = 8;
  auto* bv = app.add_subcommand("blockenc-verify", "build and verify a block encoding");
  bv->add_option("--input", coo, "operator as row,col,value lines");
  bv->add_option("--construction", construction, "dsparse-standard, dsparse-fused or diagonal-fused");
  bv->add_option("--n", be_n, "dimension of the random operator");
  MolhamOptions mo;
  auto* mh = app.add_subcommand("molham", "toy Hamiltonian spectra, norms and costs");
  mh->add_option("--config", mo.config, "key = value spec file");
  mh->add_option("--qpe-epsilon", mo.qpe_epsilon_cm, "QPE energy precision in cm^-1");
  mh->add_option("--eigenvalues", mo.eigenvalue_count, "number of levels to report");
  mh->add_option("--sweep-n", mo.sweep_n, "basis sizes to sweep")->delimiter(',');
  mh->add_option("--sweep-epsilon", mo.sweep_epsilon, "synthesis precisions to sweep")->delimiter(',');
  int eta_min = 8, points = 20;
  auto* fs = app.add_subcommand("fit-scaling", "fit log2 tau against eta and log2 log2 1/epsilon");
  add_source(fs, src);
  fs->add_option("--eta-min", eta_min, "smallest eta of the sweep");
  fs->add_option("--points", points, "epsilon points per eta");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    Report r;
    if (*wa) r = wht_analyze(c, src);
    else if (*qs) r = qrom_synth(c, src, circuit_path);
    else if (*cmp) r = compare(c, src);
    else if (*dc) r = dvr_check(kind, n);
    else if (*bv) r = blockenc_verify(c, coo, construction, be_n);
    else if (*mh) r = molham_cmd(c, mo);
    else r = fit_cmd(c, src, eta_min, points);
    emit(c, r, out);
    if (!r.tolerance_ok) {
      err << "error: numerical tolerance check failed\n";
      return kToleranceFailure;
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error [" << e.field() << "]: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParseError& e) {
    err << "parse error at line " << e.line() << ": " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const Error& e) {
    // RangeError, ShapeError, ScaleError, FitError and friends are parameter problems.
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace whqrom::cli
