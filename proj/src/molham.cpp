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


#include <algorithm>
#include <bit>
#include <cmath>

#include "whqrom/dvr.hpp"
#include "whqrom/error.hpp"
#include "whqrom/molham.hpp"
#include "whqrom/qrom.hpp"
#include "whqrom/wht.hpp"
#include "water_internal.hpp"

namespace whqrom::molham {

Strategy parse_strategy(const std::string& name) {
  if (name == "full-dvr") return Strategy::FullDvr;
  if (name == "separate-dvr") return Strategy::SeparateDvr;
  if (name == "fbr-dvr") return Strategy::FbrDvr;
  if (name == "lcu-fbr") return Strategy::LcuFbr;
  throw ConfigError("strategy", "unknown strategy '" + name + "'");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::FullDvr: return "full-dvr";
    case Strategy::SeparateDvr: return "separate-dvr";
    case Strategy::FbrDvr: return "fbr-dvr";
    case Strategy::LcuFbr: return "lcu-fbr";
  }
  return "";
}

Backend parse_backend(const std::string& name) {
  if (name == "select-swap") return Backend::SelectSwap;
  if (name == "wh") return Backend::Wh;
  throw ConfigError("backend", "unknown backend '" + name + "'");
}

std::string backend_name(Backend b) { return b == Backend::Wh ? "wh" : "select-swap"; }

double lambda_radial(double mass, double omega, int n) { return std::sqrt(mass * omega * n / 2.0); }

double lambda_legendre(int n_theta) {
  const double m = n_theta - 1.0;
  return std::sqrt(4.0 * m * m - 1.0);
}

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// max_ij sum_k |s_ki| |s_kj|
double product_max(const Eigen::MatrixXd& s) {
  const Eigen::MatrixXd a = s.cwiseAbs();
  return max_abs(a.transpose() * a);
}

struct WaterSamples {
  double mu, mu12, omega;
  double r_min, r_max;
  std::vector<double> u;  // restricted angular grid
  double inv_sin2_max = 0.0;
  double guu_max = 0.0;
  double g_max = 0.0;
  double cos_max = 0.0;
  double sin2_max = 0.0;
  double v_max = 0.0;
  detail::RadialGrid rg;
};

WaterSamples sample_water(const ToyMoleculeSpec& s) {
  WaterSamples w;
  w.rg = detail::radial_grid(s);
  w.mu = w.rg.mass;
  w.mu12 = s.mass_o * kElectronMassPerDalton;
  w.omega = w.rg.omega;
  w.r_min = *std::min_element(w.rg.nodes.begin(), w.rg.nodes.end());
  w.r_max = *std::max_element(w.rg.nodes.begin(), w.rg.nodes.end());
  const auto q = dvr::gauss_quadrature(dvr::QuadratureKind::Legendre, s.n_theta);
  const double scale = std::sin(s.theta_max * M_PI / 2.0);
  for (double x : q.nodes) w.u.push_back(scale * x);
  const double k = s.bend_k / kCmPerHartree;
  const double t0 = s.theta0_deg * M_PI / 180.0;
  const double c12 = s.stretch_coupling / kCmPerHartree / (kBohrPerAngstrom * kBohrPerAngstrom);
  double vb_max = 0.0;
  for (double u : w.u) {
    const double s2 = 1.0 - u * u;
    w.inv_sin2_max = std::max(w.inv_sin2_max, 1.0 / s2);
    w.sin2_max = std::max(w.sin2_max, s2);
    w.cos_max = std::max(w.cos_max, std::abs(u));
    const double d = std::acos(u) - t0;
    vb_max = std::max(vb_max, 0.5 * k * d * d);
  }
  double vr_max = 0.0;
  for (double v : w.rg.potential) vr_max = std::max(vr_max, v);
  double c_max = 0.0;
  const double r0 = w.rg.scaling.center;
  for (double r1 : w.rg.nodes)
    for (double r2 : w.rg.nodes) {
      c_max = std::max(c_max, std::abs(c12 * (r1 - r0) * (r2 - r0)));
      for (double u : w.u) {
        double g = 1.0 / (2.0 * w.mu * r1 * r1) + 1.0 / (2.0 * w.mu * r2 * r2);
        if (!s.decoupled) g -= u / (w.mu12 * r1 * r2);
        w.g_max = std::max(w.g_max, std::abs(g));
        w.guu_max = std::max(w.guu_max, std::abs(g) * (1.0 - u * u));
      }
    }
  w.v_max = 2.0 * vr_max + vb_max + c_max;
  return w;
}

double l2_norm(const ToyMoleculeSpec& s) {
  const Hamiltonian h = build_hamiltonian(s);
  return std::sqrt(h.dvr.squaredNorm() / static_cast<double>(h.dvr.rows()));
}

constexpr std::uint64_t kExactL2Dimension = 1024;

void water_terms(const ToyMoleculeSpec& s, Strategy strategy, NormEstimate& out) {
  const WaterSamples w = sample_water(s);
  out.r_min = w.r_min;
  out.inv_sin2_max = w.inv_sin2_max;
  out.singular_warning = s.theta_max >= 1.0;
  out.lambda_pr = lambda_radial(w.mu, w.omega, s.n_r);
  out.lambda_pu = lambda_legendre(s.n_theta);
  out.v_max_cm = w.v_max * kCmPerHartree;
  const double cm = kCmPerHartree;

  double zp = 2.0 * out.lambda_pr;
  double zu = 0.5 * s.n_theta * out.lambda_pu;
  if (strategy == Strategy::SeparateDvr) {
    zp = s.n_r * max_abs(w.rg.derivative);
    const auto t = dvr::build_transform(dvr::gauss_quadrature(dvr::QuadratureKind::Legendre, s.n_theta));
    zu = s.n_theta * max_abs(t.t * legendre_momentum(s.n_theta) * t.t.transpose());
  }
  if (strategy == Strategy::FbrDvr || strategy == Strategy::SeparateDvr) {
    out.terms.push_back({"P_R^2/2mu", zp * zp / (2.0 * w.mu) * cm, 2});
    out.terms.push_back({"P_u G_uu P_u", zu * zu * w.guu_max * cm, 1});
    if (!s.decoupled) {
      out.terms.push_back({"cos P_1 P_2/mu12", zp * zp * w.cos_max / w.mu12 * cm, 1});
      out.terms.push_back({"P_R (P_u sin + sin P_u)/(2 mu12 R)",
                           zp * 2.0 * zu * w.sin2_max / (2.0 * w.mu12 * w.r_min) * cm, 2});
    }
    out.terms.push_back({"V", w.v_max * cm, 1});
    return;
  }
  if (strategy == Strategy::FullDvr) {
    const auto ag = detail::angular_grid(s);
    double hmax = 2.0 * max_abs(w.rg.kinetic) + w.g_max * product_max(ag.slope) + w.v_max;
    if (!s.decoupled) {
      const double dmax = max_abs(w.rg.derivative);
      hmax += dmax * dmax * w.cos_max / w.mu12 + 2.0 * dmax * max_abs(ag.antisym) / (2.0 * w.mu12 * w.r_min);
    }
    const double nr = s.n_r, nt = s.n_theta;
    const double rho = nr * nr + 2.0 * nr * nt - 2.0 * nr - nt + 1.0;
    out.terms.push_back({"rho ||H||max", rho * hmax * cm, 1});
    return;
  }
}

void modes_terms(const ToyMoleculeSpec& s, Strategy strategy, NormEstimate& out) {
  double vmax = 0.0;
  std::vector<double> qmax;
  double rho = 1.0, hmax = 0.0;
  for (std::size_t i = 0; i < s.modes.size(); ++i) {
    const auto& m = s.modes[i];
    const double mass = m.mass_da * kElectronMassPerDalton;
    const double omega = m.omega_cm / kCmPerHartree;
    const auto t = dvr::build_transform(dvr::gauss_quadrature(dvr::QuadratureKind::Hermite, m.n));
    qmax.push_back(std::abs(t.quadrature.nodes.front()));
    vmax += 0.5 * omega * qmax.back() * qmax.back();
    const double lam = lambda_radial(mass, omega, m.n);
    out.lambda_pr = std::max(out.lambda_pr, lam);
    const Eigen::MatrixXd p_dvr = t.t * ho_derivative(m.n, mass, omega) * t.t.transpose();
    const dvr::HoScaling sc{mass, omega, 0.0};
    hmax += max_abs(t.t * dvr::ho_kinetic(m.n, sc) * t.t.transpose());
    rho += m.n - 1.0;
    const double z = strategy == Strategy::SeparateDvr ? m.n * max_abs(p_dvr) : 2.0 * lam;
    if (strategy == Strategy::FbrDvr || strategy == Strategy::SeparateDvr)
      out.terms.push_back({"P_" + std::to_string(i) + "^2/2m", z * z / (2.0 * mass) * kCmPerHartree, 1});
  }
  for (std::size_t i = 0; i + 1 < qmax.size(); ++i)
    vmax += std::abs(s.mode_coupling / kCmPerHartree) * qmax[i] * qmax[i + 1];
  out.v_max_cm = vmax * kCmPerHartree;
  hmax += vmax;
  if (strategy == Strategy::FbrDvr || strategy == Strategy::SeparateDvr)
    out.terms.push_back({"V", vmax * kCmPerHartree, 1});
  if (strategy == Strategy::FullDvr) out.terms.push_back({"rho ||H||max", rho * hmax * kCmPerHartree, 1});
}

double sum_terms(const NormEstimate& n) {
  double t = 0.0;
  for (const auto& term : n.terms) t += term.norm_cm * static_cast<double>(term.count);
  return t;
}

}  // namespace

NormEstimate norm_estimates(const ToyMoleculeSpec& spec, Strategy strategy) {
  spec.validate();
  NormEstimate out;
  out.strategy = strategy;
  out.lambda_jz = spec.j;
  out.lambda_jx = spec.j > 0 ? std::sqrt(spec.j * (spec.j + 1.0)) : 0.0;
  if (strategy == Strategy::LcuFbr) {
    const double n = static_cast<double>(spec.dimension());
    double l2 = 0.0;
    if (spec.dimension() <= kExactL2Dimension) {
      l2 = l2_norm(spec) * kCmPerHartree;
      NormEstimate tmp = norm_estimates(spec, Strategy::FbrDvr);
      out.lambda_pr = tmp.lambda_pr;
      out.lambda_pu = tmp.lambda_pu;
      out.r_min = tmp.r_min;
      out.inv_sin2_max = tmp.inv_sin2_max;
      out.v_max_cm = tmp.v_max_cm;
      out.singular_warning = tmp.singular_warning;
    } else {
      NormEstimate tmp = norm_estimates(spec, Strategy::FbrDvr);
      out = tmp;
      out.strategy = Strategy::LcuFbr;
      out.terms.clear();
      l2 = tmp.total_cm;
      out.l2_is_bound = true;
    }
    out.terms.push_back({"L2 (sqrt(tr H^2 / N))", l2, 0});
    out.terms.push_back({"N L2", n * l2, 1});
    out.total_cm = sum_terms(out);
    return out;
  }
  if (spec.kind == SystemKind::Water)
    water_terms(spec, strategy, out);
  else
    modes_terms(spec, strategy, out);
  out.total_cm = sum_terms(out);
  return out;
}

// ---------------------------------------------------------------- costs

int rotation_bits(double epsilon) {
  if (!(epsilon > 0.0) || epsilon >= 1.0) throw RangeError("epsilon must lie in (0, 1)");
  return static_cast<int>(std::ceil(10.0 + 4.0 * std::log2(1.0 / epsilon)));
}

namespace {

std::uint64_t ceil_log2(std::uint64_t n) { return n <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(n - 1)); }

void finish(CostReport& r) {
  r.toffoliCount = (r.tCount + 3) / 4;
  r.quantumVolume = r.tCount * r.qubitCount;
}

CostReport scaled(const CostReport& c, std::uint64_t k) {
  CostReport r = c;
  r.tCount *= k;
  r.toffoliCount *= k;
  r.cnotCount *= k;
  r.cliffordCount *= k;
  r.tDepth *= k;
  r.quantumVolume = r.tCount * r.qubitCount;
  return r;
}

}  // namespace

CostReport table_lookup_cost(std::uint64_t entries, int bits, std::uint64_t lambda) {
  CostReport r;
  if (entries <= 1 || bits <= 0) return r;
  const std::uint64_t l = std::clamp<std::uint64_t>(lambda, 1, entries);
  const auto b = static_cast<std::uint64_t>(bits);
  r.tCount = 4 * ((entries + l - 1) / l) + 8 * b * l;
  r.tDepth = r.tCount;
  r.qubitCount = b * l + ceil_log2(entries);
  finish(r);
  return r;
}

CostReport optimal_table_lookup_cost(std::uint64_t entries, int bits) {
  if (entries <= 1 || bits <= 0) return {};
  const double star = std::sqrt(static_cast<double>(entries) / (2.0 * bits));
  const auto lo = static_cast<std::uint64_t>(std::max(1.0, std::floor(star / 2.0)));
  const auto hi = std::min<std::uint64_t>(entries, static_cast<std::uint64_t>(std::ceil(2.0 * star)) + 1);
  CostReport best = table_lookup_cost(entries, bits, lo);
  for (std::uint64_t l = lo + 1; l <= hi; ++l) {
    const CostReport c = table_lookup_cost(entries, bits, l);
    if (c.tCount < best.tCount) best = c;
  }
  return best;
}

namespace {

constexpr std::uint64_t kMaxWhTable = std::uint64_t{1} << 20;

CostReport wh_lookup_cost(const std::vector<double>& values, int digits, double epsilon) {
  if (values.size() <= 1) return {};
  if (values.size() > kMaxWhTable) throw ScaleError("table exceeds 2^20 entries for WH synthesis");
  const int eta = std::bit_width(values.size() - 1);
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  const double hi = 1.0 - std::ldexp(1.0, 1 - digits);
  std::vector<double> theta(std::size_t{1} << eta, 0.0);
  if (peak > 0.0)
    for (std::size_t i = 0; i < values.size(); ++i) theta[i] = std::clamp(values[i] / peak, -1.0, hi);
  const auto f = wht::quantize(theta, digits);
  const auto tr = wht::minimal_truncation(f, epsilon);
  return qrom::cost(qrom::pair_cancel(qrom::synthesize(tr), tr));
}

using Values = std::function<std::vector<double>()>;

// One table lookup or diagonal unitary, costed by the selected backend.
class Coster {
 public:
  explicit Coster(const CostOptions& o) : o_(o), k_(rotation_bits(o.epsilon)) {}

  CostReport lookup(std::uint64_t entries, int bits, const Values& values) const {
    if (o_.backend == Backend::Wh && values) return wh_lookup_cost(values(), o_.digits, o_.epsilon);
    return o_.lambda ? table_lookup_cost(entries, bits, o_.lambda) : optimal_table_lookup_cost(entries, bits);
  }

  /// 2 C_Q(n, 2K) + 7K.
  CostReport diagonal(std::uint64_t n, const Values& values) const {
    if (n <= 1) return {};
    CostReport q = lookup(n, 2 * k_, values);
    CostReport r = scaled(q, 2);
    r.qubitCount = q.qubitCount + static_cast<std::uint64_t>(2 * k_);
    r.tCount += 7 * static_cast<std::uint64_t>(k_);
    r.tDepth += 7 * static_cast<std::uint64_t>(k_);
    finish(r);
    return r;
  }

  /// 2 sum_i floor(pi sqrt(n_i) / 4) C_Q(n_i^2, d).
  CostReport transform(const std::vector<std::pair<int, dvr::QuadratureKind>>& regs) const {
    CostReport total;
    for (const auto& [n, kind] : regs) {
      const std::vector<int> one = {n};
      dvr::QromCoster c;
      if (o_.backend == Backend::Wh) {
        c = dvr::wh_transform_coster(kind, o_.epsilon);
      } else {
        const auto lam = o_.lambda;
        c = [lam](std::uint64_t e, int d) {
          return lam ? table_lookup_cost(e, d, lam) : optimal_table_lookup_cost(e, d);
        };
      }
      const CostReport r = dvr::dvr_oracle_cost(one, o_.digits, c);
      total.tCount += r.tCount;
      total.tDepth += r.tDepth;
      total.cnotCount += r.cnotCount;
      total.cliffordCount += r.cliffordCount;
      total.qubitCount = std::max(total.qubitCount, r.qubitCount);
    }
    finish(total);
    return total;
  }

  int k() const { return k_; }
  const CostOptions& options() const { return o_; }

 private:
  CostOptions o_;
  int k_;
};

CostReport fixed_t(std::uint64_t t) {
  CostReport r;
  r.tCount = t;
  r.tDepth = t;
  finish(r);
  return r;
}

std::uint64_t slack_t(std::uint64_t d, double epsilon, int j) {
  const std::uint64_t logd = ceil_log2(d);
  const auto prep = static_cast<std::uint64_t>(std::ceil(std::sqrt(std::log2(1.0 / epsilon))));
  return 4 * (d * d * logd + d * prep + ceil_log2(2 * static_cast<std::uint64_t>(j) + 1));
}

std::vector<double> ladder_values(int n, double mass, double omega) {
  std::vector<double> v(2 * static_cast<std::size_t>(n), 0.0);
  const double s = std::sqrt(mass * omega / 2.0);
  for (int k = 0; k + 1 < n; ++k) {
    v[2 * static_cast<std::size_t>(k)] = s * std::sqrt(k + 1.0);
    v[2 * static_cast<std::size_t>(k) + 1] = -s * std::sqrt(k + 1.0);
  }
  return v;
}

std::vector<double> legendre_values(int n) {
  std::vector<double> v;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; b += 2) {
      const double x = std::sqrt((2.0 * a + 1.0) * (2.0 * b + 1.0));
      v.push_back(x);
      v.push_back(-x);
    }
  return v;
}

std::vector<double> flatten(const Eigen::MatrixXd& m) {
  std::vector<double> v(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
  return v;
}

std::vector<double> water_potential_grid(const ToyMoleculeSpec& s) {
  const auto rg = detail::radial_grid(s);
  const auto ag = detail::angular_grid(s);
  const double c12 = s.stretch_coupling / kCmPerHartree / (kBohrPerAngstrom * kBohrPerAngstrom);
  const double r0 = rg.scaling.center;
  std::vector<double> v;
  for (int i1 = 0; i1 < s.n_r; ++i1)
    for (int i2 = 0; i2 < s.n_r; ++i2)
      for (int k = 0; k < s.n_theta; ++k) {
        const auto a = static_cast<std::size_t>(i1), b = static_cast<std::size_t>(i2);
        v.push_back(rg.potential[a] + rg.potential[b] + ag.potential[static_cast<std::size_t>(k)] +
                    c12 * (rg.nodes[a] - r0) * (rg.nodes[b] - r0));
      }
  return v;
}

std::vector<double> modes_potential_grid(const ToyMoleculeSpec& s) {
  std::vector<std::vector<double>> q;
  std::vector<double> om;
  for (const auto& m : s.modes) {
    q.push_back(dvr::gauss_quadrature(dvr::QuadratureKind::Hermite, m.n).nodes);
    om.push_back(m.omega_cm / kCmPerHartree);
  }
  const double c = s.mode_coupling / kCmPerHartree;
  std::vector<double> v(s.dimension());
  const auto dims = s.dims();
  for (std::size_t r = 0; r < v.size(); ++r) {
    std::size_t rest = r;
    std::vector<double> x(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      x[i] = q[i][rest % static_cast<std::size_t>(dims[i])];
      rest /= static_cast<std::size_t>(dims[i]);
    }
    double e = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) e += 0.5 * om[i] * x[i] * x[i];
    for (std::size_t i = 0; i + 1 < x.size(); ++i) e += c * x[i] * x[i + 1];
    v[r] = e;
  }
  return v;
}

struct Builder {
  const Coster& coster;
  StrategyCost& out;

  void add(const std::string& name, std::uint64_t count, const CostReport& each) {
    if (count == 0) return;
    out.components.push_back({name, count, each});
  }
  void diag(const std::string& name, std::uint64_t count, std::uint64_t n, const Values& v) {
    add(name, count, coster.diagonal(n, v));
  }
};

void water_components(const ToyMoleculeSpec& s, Strategy strategy, const Coster& c, StrategyCost& out) {
  Builder b{c, out};
  const auto nr = static_cast<std::uint64_t>(s.n_r), nt = static_cast<std::uint64_t>(s.n_theta);
  const std::uint64_t n = nr * nr * nt;
  const double mu = detail::reduced_mass(s), omega = s.omega / kCmPerHartree;
  auto cos_values = [&] { return detail::angular_grid(s).nodes; };
  auto sin_values = [&] {
    auto u = detail::angular_grid(s).nodes;
    for (auto& x : u) x = std::sqrt(1.0 - x * x);
    return u;
  };
  auto inv_r = [&] {
    auto r = detail::radial_grid(s).nodes;
    for (auto& x : r) x = 1.0 / x;
    return r;
  };
  auto potential = [&] { return water_potential_grid(s); };
  const std::vector<std::pair<int, dvr::QuadratureKind>> regs = {
      {s.n_r, dvr::QuadratureKind::Hermite}, {s.n_r, dvr::QuadratureKind::Hermite}, {s.n_theta, dvr::QuadratureKind::Legendre}};
  const std::uint64_t slack = slack_t(3, c.options().epsilon, s.j);

  switch (strategy) {
    case Strategy::FbrDvr: {
      b.diag("BE[P_R] C_D(2 n_R)", 4, 2 * nr, [&] { return ladder_values(s.n_r, mu, omega); });
      b.diag("BE[P_u] C_D(n_theta^2/2)", 4, nt * nt / 2, [&] { return legendre_values(s.n_theta); });
      b.diag("BE[cos] C_D(n_theta)", 1, nt, cos_values);
      b.diag("BE[sin] C_D(n_theta)", 2, nt, sin_values);
      b.diag("BE[1/R] C_D(n_R)", 1, nr, inv_r);
      b.diag("BE[V] C_D(n_R^2 n_theta)", 1, n, potential);
      b.add("C^DVR (inside C_BE)", 2, c.transform(regs));
      b.add("C^DVR (FBR-DVR frame)", 4, c.transform(regs));
      b.add("controls, swaps, O_F, state preparation", 1, fixed_t(slack + 4 * ceil_log2(n)));
      break;
    }
    case Strategy::SeparateDvr: {
      auto angular_blocks = [&] {
        const auto ag = detail::angular_grid(s);
        const auto rg = detail::radial_grid(s);
        std::vector<double> v;
        for (double r1 : rg.nodes)
          for (double r2 : rg.nodes) {
            Eigen::VectorXd g(s.n_theta);
            for (int k = 0; k < s.n_theta; ++k) {
              const double u = ag.nodes[static_cast<std::size_t>(k)];
              g(k) = 1.0 / (2.0 * mu * r1 * r1) + 1.0 / (2.0 * mu * r2 * r2) -
                     u / (s.mass_o * kElectronMassPerDalton * r1 * r2);
            }
            const auto blk = flatten(ag.slope.transpose() * g.asDiagonal() * ag.slope);
            v.insert(v.end(), blk.begin(), blk.end());
          }
        return v;
      };
      b.diag("C_D(n_R^2 n_theta^2)", 2, n * nt, angular_blocks);
      b.diag("C_D(n_R^2 n_theta)", 1, n, potential);
      b.diag("C_D(n_R^2)", 6, nr * nr, [&] { return flatten(detail::radial_grid(s).kinetic); });
      b.diag("C_D(n_theta^2)", 2, nt * nt, [&] { return flatten(detail::angular_grid(s).antisym); });
      b.diag("C_D(n_theta)", 1, nt, cos_values);
      b.diag("C_D(n_R)", 1, nr, inv_r);
      b.add("controls, swaps, O_F, state preparation", 1, fixed_t(slack + 4 * ceil_log2(n)));
      break;
    }
    default: break;
  }
}

void modes_components(const ToyMoleculeSpec& s, Strategy strategy, const Coster& c, StrategyCost& out) {
  Builder b{c, out};
  const std::uint64_t n = s.dimension();
  std::vector<std::pair<int, dvr::QuadratureKind>> regs;
  for (const auto& m : s.modes) regs.push_back({m.n, dvr::QuadratureKind::Hermite});
  auto potential = [&] { return modes_potential_grid(s); };
  const std::uint64_t slack = slack_t(s.modes.size(), c.options().epsilon, s.j);
  for (std::size_t i = 0; i < s.modes.size(); ++i) {
    const auto& m = s.modes[i];
    const auto ni = static_cast<std::uint64_t>(m.n);
    const double mass = m.mass_da * kElectronMassPerDalton, omega = m.omega_cm / kCmPerHartree;
    const std::string tag = "[" + std::to_string(i) + "]";
    if (strategy == Strategy::FbrDvr)
      b.diag("BE[P" + tag + "] C_D(2 n)", 4, 2 * ni, [=] { return ladder_values(m.n, mass, omega); });
    else if (strategy == Strategy::SeparateDvr)
      b.diag("BE[K" + tag + "] C_D(n^2)", 2, ni * ni, [=, &s] {
        const auto t = dvr::build_transform(dvr::gauss_quadrature(dvr::QuadratureKind::Hermite, m.n));
        const dvr::HoScaling sc{mass, omega, 0.0};
        (void)s;
        return flatten(t.t * dvr::ho_kinetic(m.n, sc) * t.t.transpose());
      });
  }
  if (s.modes.empty()) return;
  b.diag("BE[V] C_D(N)", 1, n, potential);
  if (strategy == Strategy::FbrDvr) b.add("C^DVR (FBR-DVR frame)", 4, c.transform(regs));
  b.add("controls, O_F, state preparation", 1, fixed_t(slack + 4 * ceil_log2(n)));
}

void full_dvr_components(const ToyMoleculeSpec& s, const Coster& c, StrategyCost& out) {
  Builder b{c, out};
  const std::uint64_t n = s.dimension();
  std::uint64_t rho = 1;
  if (s.kind == SystemKind::Water) {
    const auto nr = static_cast<std::uint64_t>(s.n_r), nt = static_cast<std::uint64_t>(s.n_theta);
    rho = nr * nr + 2 * nr * nt - 2 * nr - nt + 1;
  } else {
    for (const auto& m : s.modes) rho += static_cast<std::uint64_t>(m.n) - 1;
  }
  if (rho <= 1) {
    b.diag("C_D(n)", 1, n, {});
    return;
  }
  auto elements = [&] {
    const Hamiltonian h = build_hamiltonian(s);
    std::vector<double> v;
    for (Eigen::Index i = 0; i < h.dvr.rows(); ++i)
      for (Eigen::Index j = 0; j < h.dvr.cols(); ++j)
        if (h.dvr(i, j) != 0.0) v.push_back(h.dvr(i, j));
    return v;
  };
  const Values ev = s.dimension() <= kMaxDenseDimension ? Values(elements) : Values();
  const int d = c.options().digits;
  b.add("O_H C_Q(rho n, d)", 4, c.lookup(rho * n, d, ev));
  b.diag("rotation C_D(2^d)", 2, std::uint64_t{1} << d, [d] {
    std::vector<double> v(std::size_t{1} << d);
    for (std::size_t y = 0; y < v.size(); ++y) v[y] = std::acos(std::ldexp(static_cast<double>(y), -d)) / M_PI;
    return v;
  });
  b.add("O_F C_Q(rho n, log2 n)", 1, c.lookup(rho * n, static_cast<int>(ceil_log2(n)), {}));
}

void lcu_components(const ToyMoleculeSpec& s, StrategyCost& out) {
  const double n = static_cast<double>(s.dimension());
  const double logn = std::log2(n);
  const double paulis = 0.75 * n * n * logn;
  CostReport r;
  r.tCount = static_cast<std::uint64_t>(std::llround(3.0 * n * n * logn));
  r.tDepth = r.tCount;
  r.cliffordCount = static_cast<std::uint64_t>(std::llround(27.0 / 4.0 * n * n * logn));
  r.qubitCount = 2 * ceil_log2(s.dimension()) +
                 ceil_log2(static_cast<std::uint64_t>(std::max(1.0, std::ceil(paulis))));
  finish(r);
  out.components.push_back({"Pauli-string LCU", 1, r});
}

}  // namespace

StrategyCost strategy_cost(const ToyMoleculeSpec& spec, Strategy strategy, const CostOptions& opts) {
  if (opts.digits < 1 || opts.digits > 33) throw RangeError("digits must lie in [1, 33]");
  StrategyCost out;
  out.strategy = strategy;
  out.backend = opts.backend;
  if (spec.kind == SystemKind::Modes && spec.modes.empty()) return out;
  spec.validate();
  const Coster c(opts);
  switch (strategy) {
    case Strategy::LcuFbr: lcu_components(spec, out); break;
    case Strategy::FullDvr: full_dvr_components(spec, c, out); break;
    default:
      if (spec.kind == SystemKind::Water)
        water_components(spec, strategy, c, out);
      else
        modes_components(spec, strategy, c, out);
  }
  std::uint64_t anc = 0;
  for (const auto& comp : out.components) {
    out.report.tCount += comp.count * comp.each.tCount;
    out.report.tDepth += comp.count * comp.each.tDepth;
    out.report.cnotCount += comp.count * comp.each.cnotCount;
    out.report.cliffordCount += comp.count * comp.each.cliffordCount;
    anc = std::max(anc, comp.each.qubitCount);
  }
  std::uint64_t terms = 0;
  for (const auto& comp : out.components) terms += comp.count;
  out.ancillas = anc + (strategy == Strategy::LcuFbr ? 0 : ceil_log2(std::max<std::uint64_t>(terms, 1)) + 1);
  std::uint64_t sys = 0;
  for (int d : spec.dims()) sys += ceil_log2(static_cast<std::uint64_t>(d));
  out.report.qubitCount = sys + out.ancillas;
  finish(out.report);
  out.clifford_estimate = out.report.cliffordCount;
  out.zeta_cm = norm_estimates(spec, strategy).total_cm;
  return out;
}

std::vector<SweepPoint> lambda_sweep(const ToyMoleculeSpec& spec, Strategy strategy, CostOptions opts,
                                     std::span<const std::uint64_t> lambdas) {
  std::vector<SweepPoint> out;
  for (auto l : lambdas) {
    opts.lambda = l;
    out.push_back({l, strategy_cost(spec, strategy, opts)});
  }
  return out;
}

// ---------------------------------------------------------------- QPE, fits, discretization

QpeCost qpe_cost(double zeta_cm, const CostReport& c_h, double epsilon_cm) {
  if (!(epsilon_cm > 0.0)) throw RangeError("epsilon must be positive");
  if (zeta_cm < 0.0) throw RangeError("zeta must be non-negative");
  QpeCost q;
  q.zeta_over_epsilon = zeta_cm / epsilon_cm;
  q.calls = static_cast<std::uint64_t>(std::ceil(M_PI * q.zeta_over_epsilon / 2.0));
  q.report = scaled(c_h, q.calls);
  q.report.toffoliCount = c_h.toffoliCount * q.calls;
  const double bits = std::ceil(std::log2(std::max(q.zeta_over_epsilon, 2.0)));
  q.report.qubitCount = c_h.qubitCount + static_cast<std::uint64_t>(bits);
  q.report.quantumVolume = q.report.tCount * q.report.qubitCount;
  return q;
}

ScalingFit fit_scaling(std::span<const ScalingSample> samples) {
  if (samples.size() < 3) throw FitError("need at least 3 samples");
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    if (!(s.epsilon > 0.0) || s.epsilon >= 0.5) throw FitError("epsilon must lie in (0, 1/2)");
    if (!(s.tau > 0.0)) throw FitError("tau must be positive");
    a(i, 0) = s.eta;
    a(i, 1) = std::log2(std::log2(1.0 / s.epsilon));
    a(i, 2) = 1.0;
    y(i) = std::log2(s.tau);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw FitError("design matrix is rank deficient (need distinct eta and epsilon)");
  const Eigen::VectorXd c = qr.solve(y);
  const Eigen::VectorXd res = y - a * c;
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = res.squaredNorm();
  ScalingFit f{c(0), c(1), c(2), ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
  return f;
}

double signed_fraction(std::uint64_t v, int bits) {
  if (bits < 1 || bits > 62) throw RangeError("bits must lie in [1, 62]");
  const std::uint64_t top = std::uint64_t{1} << (bits - 1);
  const auto s = static_cast<double>(v & ((top << 1) - 1));
  return (v & top ? s - 2.0 * static_cast<double>(top) : s) / static_cast<double>(top);
}

DiscretizationCheck discretization_bound_check(const PhaseFunction& theta, int dims, double lipschitz, int m,
                                               int m_fine) {
  if (dims < 1 || m < 1 || m_fine < m) throw RangeError("need dims >= 1 and 1 <= m <= m'");
  if (dims * m_fine > 14) throw ScaleError("dims * m' exceeds 14 qubits");
  if (lipschitz < 0.0) throw RangeError("Lipschitz constant must be non-negative");
  const std::uint64_t size = std::uint64_t{1} << (dims * m_fine);
  const std::uint64_t mask = (std::uint64_t{1} << m_fine) - 1;
  const int shift = m_fine - m;
  std::vector<double> fine(static_cast<std::size_t>(dims)), coarse(static_cast<std::size_t>(dims));
  double measured = 0.0;
  for (std::uint64_t x = 0; x < size; ++x) {
    for (int a = 0; a < dims; ++a) {
      const std::uint64_t reg = (x >> (a * m_fine)) & mask;
      fine[static_cast<std::size_t>(a)] = signed_fraction(reg, m_fine);
      coarse[static_cast<std::size_t>(a)] = signed_fraction(reg >> shift, m);
    }
    const double d = theta(fine) - theta(coarse);
    measured = std::max(measured, 2.0 * std::abs(std::sin(M_PI * d / 2.0)));
  }
  const double root = std::sqrt(dims * std::ldexp(1.0, -2 * m));
  return {measured, std::sqrt(2.0) * M_PI * lipschitz * root, 2.0 * M_PI * lipschitz * root};
}

int m_epsilon(int dims, double gradient_bound, double epsilon) {
  if (dims < 1 || !(epsilon > 0.0) || !(gradient_bound > 0.0)) throw RangeError("m_epsilon: invalid arguments");
  const double v = std::ceil(std::log2(std::sqrt(static_cast<double>(dims)) * gradient_bound / (2.0 * M_PI * epsilon)) - 1e-12);
  return std::max(1, static_cast<int>(v));
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const NormEstimate& n) {
  nlohmann::json j;
  j["strategy"] = strategy_name(n.strategy);
  j["lambda_PR_au"] = n.lambda_pr;
  j["lambda_Pu"] = n.lambda_pu;
  j["lambda_Jz"] = n.lambda_jz;
  j["zeta_Jx"] = n.lambda_jx;
  j["r_min_bohr"] = n.r_min;
  j["inv_sin2_max"] = n.inv_sin2_max;
  j["V_max_cm"] = n.v_max_cm;
  j["singular_warning"] = n.singular_warning;
  j["l2_is_bound"] = n.l2_is_bound;
  auto& t = j["terms"] = nlohmann::json::array();
  for (const auto& term : n.terms) t.push_back({{"name", term.name}, {"norm_cm", term.norm_cm}, {"count", term.count}});
  j["total_cm"] = n.total_cm;
  j["total_hartree"] = n.total_hartree();
  return j;
}

nlohmann::json to_json(const StrategyCost& c) {
  nlohmann::json j;
  j["strategy"] = strategy_name(c.strategy);
  j["backend"] = backend_name(c.backend);
  j["cost"] = whqrom::to_json(c.report);
  j["ancillas"] = c.ancillas;
  j["zeta_cm"] = c.zeta_cm;
  j["zeta_hartree"] = c.zeta_cm / kCmPerHartree;
  auto& comps = j["components"] = nlohmann::json::array();
  for (const auto& comp : c.components)
    comps.push_back({{"name", comp.name}, {"count", comp.count}, {"each", whqrom::to_json(comp.each)}});
  return j;
}

nlohmann::json to_json(const QpeCost& q) {
  return {{"calls", q.calls}, {"zeta_over_epsilon", q.zeta_over_epsilon}, {"cost", whqrom::to_json(q.report)}};
}

nlohmann::json to_json(const ScalingFit& f) {
  return {{"c1", f.c1}, {"c2", f.c2}, {"c3", f.c3}, {"r2", f.r2}};
}

}  // namespace whqrom::molham
