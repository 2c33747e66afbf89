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


#include <cmath>

#include "whqrom/dvr.hpp"
#include "whqrom/error.hpp"
#include "whqrom/molham.hpp"
#include "water_internal.hpp"

namespace whqrom::molham {

Eigen::MatrixXd ho_derivative(int n, double mass, double omega) {
  const double scale = std::sqrt(mass * omega / 2.0);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double v = scale * std::sqrt(k + 1.0);
    d(k, k + 1) = v;
    d(k + 1, k) = -v;
  }
  return d;
}

Eigen::MatrixXd legendre_momentum(int n) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; b += 2) p(a, b) = std::sqrt((2.0 * a + 1.0) * (2.0 * b + 1.0));
  return p;
}

Eigen::MatrixXd angular_momentum_z(int j) {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2 * j + 1, 2 * j + 1);
  for (int k = -j; k <= j; ++k) z(k + j, k + j) = k;
  return z;
}

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return es.eigenvalues();
}

namespace detail {

Eigen::MatrixXd mode_product(const Eigen::MatrixXd& x, const std::vector<int>& dims,
                             const std::vector<Eigen::MatrixXd>& mats) {
  Eigen::MatrixXd cur = x;
  const Eigen::Index cols = x.cols();
  std::size_t stride = 1;
  for (std::size_t m = dims.size(); m-- > 0;) {
    const auto n = static_cast<std::size_t>(dims[m]);
    const std::size_t block = n * stride;
    const auto rows = static_cast<std::size_t>(cur.rows());
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(cur.rows(), cols);
    Eigen::MatrixXd gather(static_cast<Eigen::Index>(n), cols);
    for (std::size_t o = 0; o < rows; o += block)
      for (std::size_t s = 0; s < stride; ++s) {
        for (std::size_t a = 0; a < n; ++a)
          gather.row(static_cast<Eigen::Index>(a)) = cur.row(static_cast<Eigen::Index>(o + a * stride + s));
        const Eigen::MatrixXd mixed = mats[m] * gather;
        for (std::size_t a = 0; a < n; ++a)
          next.row(static_cast<Eigen::Index>(o + a * stride + s)) = mixed.row(static_cast<Eigen::Index>(a));
      }
    cur = std::move(next);
    stride = block;
  }
  return cur;
}

double reduced_mass(const ToyMoleculeSpec& s) {
  return kElectronMassPerDalton / (1.0 / s.mass_h + 1.0 / s.mass_o);
}

RadialGrid radial_grid(const ToyMoleculeSpec& s) {
  RadialGrid g;
  g.mass = reduced_mass(s);
  g.omega = s.omega / kCmPerHartree;
  g.scaling = dvr::HoScaling{g.mass, g.omega, s.r0 * kBohrPerAngstrom};
  g.transform = dvr::build_transform(dvr::gauss_quadrature(dvr::QuadratureKind::Hermite, s.n_r));
  g.nodes = dvr::physical_nodes(g.transform.quadrature, g.scaling);
  for (double r : g.nodes)
    if (!(r > 0.0)) throw ConfigError("r0", "radial grid node at r <= 0; increase r0 or omega");
  const Eigen::MatrixXd& t = g.transform.t;
  g.kinetic = t * dvr::ho_kinetic(s.n_r, g.scaling) * t.transpose();
  g.derivative = t * ho_derivative(s.n_r, g.mass, g.omega) * t.transpose();
  const double de = s.morse_de / kCmPerHartree;
  const double a = s.morse_a / kBohrPerAngstrom;
  for (double r : g.nodes) {
    const double e = 1.0 - std::exp(-a * (r - g.scaling.center));
    g.potential.push_back(de * e * e);
  }
  return g;
}

AngularGrid angular_grid(const ToyMoleculeSpec& s) {
  AngularGrid g;
  const int n = s.n_theta;
  g.transform = dvr::build_transform(dvr::gauss_quadrature(dvr::QuadratureKind::Legendre, n));
  const auto& q = g.transform.quadrature;
  g.nodes = q.nodes;
  // (1 - u^2) p_l'(u) = l (r_l p_{l-1}(u) - u p_l(u)), r_l = sqrt((2l+1)/(2l-1)).
  Eigen::MatrixXd p(n, n), dp(n, n);
  for (int k = 0; k < n; ++k) {
    const double u = q.nodes[static_cast<std::size_t>(k)];
    const auto v = dvr::orthonormal_values(dvr::QuadratureKind::Legendre, n, u);
    for (int l = 0; l < n; ++l) {
      p(k, l) = v[static_cast<std::size_t>(l)];
      dp(k, l) = l == 0 ? 0.0
                        : l * (std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0)) * v[static_cast<std::size_t>(l - 1)] -
                               u * v[static_cast<std::size_t>(l)]);
    }
  }
  Eigen::MatrixXd sfbr(n, n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double u = q.nodes[static_cast<std::size_t>(k)];
    const double w = q.weights[static_cast<std::size_t>(k)];
    sfbr.row(k) = std::sqrt(w) * dp.row(k) / std::sqrt(1.0 - u * u);
    a += w * (dp.row(k).transpose() * p.row(k) - p.row(k).transpose() * dp.row(k));
  }
  const Eigen::MatrixXd& t = g.transform.t;
  g.slope = sfbr * t.transpose();
  g.antisym = t * a * t.transpose();
  const double k = s.bend_k / kCmPerHartree;
  const double t0 = s.theta0_deg * M_PI / 180.0;
  for (double u : g.nodes) {
    const double d = std::acos(u) - t0;
    g.potential.push_back(0.5 * k * d * d);
  }
  return g;
}

}  // namespace detail

Eigen::MatrixXd radial_dvr(const ToyMoleculeSpec& spec) {
  spec.validate();
  const auto g = detail::radial_grid(spec);
  Eigen::MatrixXd h = g.kinetic;
  for (int i = 0; i < spec.n_r; ++i) h(i, i) += g.potential[static_cast<std::size_t>(i)];
  return h;
}

Eigen::MatrixXd bend_dvr(const ToyMoleculeSpec& spec) {
  spec.validate();
  const double mu = detail::reduced_mass(spec);
  const double r0 = spec.r0 * kBohrPerAngstrom;
  const double g0 = 1.0 / (mu * r0 * r0);
  const auto a = detail::angular_grid(spec);
  Eigen::MatrixXd h = g0 * a.slope.transpose() * a.slope;
  for (int k = 0; k < spec.n_theta; ++k) h(k, k) += a.potential[static_cast<std::size_t>(k)];
  return h;
}

namespace {

Eigen::MatrixXd kron3(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c) {
  const Eigen::Index nb = b.rows(), nc = c.rows();
  Eigen::MatrixXd bc(nb * nc, nb * nc);
  for (Eigen::Index i = 0; i < nb; ++i)
    for (Eigen::Index j = 0; j < nb; ++j) bc.block(i * nc, j * nc, nc, nc) = b(i, j) * c;
  const Eigen::Index m = bc.rows();
  Eigen::MatrixXd out(a.rows() * m, a.rows() * m);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.rows(); ++j) out.block(i * m, j * m, m, m) = a(i, j) * bc;
  return out;
}

Eigen::MatrixXd kron_list(const std::vector<Eigen::MatrixXd>& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Ones(1, 1);
  for (const auto& f : m) {
    Eigen::MatrixXd next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
    out = std::move(next);
  }
  return out;
}

// Basis functions p_0..p_{n-1} sampled on a q-point Gauss grid: t(k, j) = sqrt(w_k) p_j(x_k).
Eigen::MatrixXd sampled_basis(const dvr::Quadrature& q, int n) {
  Eigen::MatrixXd t(q.n, n);
  for (int k = 0; k < q.n; ++k) {
    const auto v = dvr::orthonormal_values(q.kind, n, q.nodes[static_cast<std::size_t>(k)]);
    const double sw = std::sqrt(q.weights[static_cast<std::size_t>(k)]);
    for (int j = 0; j < n; ++j) t(k, j) = sw * v[static_cast<std::size_t>(j)];
  }
  return t;
}

}  // namespace

Hamiltonian water_hamiltonian(const ToyMoleculeSpec& spec) {
  spec.validate();
  if (spec.kind != SystemKind::Water) throw ConfigError("system", "water_hamiltonian needs a water spec");
  if (spec.dimension() > kMaxDenseDimension)
    throw ScaleError("n_r^2 n_theta exceeds the dense limit of 4096");
  const int nr = spec.n_r, nt = spec.n_theta;
  const int qr = spec.quadrature_r ? spec.quadrature_r : nr;
  const int qt = spec.quadrature_theta ? spec.quadrature_theta : nt;

  ToyMoleculeSpec fine = spec;
  fine.n_r = qr;
  fine.n_theta = qt;
  const auto rg = detail::radial_grid(fine);
  const auto ag = detail::angular_grid(fine);
  const Eigen::MatrixXd tr = sampled_basis(rg.transform.quadrature, nr);
  const auto& qa = ag.transform.quadrature;
  const Eigen::MatrixXd ta = sampled_basis(qa, nt);

  auto radial_op = [&](auto f) {
    Eigen::VectorXd v(qr);
    for (int k = 0; k < qr; ++k) v(k) = f(rg.nodes[static_cast<std::size_t>(k)]);
    return Eigen::MatrixXd(tr.transpose() * v.asDiagonal() * tr);
  };
  auto angular_op = [&](const Eigen::MatrixXd& basis, auto f) {
    Eigen::VectorXd v(qt);
    for (int k = 0; k < qt; ++k) v(k) = f(qa.nodes[static_cast<std::size_t>(k)]);
    return Eigen::MatrixXd(basis.transpose() * v.asDiagonal() * basis);
  };

  // Slope functions sqrt(w) sqrt(1-u^2) p_l'(u) on the fine grid, first nt columns.
  Eigen::MatrixXd slope(qt, nt), antisym = Eigen::MatrixXd::Zero(nt, nt);
  for (int k = 0; k < qt; ++k) {
    const double u = qa.nodes[static_cast<std::size_t>(k)];
    const auto v = dvr::orthonormal_values(dvr::QuadratureKind::Legendre, nt, u);
    const double w = qa.weights[static_cast<std::size_t>(k)];
    Eigen::RowVectorXd p(nt), dp(nt);
    for (int l = 0; l < nt; ++l) {
      p(l) = v[static_cast<std::size_t>(l)];
      dp(l) = l == 0 ? 0.0
                     : l * (std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0)) * v[static_cast<std::size_t>(l - 1)] -
                            u * v[static_cast<std::size_t>(l)]);
    }
    slope.row(k) = std::sqrt(w) * dp / std::sqrt(1.0 - u * u);
    antisym += w * (dp.transpose() * p - p.transpose() * dp);
  }

  const double mu = rg.mass;  // mu1 = mu2 for water
  const double mu12 = spec.mass_o * kElectronMassPerDalton;
  const double r0 = rg.scaling.center;
  const Eigen::MatrixXd ir = Eigen::MatrixXd::Identity(nr, nr);
  const Eigen::MatrixXd it = Eigen::MatrixXd::Identity(nt, nt);
  const dvr::HoScaling sc{rg.mass, rg.omega, r0};
  const Eigen::MatrixXd kin = dvr::ho_kinetic(nr, sc);
  const Eigen::MatrixXd der = ho_derivative(nr, rg.mass, rg.omega);
  const Eigen::MatrixXd ptp = angular_op(slope, [](double) { return 1.0; });

  Eigen::MatrixXd h = kron3(kin, ir, it) + kron3(ir, kin, it);
  if (spec.decoupled) {
    h += (1.0 / (mu * r0 * r0)) * kron3(ir, ir, ptp);
  } else {
    const Eigen::MatrixXd inv_r2 = radial_op([&](double r) { return 1.0 / (2.0 * mu * r * r); });
    const Eigen::MatrixXd inv_r = radial_op([](double r) { return 1.0 / r; });
    const Eigen::MatrixXd cos_ptp = angular_op(slope, [](double u) { return u; });
    const Eigen::MatrixXd cos_t = angular_op(ta, [](double u) { return u; });
    h += kron3(inv_r2, ir, ptp) + kron3(ir, inv_r2, ptp) - (1.0 / mu12) * kron3(inv_r, inv_r, cos_ptp);
    h -= (1.0 / mu12) * kron3(der, der, cos_t);
    const double pre = 1.0 / (2.0 * mu12);
    h += pre * (kron3(der, inv_r, antisym) + kron3(inv_r, der, antisym));
  }

  const double de = spec.morse_de / kCmPerHartree;
  const double a = spec.morse_a / kBohrPerAngstrom;
  const Eigen::MatrixXd morse = radial_op([&](double r) {
    const double e = 1.0 - std::exp(-a * (r - r0));
    return de * e * e;
  });
  const double kb = spec.bend_k / kCmPerHartree;
  const double t0 = spec.theta0_deg * M_PI / 180.0;
  const Eigen::MatrixXd bend = angular_op(ta, [&](double u) {
    const double d = std::acos(u) - t0;
    return 0.5 * kb * d * d;
  });
  h += kron3(morse, ir, it) + kron3(ir, morse, it) + kron3(ir, ir, bend);
  const double c12 = spec.stretch_coupling / kCmPerHartree / (kBohrPerAngstrom * kBohrPerAngstrom);
  if (c12 != 0.0) {
    const Eigen::MatrixXd dr = radial_op([&](double r) { return r - r0; });
    h += c12 * kron3(dr, dr, it);
  }

  Hamiltonian out;
  out.dims = spec.dims();
  out.fbr = 0.5 * (h + h.transpose());
  const auto trn = dvr::build_transform(dvr::gauss_quadrature(dvr::QuadratureKind::Hermite, nr));
  const auto tan = dvr::build_transform(dvr::gauss_quadrature(dvr::QuadratureKind::Legendre, nt));
  const std::vector<Eigen::MatrixXd> t = {trn.t, trn.t, tan.t};
  const Eigen::MatrixXd half = detail::mode_product(out.fbr, out.dims, t);
  out.dvr = detail::mode_product(half.transpose(), out.dims, t);
  out.dvr = 0.5 * (out.dvr + out.dvr.transpose());
  out.radial_nodes = dvr::physical_nodes(trn.quadrature, sc);
  out.angular_nodes = tan.quadrature.nodes;
  return out;
}

Hamiltonian modes_hamiltonian(const ToyMoleculeSpec& spec) {
  spec.validate();
  if (spec.kind != SystemKind::Modes) throw ConfigError("system", "modes_hamiltonian needs a modes spec");
  if (spec.dimension() > kMaxDenseDimension) throw ScaleError("mode product exceeds the dense limit of 4096");
  const auto dims = spec.dims();
  const std::size_t d = dims.size();
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  std::vector<Eigen::MatrixXd> kin, tt;
  std::vector<std::vector<double>> q(d);
  std::vector<double> mass(d), omega(d);
  for (std::size_t i = 0; i < d; ++i) {
    mass[i] = spec.modes[i].mass_da * kElectronMassPerDalton;
    omega[i] = spec.modes[i].omega_cm / kCmPerHartree;
    const dvr::HoScaling sc{mass[i], omega[i], 0.0};
    const auto t = dvr::build_transform(dvr::gauss_quadrature(dvr::QuadratureKind::Hermite, dims[i]));
    kin.push_back(t.t * dvr::ho_kinetic(dims[i], sc) * t.t.transpose());
    tt.push_back(t.t.transpose());
    q[i] = t.quadrature.nodes;  // oscillator units
  }
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t i = d - 1; i-- > 0;) stride[i] = stride[i + 1] * static_cast<std::size_t>(dims[i + 1]);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const double c = spec.mode_coupling / kCmPerHartree;
  for (Eigen::Index row = 0; row < dim; ++row) {
    const auto r = static_cast<std::size_t>(row);
    double v = 0.0;
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t a = (r / stride[i]) % static_cast<std::size_t>(dims[i]);
      x[i] = q[i][a];
      v += 0.5 * omega[i] * x[i] * x[i];
      for (int b = 0; b < dims[i]; ++b) {
        const auto col = static_cast<Eigen::Index>(r - a * stride[i] + static_cast<std::size_t>(b) * stride[i]);
        h(row, col) += kin[i](static_cast<Eigen::Index>(a), b);
      }
    }
    for (std::size_t i = 0; i + 1 < d; ++i) v += c * x[i] * x[i + 1];
    if (spec.quadrature_r == 0) h(row, row) += v;
  }
  if (spec.quadrature_r > 0) {
    // Potential integrated on a finer grid, then rotated into the DVR.
    const auto fine = dvr::gauss_quadrature(dvr::QuadratureKind::Hermite, spec.quadrature_r);
    std::vector<Eigen::MatrixXd> x1(d), x2(d);
    for (std::size_t i = 0; i < d; ++i) {
      const Eigen::MatrixXd t = sampled_basis(fine, dims[i]);
      const Eigen::VectorXd nodes = Eigen::Map<const Eigen::VectorXd>(fine.nodes.data(), fine.n);
      x1[i] = t.transpose() * nodes.asDiagonal() * t;
      x2[i] = t.transpose() * nodes.array().square().matrix().asDiagonal() * t;
    }
    auto term = [&](std::size_t i, const Eigen::MatrixXd& a, const Eigen::MatrixXd* b) {
      std::vector<Eigen::MatrixXd> m;
      for (std::size_t k = 0; k < d; ++k) m.push_back(Eigen::MatrixXd::Identity(dims[k], dims[k]));
      m[i] = a;
      if (b) m[i + 1] = *b;
      return kron_list(m);
    };
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < d; ++i) v += 0.5 * omega[i] * term(i, x2[i], nullptr);
    for (std::size_t i = 0; i + 1 < d; ++i) v += c * term(i, x1[i], &x1[i + 1]);
    std::vector<Eigen::MatrixXd> tn;
    for (const auto& m : tt) tn.push_back(m.transpose());
    const Eigen::MatrixXd half = detail::mode_product(v, dims, tn);
    h += detail::mode_product(half.transpose(), dims, tn);
  }
  Hamiltonian out;
  out.dims = dims;
  out.dvr = 0.5 * (h + h.transpose());
  const Eigen::MatrixXd half = detail::mode_product(out.dvr, dims, tt);
  out.fbr = detail::mode_product(half.transpose(), dims, tt);
  out.fbr = 0.5 * (out.fbr + out.fbr.transpose());
  return out;
}

Hamiltonian build_hamiltonian(const ToyMoleculeSpec& spec) {
  return spec.kind == SystemKind::Water ? water_hamiltonian(spec) : modes_hamiltonian(spec);
}

}  // namespace whqrom::molham
