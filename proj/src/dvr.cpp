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


#include "whqrom/dvr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "whqrom/baseline.hpp"
#include "whqrom/error.hpp"
#include "whqrom/qrom.hpp"
#include "whqrom/wht.hpp"

namespace whqrom::dvr {

QuadratureKind parse_kind(const std::string& name) {
  if (name == "hermite") return QuadratureKind::Hermite;
  if (name == "legendre") return QuadratureKind::Legendre;
  throw ConfigError("kind", "unsupported quadrature '" + name + "'");
}

std::string kind_name(QuadratureKind kind) {
  return kind == QuadratureKind::Hermite ? "hermite" : "legendre";
}

double zeroth_moment(QuadratureKind kind) {
  return kind == QuadratureKind::Hermite ? std::sqrt(M_PI) : 2.0;
}

std::vector<double> jacobi_offdiagonal(QuadratureKind kind, int n) {
  std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    const double jj = j;
    a[static_cast<std::size_t>(j)] = kind == QuadratureKind::Hermite
                                         ? std::sqrt(jj / 2.0)
                                         : jj / std::sqrt(4.0 * jj * jj - 1.0);
  }
  return a;
}

std::vector<double> orthonormal_values(QuadratureKind kind, int count, double x) {
  const auto a = jacobi_offdiagonal(kind, count);
  std::vector<double> p(static_cast<std::size_t>(std::max(count, 0)));
  if (count == 0) return p;
  p[0] = 1.0 / std::sqrt(zeroth_moment(kind));
  if (count > 1) p[1] = x * p[0] / a[1];
  for (int j = 1; j + 1 < count; ++j) {
    const auto u = static_cast<std::size_t>(j);
    p[u + 1] = (x * p[u] - a[u] * p[u - 1]) / a[u + 1];
  }
  return p;
}

double moment(QuadratureKind kind, int k) {
  if (k % 2) return 0.0;
  if (kind == QuadratureKind::Legendre) return 2.0 / (k + 1);
  return std::tgamma((k + 1) / 2.0);
}

namespace {

// p_n(x) and its derivative for Newton refinement.
std::pair<double, double> top_value(const std::vector<double>& a, double mu0, int n, double x) {
  double p0 = 1.0 / std::sqrt(mu0), d0 = 0.0;
  double p1 = x * p0 / a[1], d1 = p0 / a[1];
  if (n == 1) return {p1, d1};
  for (int j = 1; j < n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    const double p2 = (x * p1 - a[u] * p0) / a[u + 1];
    const double d2 = (p1 + x * d1 - a[u] * d0) / a[u + 1];
    p0 = p1, d0 = d1, p1 = p2, d1 = d2;
  }
  return {p1, d1};
}

}  // namespace

Quadrature gauss_quadrature(QuadratureKind kind, int n) {
  if (n < 1) throw RangeError("quadrature needs n >= 1");
  if (n > 4096) throw ScaleError("quadrature order too large");
  if (kind == QuadratureKind::Hermite && n > kMaxHermiteOrder)
    throw ScaleError("Hermite weights underflow double precision beyond order 320");
  const auto a = jacobi_offdiagonal(kind, n);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int j = 1; j < n; ++j) sub[j - 1] = a[static_cast<std::size_t>(j)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("Jacobi eigenproblem failed");
  std::vector<double> x(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(x.begin(), x.end());
  const double mu0 = zeroth_moment(kind);
  for (double& xi : x) {
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = top_value(a, mu0, n, xi);
      if (dp == 0.0) break;
      xi -= p / dp;
    }
  }
  // Both weight functions are even.
  for (int k = 0; k < n / 2; ++k) {
    const auto lo = static_cast<std::size_t>(k), hi = static_cast<std::size_t>(n - 1 - k);
    const double m = 0.5 * (x[hi] - x[lo]);
    x[lo] = -m;
    x[hi] = m;
  }
  if (n % 2) x[static_cast<std::size_t>(n / 2)] = 0.0;
  std::vector<double> w(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    double s = 0.0;
    for (double v : orthonormal_values(kind, n, x[k])) s += v * v;
    w[k] = 1.0 / s;
  }
  for (std::size_t k = 1; k < x.size(); ++k)
    if (!(x[k] > x[k - 1])) throw NumericalError("quadrature nodes not strictly increasing");
  return {kind, n, std::move(x), std::move(w)};
}

DvrTransform build_transform(const Quadrature& q) {
  const int n = q.n;
  Eigen::MatrixXd t(n, n);
  for (int k = 0; k < n; ++k) {
    const auto p = orthonormal_values(q.kind, n, q.nodes[static_cast<std::size_t>(k)]);
    const double s = std::sqrt(q.weights[static_cast<std::size_t>(k)]);
    for (int j = 0; j < n; ++j) t(k, j) = s * p[static_cast<std::size_t>(j)];
  }
  std::vector<double> norm(static_cast<std::size_t>(n));
  double logf = 0.0;
  for (int j = 0; j < n; ++j) {
    if (q.kind == QuadratureKind::Hermite) {
      if (j > 0) logf += std::log(static_cast<double>(j));
      norm[static_cast<std::size_t>(j)] =
          std::exp(-0.5 * (0.5 * std::log(M_PI) + j * std::log(2.0) + logf));
    } else {
      norm[static_cast<std::size_t>(j)] = std::sqrt((2.0 * j + 1.0) / 2.0);
    }
  }
  return {q, std::move(t), std::move(norm)};
}

double unitarity_deviation(const DvrTransform& t) {
  const Eigen::MatrixXd e = t.t.transpose() * t.t - Eigen::MatrixXd::Identity(t.n(), t.n());
  return e.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd fbr_potential(const DvrTransform& t, std::span<const double> v) {
  if (static_cast<int>(v.size()) != t.n()) throw ShapeError("potential length does not match grid");
  Eigen::VectorXd d(t.n());
  for (int k = 0; k < t.n(); ++k) d[k] = v[static_cast<std::size_t>(k)];
  Eigen::MatrixXd m = t.t.transpose() * d.asDiagonal() * t.t;
  return 0.5 * (m + m.transpose());
}

double HoScaling::length() const {
  if (!(mass > 0.0) || !(omega > 0.0)) throw RangeError("oscillator mass and frequency must be positive");
  return 1.0 / std::sqrt(mass * omega);
}

std::vector<double> physical_nodes(const Quadrature& q, const HoScaling& s) {
  if (q.kind != QuadratureKind::Hermite) throw ConfigError("kind", "oscillator scaling needs a Hermite grid");
  std::vector<double> r(q.nodes.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = s.to_physical(q.nodes[k]);
  return r;
}

Eigen::MatrixXd ho_kinetic(int n, const HoScaling& s) {
  const double l = s.length();
  const double scale = 1.0 / (2.0 * s.mass * l * l);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    k(j, j) = 0.5 * (2.0 * j + 1.0) * scale;
    if (j + 2 < n) {
      const double off = -0.5 * std::sqrt((j + 1.0) * (j + 2.0)) * scale;
      k(j, j + 2) = off;
      k(j + 2, j) = off;
    }
  }
  return k;
}

RecursionCoeffs recursion_coeffs(QuadratureKind kind, int n, int segment) {
  if (n < 2) throw RangeError("recursion needs n >= 2");
  if (segment < 2 || !std::has_single_bit(static_cast<unsigned>(segment)) || n % segment)
    throw ShapeError("segment size must be a power of two >= 2 dividing n");
  const auto a = jacobi_offdiagonal(kind, n);
  RecursionCoeffs r;
  r.n = n;
  r.segment = segment;
  const auto un = static_cast<std::size_t>(n);
  r.a.assign(un, 0.0);
  r.b.assign(un, 0.0);
  r.c.assign(un, 0.0);
  for (int q = 0; q + 2 < n; ++q) {
    const auto u = static_cast<std::size_t>(q);
    r.a[u] = 0.0;
    r.b[u] = 1.0 / a[u + 2];
    r.c[u] = -a[u + 1] / a[u + 2];
  }
  r.gamma.assign(un, 1.0);
  r.a_scaled.assign(un, 0.0);
  r.b_scaled.assign(un, 0.0);
  const int half = segment / 2;
  for (int w = 0; w < n / segment; ++w) {
    const int mid = w * segment + half;
    for (int k = 1; k < half; ++k) {
      const auto q = static_cast<std::size_t>(mid + k);
      r.gamma[q] = r.gamma[q - 2] / r.c[q - 2];
      const double s = r.gamma[q] / r.gamma[q - 1];
      r.a_scaled[q] = s * r.a[q - 2];
      r.b_scaled[q] = s * r.b[q - 2];
    }
    for (int k = 1; k < half; ++k) {
      const auto q = static_cast<std::size_t>(mid - 1 - k);
      r.gamma[q] = r.gamma[q + 2] * r.c[q];
      const double s = -r.gamma[q + 2] / r.gamma[q + 1];
      r.a_scaled[q] = s * r.a[q];
      r.b_scaled[q] = s * r.b[q];
    }
  }
  return r;
}

Eigen::MatrixXd midpoint_columns(const DvrTransform& t, int segment) {
  const int n = t.n();
  if (segment < 2 || n % segment) throw ShapeError("segment size must divide n");
  const int segs = n / segment;
  Eigen::MatrixXd m(n, 2 * segs);
  for (int w = 0; w < segs; ++w) {
    const int mid = w * segment + segment / 2;
    m.col(2 * w) = t.t.col(mid - 1);
    m.col(2 * w + 1) = t.t.col(mid);
  }
  return m;
}

Eigen::MatrixXd recursion_columns(const RecursionCoeffs& r, std::span<const double> nodes,
                                  const Eigen::MatrixXd& init) {
  const int n = r.n;
  const int f = r.segment;
  const int segs = n / f;
  if (static_cast<int>(nodes.size()) != n || init.rows() != n || init.cols() != 2 * segs)
    throw ShapeError("recursion: initial columns do not match the segmentation");
  Eigen::MatrixXd ts(n, n);
  const int half = f / 2;
  for (int w = 0; w < segs; ++w) {
    const int mid = w * f + half;
    ts.col(mid - 1) = init.col(2 * w);
    ts.col(mid) = init.col(2 * w + 1);
    for (int k = 1; k < half; ++k) {
      const int up = mid + k, dn = mid - 1 - k;
      const auto uu = static_cast<std::size_t>(up), ud = static_cast<std::size_t>(dn);
      for (int p = 0; p < n; ++p) {
        const double x = nodes[static_cast<std::size_t>(p)];
        ts(p, up) = (r.a_scaled[uu] + r.b_scaled[uu] * x) * ts(p, up - 1) + ts(p, up - 2);
        ts(p, dn) = (r.a_scaled[ud] + r.b_scaled[ud] * x) * ts(p, dn + 1) + ts(p, dn + 2);
      }
    }
  }
  for (int q = 0; q < n; ++q) ts.col(q) /= r.gamma[static_cast<std::size_t>(q)];
  return ts;
}

QromCoster selectswap_coster() {
  return [](std::uint64_t entries, int digits) {
    if (entries == 0) return CostReport{};
    std::uint64_t best_l = 1;
    auto tof = [&](std::uint64_t l) {
      return (entries + l - 1) / l + 2 * static_cast<std::uint64_t>(digits) * l;
    };
    std::uint64_t best = tof(1);
    for (std::uint64_t l = 2; l <= entries && 2 * static_cast<std::uint64_t>(digits) * l <= best; ++l) {
      if (tof(l) < best) best = tof(l), best_l = l;
    }
    CostReport r;
    r.toffoliCount = best;
    r.tCount = 4 * best;
    const auto eta = static_cast<std::uint64_t>(std::bit_width(entries - 1));
    r.qubitCount = 2 * eta + best_l * static_cast<std::uint64_t>(digits);
    r.tDepth = best;
    r.quantumVolume = r.tCount * r.qubitCount;
    return r;
  };
}

QromCoster wh_transform_coster(QuadratureKind kind, double epsilon) {
  return [kind, epsilon](std::uint64_t entries, int digits) {
    const auto n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(entries))));
    if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) != entries)
      throw ShapeError("transform table size is not a square");
    if (n > 128) throw ScaleError("transform table too large for synthesis");
    const DvrTransform t = build_transform(gauss_quadrature(kind, n));
    const int half_bits = std::bit_width(static_cast<unsigned>(n - 1));
    const std::size_t side = std::size_t{1} << half_bits;
    const double hi = 1.0 - std::ldexp(1.0, 1 - digits);
    std::vector<double> theta(side * side, 0.0);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        theta[static_cast<std::size_t>(p) * side + static_cast<std::size_t>(q)] =
            std::clamp(t.t(p, q), -1.0, hi);
    const auto f = wht::quantize(theta, digits);
    const auto tr = wht::minimal_truncation(f, epsilon);
    return qrom::cost(qrom::pair_cancel(qrom::synthesize(tr), tr));
  };
}

std::uint64_t amplification_rounds(int n) {
  return static_cast<std::uint64_t>(std::floor(M_PI * std::sqrt(static_cast<double>(n)) / 4.0));
}

CostReport dvr_oracle_cost(std::span<const int> n, int digits, const QromCoster& coster) {
  CostReport total;
  for (int ni : n) {
    if (ni < 1) throw RangeError("basis size must be positive");
    const std::uint64_t rounds = 2 * amplification_rounds(ni);
    const CostReport c = coster(static_cast<std::uint64_t>(ni) * static_cast<std::uint64_t>(ni), digits);
    total.tCount += rounds * c.tCount;
    total.toffoliCount += rounds * c.toffoliCount;
    total.cnotCount += rounds * c.cnotCount;
    total.cliffordCount += rounds * c.cliffordCount;
    total.tDepth += rounds * c.tDepth;
    total.qubitCount = std::max(total.qubitCount, c.qubitCount);
  }
  total.quantumVolume = total.tCount * total.qubitCount;
  return total;
}

double init_cost_selectswap(double n, double m, double segment) {
  return 2.0 * n * std::sqrt(m) / std::sqrt(segment) + std::sqrt(n * m);
}

double init_cost_select(double n, double segment) { return n * n / segment + n; }

std::string to_csv(const Eigen::MatrixXd& m) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) s << (j ? "," : "") << m(i, j);
    s << '\n';
  }
  return s.str();
}

std::string to_csv(const Quadrature& q) {
  std::ostringstream s;
  s << std::setprecision(17) << "node,weight\n";
  for (std::size_t k = 0; k < q.nodes.size(); ++k) s << q.nodes[k] << ',' << q.weights[k] << '\n';
  return s.str();
}

}  // namespace whqrom::dvr
