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


#include "whqrom/blockenc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "whqrom/error.hpp"
#include "whqrom/sample_io.hpp"

namespace whqrom::blockenc {

namespace {

int ceil_log2(int v) { return v <= 1 ? 0 : std::bit_width(static_cast<unsigned>(v - 1)); }

void check_dim(long long dim) {
  if (dim > kMaxDenseDim) throw ScaleError("dense block encoding of dimension " +
                                           std::to_string(dim) + " exceeds the limit");
}

double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Rows of m permuted: out.row(perm[i]) = m.row(i).
Eigen::MatrixXd permute_rows(const Eigen::MatrixXd& m, const std::vector<int>& perm) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.row(perm[static_cast<std::size_t>(i)]) = m.row(i);
  return out;
}

Eigen::MatrixXd permutation_matrix(const std::vector<int>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1.0;
  return p;
}

// U acting on the system and existing ancillas, extended by more significant idle ancillas.
Eigen::MatrixXd pad_ancilla(const BlockEncodingResult& r, int ancilla_dim) {
  const int blocks = ancilla_dim / r.ancilla_dim;
  const Eigen::Index d = r.unitary.rows();
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(d * blocks, d * blocks);
  for (int b = 0; b < blocks; ++b) u.block(b * d, b * d, d, d) = r.unitary;
  return u;
}

int common_ancilla_dim(int a, int b) { return std::max(a, b); }

}  // namespace

int BlockEncodingResult::system_qubits() const { return ceil_log2(system_dim); }
int BlockEncodingResult::ancilla_qubits() const { return ceil_log2(ancilla_dim); }

Eigen::MatrixXd BlockEncodingResult::sub_block() const {
  return unitary.topLeftCorner(system_dim, system_dim);
}

void verify(BlockEncodingResult& r) {
  const Eigen::Index d = r.unitary.rows();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  g.selfadjointView<Eigen::Lower>().rankUpdate(r.unitary.transpose());
  double dev = 0.0;
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index i = c; i < d; ++i) dev = std::max(dev, std::abs(g(i, c) - (i == c ? 1.0 : 0.0)));
  r.unitarity_deviation = dev;
  r.residual = (r.zeta * r.sub_block() - r.target).cwiseAbs().maxCoeff();
}

BlockEncodingResult make_result(Eigen::MatrixXd unitary, Eigen::MatrixXd target, int system_dim,
                                double zeta) {
  if (unitary.rows() != unitary.cols() || unitary.rows() % system_dim)
    throw ShapeError("unitary size is not a multiple of the system dimension");
  if (target.rows() != system_dim || target.cols() != system_dim)
    throw ShapeError("target does not match the system dimension");
  BlockEncodingResult r;
  r.ancilla_dim = static_cast<int>(unitary.rows() / system_dim);
  r.unitary = std::move(unitary);
  r.target = std::move(target);
  r.system_dim = system_dim;
  r.zeta = zeta;
  verify(r);
  return r;
}

double max_norm(const Eigen::MatrixXd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

double spectral_radius(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double SparseOracle::max_norm() const { return blockenc::max_norm(a); }

void SparseOracle::validate() const {
  if (a.rows() != a.cols()) throw ShapeError("sparse operator must be square");
  if (rho < 1 || rho > n()) throw ConfigError("rho", "must lie in [1, n]");
  for (int j = 0; j < n(); ++j) {
    std::vector<char> seen(static_cast<std::size_t>(n()), 0);
    for (int l = 0; l < rho; ++l) {
      const int k = f(j, l);
      if (k < 0 || k >= n()) throw ConfigError("f", "column index out of range in row " + std::to_string(j));
      if (seen[static_cast<std::size_t>(k)]) throw ConfigError("f", "not injective in row " + std::to_string(j));
      seen[static_cast<std::size_t>(k)] = 1;
    }
    for (int k = 0; k < n(); ++k)
      if ((a(j, k) != 0.0 || a(k, j) != 0.0) && !seen[static_cast<std::size_t>(k)])
        throw ConfigError("f", "row " + std::to_string(j) + " misses nonzero column " + std::to_string(k));
  }
}

std::vector<int> SparseOracle::row_permutation(int j) const {
  std::vector<int> perm;
  std::vector<char> used(static_cast<std::size_t>(n()), 0);
  for (int l = 0; l < rho; ++l) {
    perm.push_back(f(j, l));
    used[static_cast<std::size_t>(perm.back())] = 1;
  }
  for (int k = 0; k < n(); ++k)
    if (!used[static_cast<std::size_t>(k)]) perm.push_back(k);
  return perm;
}

SparseOracle from_dense(const Eigen::MatrixXd& a, int rho) {
  if (a.rows() != a.cols()) throw ShapeError("sparse operator must be square");
  const int n = static_cast<int>(a.rows());
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(n));
  int need = 1;
  for (int j = 0; j < n; ++j) {
    auto& c = cols[static_cast<std::size_t>(j)];
    for (int k = 0; k < n; ++k)
      if (a(j, k) != 0.0 || a(k, j) != 0.0) c.push_back(k);
    need = std::max(need, static_cast<int>(c.size()));
  }
  if (rho == 0) rho = need;
  if (rho < need) throw ConfigError("rho", "smaller than the densest row");
  for (int j = 0; j < n; ++j) {
    auto& c = cols[static_cast<std::size_t>(j)];
    for (int k = 0; k < n && static_cast<int>(c.size()) < rho; ++k)
      if (std::find(c.begin(), c.end(), k) == c.end()) c.push_back(k);
  }
  SparseOracle o{a, rho, [cols](int j, int l) {
                   return cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
                 }};
  o.validate();
  return o;
}

ColumnFunction block_diagonal_columns(int n1) {
  return [n1](int j, int l) { return l + ((j >> n1) << n1); };
}

Eigen::MatrixXd state_preparation(const Eigen::VectorXd& state) {
  const Eigen::Index n = state.size();
  if (std::abs(state.norm() - 1.0) > 1e-12) throw RangeError("state is not normalized");
  Eigen::VectorXd v = -state;
  v[0] += 1.0;
  const double vv = v.squaredNorm();
  if (vv < 1e-30) return Eigen::MatrixXd::Identity(n, n);
  return Eigen::MatrixXd::Identity(n, n) - 2.0 * v * v.transpose() / vv;
}

Eigen::MatrixXd complete_isometry(const Eigen::MatrixXd& columns, std::span<const int> positions) {
  const Eigen::Index dim = columns.rows();
  const auto m = static_cast<Eigen::Index>(positions.size());
  if (columns.cols() != m) throw ShapeError("isometry: column count mismatch");
  const Eigen::MatrixXd gram = columns.transpose() * columns;
  if ((gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalError("isometry columns are not orthonormal");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(columns);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd u(dim, dim);
  std::vector<char> taken(static_cast<std::size_t>(dim), 0);
  for (Eigen::Index i = 0; i < m; ++i) {
    u.col(positions[static_cast<std::size_t>(i)]) = columns.col(i);
    taken[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])] = 1;
  }
  Eigen::Index next = m;
  for (Eigen::Index c = 0; c < dim; ++c)
    if (!taken[static_cast<std::size_t>(c)]) u.col(c) = q.col(next++);
  return u;
}

namespace {

struct SparseLayout {
  int n;
  // anc = flag1 * 2n + flag2 * n + reg1, full = anc * n + reg2.
  int index(int flag1, int flag2, int reg1, int reg2) const {
    return ((flag1 * 2 + flag2) * n + reg1) * n + reg2;
  }
  int dim() const { return 4 * n * n; }
};

void check_oracle(const SparseOracle& o) {
  o.validate();
  if (o.max_norm() == 0.0) throw DegenerateNormError("operator has zero max-norm");
  check_dim(4LL * o.n() * o.n());
}

}  // namespace

BlockEncodingResult dsparse_standard(const SparseOracle& o) {
  check_oracle(o);
  const int n = o.n();
  const SparseLayout lay{n};
  const double m = o.max_norm();
  const double s = 1.0 / std::sqrt(static_cast<double>(o.rho));
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(lay.dim(), n);
  Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(lay.dim(), n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < o.rho; ++l) {
      const int p = o.f(j, l);
      const double apj = o.a(p, j) / m, ajp = o.a(j, p) / m;
      psi(lay.index(0, 0, p, j), j) = s * sgn(apj) * std::sqrt(std::abs(apj));
      psi(lay.index(1, 0, p, j), j) = s * std::sqrt(1.0 - std::abs(apj));
      chi(lay.index(0, 0, j, p), j) = s * std::sqrt(std::abs(ajp));
      chi(lay.index(0, 1, j, p), j) = s * std::sqrt(1.0 - std::abs(ajp));
    }
  }
  std::vector<int> inputs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) inputs[static_cast<std::size_t>(j)] = j;
  const Eigen::MatrixXd t1 = complete_isometry(psi, inputs);
  const Eigen::MatrixXd t2 = complete_isometry(chi, inputs);
  return make_result(t2.transpose() * t1, o.a, n, o.rho * m);
}

BlockEncodingResult dsparse_fused(const SparseOracle& o) {
  check_oracle(o);
  const int n = o.n();
  const SparseLayout lay{n};
  const int dim = lay.dim();
  const double m = o.max_norm();

  Eigen::VectorXd uniform = Eigen::VectorXd::Zero(n);
  uniform.head(o.rho).setConstant(1.0 / std::sqrt(static_cast<double>(o.rho)));
  const Eigen::MatrixXd prep1 = state_preparation(uniform);
  Eigen::MatrixXd prep = Eigen::MatrixXd::Zero(dim, dim);
  for (int f1 = 0; f1 < 2; ++f1)
    for (int f2 = 0; f2 < 2; ++f2)
      for (int r1 = 0; r1 < n; ++r1)
        for (int r1p = 0; r1p < n; ++r1p)
          for (int r2 = 0; r2 < n; ++r2)
            prep(lay.index(f1, f2, r1, r2), lay.index(f1, f2, r1p, r2)) = prep1(r1, r1p);

  std::vector<int> of(static_cast<std::size_t>(dim)), swap(static_cast<std::size_t>(dim));
  for (int r2 = 0; r2 < n; ++r2) {
    const auto perm = o.row_permutation(r2);
    for (int f1 = 0; f1 < 2; ++f1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int r1 = 0; r1 < n; ++r1) {
          of[static_cast<std::size_t>(lay.index(f1, f2, r1, r2))] =
              lay.index(f1, f2, perm[static_cast<std::size_t>(r1)], r2);
          swap[static_cast<std::size_t>(lay.index(f1, f2, r1, r2))] = lay.index(f1, f2, r2, r1);
        }
  }

  // Rotation on one flag by the entry A(reg1, reg2).
  auto rotate = [&](const Eigen::MatrixXd& in, int which) {
    Eigen::MatrixXd out = in;
    for (int r1 = 0; r1 < n; ++r1)
      for (int r2 = 0; r2 < n; ++r2) {
        const double v = o.a(r1, r2) / m;
        const double c = (which == 0 ? sgn(v) : 1.0) * std::sqrt(std::abs(v));
        const double s = std::sqrt(1.0 - std::abs(v));
        for (int other = 0; other < 2; ++other) {
          const int i0 = which == 0 ? lay.index(0, other, r1, r2) : lay.index(other, 0, r1, r2);
          const int i1 = which == 0 ? lay.index(1, other, r1, r2) : lay.index(other, 1, r1, r2);
          out.row(i0) = c * in.row(i0) - s * in.row(i1);
          out.row(i1) = s * in.row(i0) + c * in.row(i1);
        }
      }
    return out;
  };

  const Eigen::MatrixXd base = permute_rows(prep, of);
  const Eigen::MatrixXd w1 = rotate(base, 0);
  const Eigen::MatrixXd w2 = rotate(permute_rows(base, swap), 1);
  return make_result(w2.transpose() * w1, o.a, n, o.rho * m);
}

BlockEncodingResult diagonal_fused(std::span<const double> diagonal) {
  const int n = static_cast<int>(diagonal.size());
  if (n == 0) throw ShapeError("empty diagonal");
  check_dim(2LL * n);
  double m = 0.0;
  for (double v : diagonal) m = std::max(m, std::abs(v));
  if (m == 0.0) throw DegenerateNormError("operator has zero max-norm");
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double c = diagonal[static_cast<std::size_t>(j)] / m;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    u(j, j) = c;
    u(j, n + j) = -s;
    u(n + j, j) = s;
    u(n + j, n + j) = c;
    target(j, j) = diagonal[static_cast<std::size_t>(j)];
  }
  return make_result(std::move(u), std::move(target), n, m);
}

RampLcu ramp_lcu(int digits) {
  if (digits < 1 || digits > 16) throw RangeError("ramp LCU digits out of range");
  const int dim = 1 << digits;
  RampLcu r;
  r.weights.push_back(0.5 * (dim - 1));
  r.diagonals.push_back(Eigen::VectorXd::Ones(dim));
  for (int a = 1; a <= digits; ++a) {
    r.weights.push_back(std::ldexp(1.0, digits - a - 1));
    Eigen::VectorXd z(dim);
    for (int v = 0; v < dim; ++v) z[v] = ((v >> (digits - a)) & 1) ? 1.0 : -1.0;
    r.diagonals.push_back(z);
  }
  return r;
}

qrom::QromCircuit diagonal_oracle(std::span<const std::uint64_t> values, int digits) {
  std::vector<std::int64_t> f(values.size());
  const std::uint64_t top = std::uint64_t{1} << digits;
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (values[x] >= top) throw RangeError("diagonal value exceeds 2^d - 1");
    const auto v = static_cast<std::int64_t>(values[x]);
    f[x] = values[x] >= top / 2 ? v - static_cast<std::int64_t>(top) : v;
  }
  const int eta = std::countr_zero(values.size());
  const wht::SampledFunction fn(eta, digits, std::move(f));
  return qrom::synthesize(wht::truncate(wht::forward(fn), values.size()));
}

BlockEncodingResult diag_no_rotation(std::span<const std::uint64_t> values, int digits,
                                     const qrom::QromCircuit& oracle) {
  const int n = static_cast<int>(values.size());
  if (n == 0 || !std::has_single_bit(static_cast<unsigned>(n))) throw ShapeError("diagonal length must be a power of two");
  const int eta = std::countr_zero(static_cast<unsigned>(n));
  if (oracle.eta() != eta || oracle.digits() != digits) throw ShapeError("oracle does not match the diagonal");
  const std::uint64_t top = std::uint64_t{1} << digits;
  for (auto v : values)
    if (v >= top) throw RangeError("diagonal value exceeds 2^d - 1");
  const RampLcu lcu = ramp_lcu(digits);
  const int terms = static_cast<int>(lcu.weights.size());
  const int sel = 1 << ceil_log2(terms);
  const int pay = static_cast<int>(top);
  check_dim(static_cast<long long>(sel) * pay * n);
  const int dim = sel * pay * n;
  const double zeta = static_cast<double>(top - 1);

  // O_D on (payload, x): the top d payload bits of the circuit output.
  std::vector<int> load(static_cast<std::size_t>(dim));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < pay; ++y) {
      const std::uint64_t out =
          qrom::simulate(oracle, static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y) << eta) >> eta;
      for (int l = 0; l < sel; ++l)
        load[static_cast<std::size_t>((l * pay + y) * n + x)] =
            static_cast<int>((l * pay + static_cast<int>(out & (top - 1))) * n + x);
    }

  Eigen::VectorXd g = Eigen::VectorXd::Zero(sel);
  for (int k = 0; k < terms; ++k) g[k] = std::sqrt(lcu.weights[static_cast<std::size_t>(k)] / zeta);
  const Eigen::MatrixXd prep = state_preparation(g);
  Eigen::MatrixXd mid = Eigen::MatrixXd::Zero(dim, dim);
  for (int y = 0; y < pay; ++y) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(sel, sel);
    for (int l = 0; l < sel; ++l)
      for (int lp = 0; lp < sel; ++lp) {
        double s = 0.0;
        for (int k = 0; k < sel; ++k) {
          const double d = k < terms ? lcu.diagonals[static_cast<std::size_t>(k)][y] : 1.0;
          s += prep(k, l) * d * prep(k, lp);
        }
        block(l, lp) = s;
      }
    for (int x = 0; x < n; ++x)
      for (int l = 0; l < sel; ++l)
        for (int lp = 0; lp < sel; ++lp) mid((l * pay + y) * n + x, (lp * pay + y) * n + x) = block(l, lp);
  }
  const Eigen::MatrixXd p = permutation_matrix(load);
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) target(x, x) = static_cast<double>(values[static_cast<std::size_t>(x)]);
  return make_result(p.transpose() * mid * p, std::move(target), n, zeta);
}

BlockEncodingResult lcu_sum(std::span<const BlockEncodingResult> parts) {
  if (parts.empty()) throw ShapeError("lcu_sum needs at least one part");
  const int n = parts[0].system_dim;
  int anc = 1;
  double zeta = 0.0;
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : parts) {
    if (p.system_dim != n) throw ShapeError("lcu_sum: system dimensions differ");
    if (!(p.zeta > 0.0)) throw RangeError("lcu_sum: part with non-positive zeta");
    anc = std::max(anc, 1 << p.ancilla_qubits());
    zeta += p.zeta;
    target += p.target;
  }
  const int terms = static_cast<int>(parts.size());
  const int sel = 1 << ceil_log2(terms);
  const int inner = anc * n;
  check_dim(static_cast<long long>(sel) * inner);
  std::vector<Eigen::MatrixXd> us;
  for (const auto& p : parts) {
    BlockEncodingResult q = p;
    if (q.ancilla_dim != (1 << q.ancilla_qubits())) {
      // Odd ancilla dimension: pad with idle identity states.
      const int full = (1 << q.ancilla_qubits()) * n;
      Eigen::MatrixXd u = Eigen::MatrixXd::Identity(full, full);
      u.topLeftCorner(q.unitary.rows(), q.unitary.cols()) = q.unitary;
      q.unitary = u;
      q.ancilla_dim = 1 << q.ancilla_qubits();
    }
    us.push_back(pad_ancilla(q, anc));
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(sel);
  for (int k = 0; k < terms; ++k) g[k] = std::sqrt(parts[static_cast<std::size_t>(k)].zeta / zeta);
  const Eigen::MatrixXd prep = state_preparation(g);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(inner, inner);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(sel * inner, sel * inner);
  for (int l = 0; l < sel; ++l)
    for (int lp = 0; lp < sel; ++lp) {
      auto blk = u.block(l * inner, lp * inner, inner, inner);
      for (int k = 0; k < sel; ++k) {
        const double c = prep(k, l) * prep(k, lp);
        if (c == 0.0) continue;
        blk += c * (k < terms ? us[static_cast<std::size_t>(k)] : eye);
      }
    }
  return make_result(std::move(u), std::move(target), n, zeta);
}

BlockEncodingResult product_be(const BlockEncodingResult& left, const BlockEncodingResult& right) {
  if (left.system_dim != right.system_dim) throw ShapeError("product: system dimensions differ");
  const int n = left.system_dim;
  const int anc = common_ancilla_dim(left.ancilla_dim, right.ancilla_dim);
  check_dim(2LL * anc * n);
  auto lift = [&](const BlockEncodingResult& r) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(anc * n, anc * n);
    u.topLeftCorner(r.unitary.rows(), r.unitary.cols()) = r.unitary;
    return u;
  };
  const Eigen::MatrixXd l = lift(left), r = lift(right);
  const int inner = anc * n;
  Eigen::MatrixXd lf = Eigen::MatrixXd::Zero(2 * inner, 2 * inner), rf = lf;
  lf.topLeftCorner(inner, inner) = l;
  lf.bottomRightCorner(inner, inner) = l;
  rf.topLeftCorner(inner, inner) = r;
  rf.bottomRightCorner(inner, inner) = r;
  // Flag flips whenever the shared ancilla register is not |0>.
  std::vector<int> cx(static_cast<std::size_t>(2 * inner));
  for (int flag = 0; flag < 2; ++flag)
    for (int a = 0; a < anc; ++a)
      for (int s = 0; s < n; ++s) {
        const int f2 = a == 0 ? flag : 1 - flag;
        cx[static_cast<std::size_t>((flag * anc + a) * n + s)] = (f2 * anc + a) * n + s;
      }
  return make_result(lf * permute_rows(rf, cx), left.target * right.target, n,
                     left.zeta * right.zeta);
}

Eigen::MatrixXd swap_registers(std::span<const int> dims, int i, int j) {
  const int regs = static_cast<int>(dims.size());
  if (i < 0 || j < 0 || i >= regs || j >= regs) throw RangeError("register index out of range");
  if (dims[static_cast<std::size_t>(i)] != dims[static_cast<std::size_t>(j)])
    throw ShapeError("swapped registers must have equal dimension");
  int total = 1;
  for (int d : dims) total *= d;
  std::vector<int> perm(static_cast<std::size_t>(total));
  std::vector<int> digit(static_cast<std::size_t>(regs));
  for (int idx = 0; idx < total; ++idx) {
    int rest = idx;
    for (int r = 0; r < regs; ++r) {
      digit[static_cast<std::size_t>(r)] = rest % dims[static_cast<std::size_t>(r)];
      rest /= dims[static_cast<std::size_t>(r)];
    }
    std::swap(digit[static_cast<std::size_t>(i)], digit[static_cast<std::size_t>(j)]);
    int out = 0;
    for (int r = regs - 1; r >= 0; --r) out = out * dims[static_cast<std::size_t>(r)] + digit[static_cast<std::size_t>(r)];
    perm[static_cast<std::size_t>(idx)] = out;
  }
  return permutation_matrix(perm);
}

BlockEncodingResult symmetry_swap_reduction(const BlockEncodingResult& h_eff,
                                            std::span<const int> dims, int i, int j) {
  const Eigen::MatrixXd s = swap_registers(dims, i, j);
  if (s.rows() != h_eff.system_dim) throw ShapeError("register dimensions do not match the system");
  const int n = h_eff.system_dim;
  const int inner = static_cast<int>(h_eff.unitary.rows());
  check_dim(2LL * inner);
  // HAD CSWAP (1 (+) B) CSWAP HAD, with the swap acting on the system of every ancilla block.
  std::vector<int> perm(static_cast<std::size_t>(inner));
  for (int a = 0; a < h_eff.ancilla_dim; ++a)
    for (int x = 0; x < n; ++x) {
      int y = 0;
      for (int k = 0; k < n; ++k)
        if (s(k, x) != 0.0) y = k;
      perm[static_cast<std::size_t>(a * n + x)] = a * n + y;
    }
  Eigen::MatrixXd sbs(inner, inner);
  for (int r = 0; r < inner; ++r)
    for (int c = 0; c < inner; ++c)
      sbs(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]) = h_eff.unitary(r, c);
  Eigen::MatrixXd u(2 * inner, 2 * inner);
  u.topLeftCorner(inner, inner) = 0.5 * (h_eff.unitary + sbs);
  u.bottomRightCorner(inner, inner) = u.topLeftCorner(inner, inner);
  u.topRightCorner(inner, inner) = 0.5 * (h_eff.unitary - sbs);
  u.bottomLeftCorner(inner, inner) = u.topRightCorner(inner, inner);
  const Eigen::MatrixXd target = h_eff.target + s * h_eff.target * s.transpose();
  return make_result(std::move(u), target, n, 2.0 * h_eff.zeta);
}

BlockEncodingResult symmetry_swap_reduction(const BlockEncodingResult& h_eff,
                                            std::span<const int> dims, int i, int j,
                                            const Eigen::MatrixXd& full) {
  const Eigen::MatrixXd s = swap_registers(dims, i, j);
  if (full.rows() != s.rows() || full.cols() != s.cols()) throw ShapeError("operator does not match registers");
  const Eigen::MatrixXd sum = h_eff.target + s * h_eff.target * s.transpose();
  const double err = (sum - full).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw SymmetryError("operator is not H_eff + SWAP H_eff SWAP (deviation " +
                                      std::to_string(err) + ")");
  BlockEncodingResult r = symmetry_swap_reduction(h_eff, dims, i, j);
  r.target = full;
  verify(r);
  return r;
}

SumTensorIndex of_sum_tensor(int na, int nb, int nc) {
  if (na < 1 || nb < 1 || nc < 1) throw RangeError("tensor dimensions must be positive");
  return {na, nb, nc};
}

int SumTensorIndex::first(int a, int mu) const {
  if (mu < 0 || mu >= rho()) throw RangeError("mu out of range");
  if (mu < na) return flat(mu, 0, 0);
  if (mu < na + nb - 1) return flat(a, mu - na + 1, 0);
  return flat(a, 0, mu - na - nb + 2);
}

int SumTensorIndex::operator()(int a, int b, int c, int mu) const {
  if (a < 0 || a >= na || b < 0 || b >= nb || c < 0 || c >= nc) throw RangeError("row index out of range");
  if (mu < 0 || mu >= rho()) throw RangeError("mu out of range");
  const int r = rho();
  const int ab = na + nb - 1;
  const int mu_c = ((mu - c) % r + r) % r;
  const int mu_b = mu_c < ab ? ((mu_c - b) % ab + ab) % ab : mu_c;
  const int k = first(a, mu_b);
  const int a1 = k % na, b1 = (k / na) % nb, c1 = k / (na * nb);
  return flat(a1, (b1 + b) % nb, (c1 + c) % nc);
}

ColumnFunction SumTensorIndex::column_function() const {
  const SumTensorIndex self = *this;
  return [self](int j, int l) {
    return self(j % self.na, (j / self.na) % self.nb, j / (self.na * self.nb), l);
  };
}

int of_angular_momentum(int two_j, int j, int mu) {
  if (two_j < 1) throw RangeError("angular momentum map needs 2J >= 1");
  if (j < 0 || j > two_j || mu < 0 || mu > 1) throw RangeError("index out of range");
  if (mu == 0) return j > 0 ? j - 1 : j + 1;
  return j < two_j ? j + 1 : j - 1;
}

int of_angular_momentum_injective(int two_j, int j, int mu) {
  if (two_j < 0 || j < 0 || j > two_j || mu < 0 || mu > 1) throw RangeError("index out of range");
  if (mu == 0) return j > 0 ? j - 1 : j;
  return j < two_j ? j + 1 : j;
}

namespace {

Eigen::MatrixXd ladder(int two_j, double sign) {
  const int dim = two_j + 1;
  const double jj = 0.5 * two_j;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) {
    const double k = -jj + i;
    const double c = 0.5 * std::sqrt(jj * (jj + 1) - k * (k + 1));
    m(i + 1, i) = c;
    m(i, i + 1) = sign * c;
  }
  return m;
}

}  // namespace

Eigen::MatrixXd angular_momentum_x(int two_j) { return ladder(two_j, 1.0); }
Eigen::MatrixXd angular_momentum_iy(int two_j) { return ladder(two_j, -1.0); }

nlohmann::json to_json(const BlockEncodingResult& r, const std::string& construction) {
  return {{"construction", construction},
          {"system_dim", r.system_dim},
          {"system_qubits", r.system_qubits()},
          {"ancilla_qubits", r.ancilla_qubits()},
          {"zeta", r.zeta},
          {"residual", r.residual},
          {"unitarity_deviation", r.unitarity_deviation}};
}

Eigen::MatrixXd parse_coo(const std::string& text, int n) {
  struct Entry {
    int r, c;
    double v;
  };
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  int dim = n;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    Entry e{};
    std::string extra;
    if (!(ls >> e.r >> e.c >> e.v) || (ls >> extra)) throw ParseError(lineno, "expected row,col,value");
    if (e.r < 0 || e.c < 0) throw ParseError(lineno, "negative index");
    if (n > 0 && (e.r >= n || e.c >= n)) throw ParseError(lineno, "index outside the declared dimension");
    dim = std::max({dim, e.r + 1, e.c + 1});
    entries.push_back(e);
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& e : entries) m(e.r, e.c) += e.v;
  return m;
}

}  // namespace whqrom::blockenc
