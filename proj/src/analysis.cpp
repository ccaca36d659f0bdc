// Copyright 2026 The zxbp Authors
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

#include "zxbp/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "zxbp/integrate.hpp"
#include "zxbp/tensor_network.hpp"

namespace zxbp {

namespace {

using cd = std::complex<double>;

std::size_t pow3(int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

std::size_t stride(int n, int site) { return pow3(n - 1 - site); }

using Mat3 = std::array<std::array<double, 3>, 3>;

// out[.. a' ..] = sum_a v[.. a ..] m[a][a']
std::vector<double> apply_site(const std::vector<double>& v, int n, int site, const Mat3& m) {
  std::vector<double> out(v.size(), 0.0);
  std::size_t s = stride(n, site);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    int a = static_cast<int>((i / s) % 3);
    std::size_t base = i - a * s;
    for (int b = 0; b < 3; ++b) out[base + b * s] += v[i] * m[a][b];
  }
  return out;
}

// Two-site operator with op(a, b, a', b'): out[a', b'] = sum v[a, b] op.
std::vector<double> apply_pair(const std::vector<double>& v, int n, int s1, int s2,
                               const std::function<double(int, int, int, int)>& op) {
  std::vector<double> out(v.size(), 0.0);
  std::size_t t1 = stride(n, s1), t2 = stride(n, s2);
  double tab[3][3][3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) tab[a][b][c][d] = op(a, b, c, d);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    int a = static_cast<int>((i / t1) % 3), b = static_cast<int>((i / t2) % 3);
    std::size_t base = i - a * t1 - b * t2;
    for (int c = 0; c < 3; ++c)
      for (int d = 0; d < 3; ++d) {
        double w = tab[a][b][c][d];
        if (w != 0.0) out[base + c * t1 + d * t2] += v[i] * w;
      }
  }
  return out;
}

Mat3 two_m() {
  SmallTensor m = m_matrix();
  Mat3 r{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r[a][b] = 2.0 * m.at({a + 1, b + 1}).get_d();
  return r;
}

Mat3 mul(const Mat3& x, const Mat3& y) {
  Mat3 r{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) r[a][b] += x[a][c] * y[c][b];
  return r;
}

const Mat3 kP2 = {{{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}};

// 1 iff the counts of index 2 and of index 3 among (a, b, c) are even.
double e8(int a, int b, int c) {
  int n2 = (a == 1) + (b == 1) + (c == 1);
  int n3 = (a == 2) + (b == 2) + (c == 2);
  return (n2 % 2 == 0 && n3 % 2 == 0) ? 1.0 : 0.0;
}

double em_entry(int a, int b, int a2, int b2) {
  static const SmallTensor em = em_matrix();
  return em.at({3 * a + b + 1, 3 * a2 + b2 + 1}).get_d();
}

void check_qubits(int n, int limit) {
  if (n < 2) throw AnalysisError("need at least two qubits");
  if (n > limit) throw AnalysisError("size limit: " + std::to_string(n) + " qubits exceeds " + std::to_string(limit));
}

Spectrum spectrum_of(const Eigen::MatrixXd& op, const Eigen::MatrixXd& expected, double tol) {
  Spectrum s;
  Eigen::EigenSolver<Eigen::MatrixXd> es(op, false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) s.eigenvalues.push_back(es.eigenvalues()[i]);
  std::stable_sort(s.eigenvalues.begin(), s.eigenvalues.end(),
                   [](const cd& x, const cd& y) { return std::abs(x) > std::abs(y); });
  for (const auto& l : s.eigenvalues) {
    if (std::abs(l - 1.0) <= 1e-6) {
      ++s.unit_count;
    } else {
      s.max_subunit = std::max(s.max_subunit, std::abs(l));
    }
  }
  Eigen::MatrixXd shifted = op - Eigen::MatrixXd::Identity(op.rows(), op.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int null = 0;
  for (int i = 0; i < sv.size(); ++i) null += sv[i] <= tol * std::max(1.0, sv[0]);
  Eigen::MatrixXd basis = svd.matrixV().rightCols(null);
  Eigen::MatrixXd p_found = basis * basis.transpose();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(expected);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(expected.rows(), expected.cols());
  Eigen::MatrixXd p_expected = q * q.transpose();
  s.eigenspace_distance = (p_found - p_expected).norm();
  return s;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }

std::vector<double> kron(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> r;
  r.reserve(x.size() * y.size());
  for (double a : x)
    for (double b : y) r.push_back(a * b);
  return r;
}

std::vector<double> as_vec(BasisVec v) {
  auto e = entries(v);
  return {double(e[0]), double(e[1]), double(e[2])};
}

}  // namespace

std::array<int, 3> entries(BasisVec v) {
  switch (v) {
    case BasisVec::V1:
      return {1, 0, 0};
    case BasisVec::V2:
      return {0, 1, 0};
    case BasisVec::V12:
      return {1, 1, 0};
    case BasisVec::V13:
      return {1, 0, 1};
    case BasisVec::V13m:
      return {1, 0, -1};
  }
  return {0, 0, 0};
}

std::string to_string(BasisVec v) {
  switch (v) {
    case BasisVec::V1:
      return "v1";
    case BasisVec::V2:
      return "v2";
    case BasisVec::V12:
      return "v12";
    case BasisVec::V13:
      return "v13";
    case BasisVec::V13m:
      return "v13-";
  }
  return "?";
}

std::vector<double> kron_power(BasisVec v, int n) {
  std::vector<double> r{1.0};
  for (int i = 0; i < n; ++i) r = kron(r, as_vec(v));
  return r;
}

// ---- hardware-efficient ----

std::vector<double> he_layer_apply(int n, const std::vector<double>& v) {
  check_qubits(n, kLayerApplyLimit);
  if (v.size() != pow3(n)) throw AnalysisError("vector length must be 3^n");
  // Column action of EM_{i,i+1}: out[a, b] = sum EM[(a, b), (a', b')] v[a', b'];
  // the product is applied right to left.
  auto col = [](int a2, int b2, int a, int b) { return em_entry(a, b, a2, b2); };
  std::vector<double> r = v;
  for (int i = n - 1; i >= 0; --i) r = apply_pair(r, n, i, (i + 1) % n, col);
  return r;
}

Eigen::MatrixXd he_layer_operator(int n) {
  check_qubits(n, kDenseLayerLimit);
  std::size_t d = pow3(n);
  Eigen::MatrixXd m(d, d);
  std::vector<double> e(d, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    e[c] = 1.0;
    m.col(c) = to_eigen(he_layer_apply(n, e));
    e[c] = 0.0;
  }
  return m;
}

Spectrum em_spectrum(double tol) {
  Eigen::MatrixXd em = em_matrix().matrix();
  Eigen::MatrixXd expected(9, 4);
  expected.col(0) = to_eigen(kron(as_vec(BasisVec::V1), as_vec(BasisVec::V12)));
  expected.col(1) = to_eigen(kron(as_vec(BasisVec::V1), as_vec(BasisVec::V13)));
  expected.col(2) = to_eigen(kron(as_vec(BasisVec::V12), as_vec(BasisVec::V12)));
  expected.col(3) = to_eigen(kron(as_vec(BasisVec::V13), as_vec(BasisVec::V13)));
  return spectrum_of(em, expected, tol);
}

Spectrum he_layer_spectrum(int n, double tol) {
  Eigen::MatrixXd lt = he_layer_operator(n);
  Eigen::MatrixXd expected(lt.rows(), 2);
  expected.col(0) = to_eigen(kron_power(BasisVec::V12, n));
  expected.col(1) = to_eigen(kron_power(BasisVec::V13, n));
  return spectrum_of(lt, expected, tol);
}

namespace {

// One layer of hardware_efficient(n, .) in row convention on the T-indices
// of the first RZ of every qubit: RZ -M- RX -M- RZ per qubit, then the
// entangler spiders of the CNOT ring.  p2 = (qubit, rotation) or (-1, -1).
std::vector<double> he_transfer(std::vector<double> u, int n, int p2_qubit, int p2_rot) {
  static const Mat3 m2 = two_m();
  static const Mat3 b1 = mul(m2, m2);
  static const Mat3 b1_inner = mul(mul(m2, kP2), m2);
  static const Mat3 b1_after = mul(b1, kP2);
  static const Mat3 b1_before = mul(kP2, b1);
  auto b1_for = [&](int q) -> const Mat3& {
    if (q != p2_qubit) return b1;
    if (p2_rot == 0) return b1_before;
    if (p2_rot == 1) return b1_inner;
    return b1_after;
  };
  // Target spider of CNOT(q-1, q) joins the last RZ of qubit q, the next
  // first RZ of qubit q and the control side of qubit q-1.
  auto ep = [](int x, int g, int x2, int a) { return x == x2 ? e8(g, a, x) : 0.0; };
  u = apply_site(u, n, 0, b1_for(0));
  for (int q = 1; q < n; ++q) {
    u = apply_site(u, n, q, b1_for(q));
    u = apply_pair(u, n, q - 1, q, ep);
  }
  u = apply_pair(u, n, n - 1, 0, ep);
  return u;
}

struct HeClosing {
  std::vector<double> values;  // over the first RZ indices of the last layer
};

HeClosing he_closing(int n, const Hamiltonian& h, int j_last) {
  Circuit one = hardware_efficient(n, 1);
  NetworkOptions opt;
  opt.j = j_last;
  opt.inputs.assign(n, InputState::Plus);
  for (int q = 0; q < n; ++q) opt.exposed.push_back(3 * q);
  VarianceNetwork net = build_network(one, h, opt);
  std::vector<cd> vals;
  try {
    vals = contract_float(net);
  } catch (const VartnError& e) {
    throw AnalysisError(e.what());
  }
  HeClosing c;
  // |+> inputs carry 4^n; each exposed parameter counts its sign flips twice.
  double scale = std::ldexp(1.0, n);
  for (const auto& z : vals) c.values.push_back(z.real() * scale);
  return c;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

}  // namespace

double he_variance(int n, int layers, const Hamiltonian& h, int j) {
  check_qubits(n, kLayerApplyLimit);
  if (layers < 1) throw AnalysisError("need at least one layer");
  int per_layer = 3 * n;
  if (j < 0 || j >= per_layer * layers) throw AnalysisError("parameter index out of range");
  if (layers == 1) {
    try {
      return contract(build_network(hardware_efficient(n, 1), h, j)).value;
    } catch (const VartnError& e) {
      throw AnalysisError(e.what());
    }
  }
  int jl = j / per_layer, jq = (j % per_layer) / 3, jr = j % 3;
  std::vector<double> u = kron_power(BasisVec::V1, n);
  for (int l = 0; l + 1 < layers; ++l) {
    u = l == jl ? he_transfer(u, n, jq, jr) : he_transfer(u, n, -1, -1);
  }
  int j_last = -1;
  if (jl == layers - 1) {
    if (jr == 0) {
      u = apply_site(u, n, jq, kP2);
    } else {
      j_last = j - per_layer * (layers - 1);
    }
  }
  return dot(u, he_closing(n, h, j_last).values);
}

Rational he_variance_limit(int n, const Hamiltonian& h) {
  Rational r = 4 * h.trace_square(n);
  r /= Rational(mpz_class(1) << (2 * n));
  r.canonicalize();
  return r;
}

double he_variance_limit_exact(int n, const Hamiltonian& h, int j, double tol, int max_layers) {
  check_qubits(n, kLayerApplyLimit);
  if (j < 0 || j >= 3 * n) throw AnalysisError("the limit takes a first-layer parameter");
  HeClosing close = he_closing(n, h, -1);
  std::vector<double> u = he_transfer(kron_power(BasisVec::V1, n), n, j / 3, j % 3);
  double prev = dot(u, close.values);
  for (int l = 3; l <= max_layers; ++l) {
    u = he_transfer(u, n, -1, -1);
    double cur = dot(u, close.values);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  throw AnalysisError("layer iteration did not converge");
}

// ---- RY/CNOT blocks ----

namespace {

int popcount(unsigned x) { return std::popcount(x); }

int pattern_sum(unsigned y) {
  return int((y >> 3) & 1) - int((y >> 2) & 1) + int((y >> 1) & 1) - int(y & 1);
}

cd hadamard_kernel(unsigned x, unsigned y) { return (popcount(x & y) % 2 ? -0.25 : 0.25); }

cd phase_weight(int quarter_turns, unsigned y) {
  static const cd powers[4] = {1.0, cd(0, 1), -1.0, cd(0, -1)};
  int k = ((quarter_turns * pattern_sum(y)) % 4 + 4) % 4;
  return powers[k];
}

bool traced(unsigned y) { return ((y >> 3) & 1) == ((y >> 2) & 1) && ((y >> 1) & 1) == (y & 1); }

// Four-copy sum over free spiders.  Nodes 0..fixed-1 carry given patterns.
struct PatternSum {
  struct Node {
    int quarter_turns = 0;
    bool traced = false;
  };
  int fixed = 0;
  std::vector<Node> nodes;
  std::vector<std::pair<int, int>> edges;

  cd eval(const std::vector<unsigned>& fixed_patterns) const {
    std::vector<unsigned> y(nodes.size(), 0);
    for (int i = 0; i < fixed; ++i) y[i] = fixed_patterns[i];
    int free = static_cast<int>(nodes.size()) - fixed;
    cd total = 0;
    std::size_t count = std::size_t{1} << (4 * free);
    for (std::size_t s = 0; s < count; ++s) {
      for (int k = 0; k < free; ++k) y[fixed + k] = (s >> (4 * k)) & 15u;
      cd w = 1;
      for (std::size_t i = 0; i < nodes.size() && w != 0.0; ++i) {
        if (nodes[i].traced && !traced(y[i])) w = 0;
        if (nodes[i].quarter_turns) w *= phase_weight(nodes[i].quarter_turns, y[i]);
      }
      if (w == 0.0) continue;
      for (const auto& [u, v] : edges) w *= hadamard_kernel(y[u], y[v]);
      total += w;
    }
    return total;
  }
};

std::vector<double> tabulate(const PatternSum& ps, int legs) {
  std::vector<double> out;
  std::size_t count = pow3(legs);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<unsigned> pats(ps.fixed, 0);
    std::size_t r = idx;
    for (int k = legs - 1; k >= 0; --k) {
      pats[k] = t_support(static_cast<int>(r % 3) + 1)[0];
      r /= 3;
    }
    cd v = ps.eval(pats);
    if (std::abs(v.imag()) > 1e-12) throw AnalysisError("block tensor is not real");
    out.push_back(v.real());
  }
  return out;
}

BlockTensors make_blocks() {
  BlockTensors b;
  // beta, alpha, gamma | tail of beta's RY (pi/2), CNOT target (traced), hub
  PatternSum tree;
  tree.fixed = 3;
  tree.nodes = {{}, {}, {}, {1, false}, {0, true}, {0, false}};
  tree.edges = {{0, 3}, {3, 4}, {4, 5}, {5, 1}, {5, 2}};
  b.tree = tabulate(tree, 3);
  // beta, alpha, gamma_a, gamma_b | tail, target, head of gamma_b's RY, hub
  PatternSum conv;
  conv.fixed = 4;
  conv.nodes = {{}, {}, {}, {}, {1, false}, {0, false}, {-1, false}, {0, false}};
  conv.edges = {{0, 4}, {4, 5}, {5, 6}, {6, 3}, {5, 7}, {7, 1}, {7, 2}};
  b.conv = tabulate(conv, 4);
  // beta, alpha, hub parameter | tail, target (traced)
  PatternSum hub;
  hub.fixed = 3;
  hub.nodes = {{}, {}, {1, false}, {1, false}, {0, true}};
  hub.edges = {{0, 3}, {3, 4}, {4, 2}, {2, 1}};
  b.hub = tabulate(hub, 3);
  return b;
}

const std::array<std::array<double, 3>, 3> kLabelVec = {{{1, 0, 1}, {0, 1, 0}, {1, 0, -1}}};

// Coordinates of x in the basis {v13, v2, v13-}.
std::array<double, 3> coords(const std::array<double, 3>& x) {
  return {(x[0] + x[2]) / 2, x[1], (x[0] - x[2]) / 2};
}

}  // namespace

const BlockTensors& block_tensors() {
  static const BlockTensors b = make_blocks();
  return b;
}

std::vector<Transport> transport_table(const std::string& block) {
  const BlockTensors& bt = block_tensors();
  const std::vector<double>* data = nullptr;
  int gammas = 1;
  if (block == "tree") {
    data = &bt.tree;
  } else if (block == "hub") {
    data = &bt.hub;
  } else if (block == "conv") {
    data = &bt.conv;
    gammas = 2;
  } else {
    throw AnalysisError("unknown block " + block);
  }
  std::vector<std::vector<double>> coef;  // per gamma label combination, 9 (beta, alpha) coordinates
  int combos = gammas == 1 ? 3 : 9;
  for (int g = 0; g < combos; ++g) {
    int g0 = gammas == 1 ? g : g / 3, g1 = g % 3;
    double r[3][3] = {};
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) {
          if (gammas == 1) {
            r[b][a] += (*data)[9 * b + 3 * a + c] * kLabelVec[g0][c];
          } else {
            for (int d = 0; d < 3; ++d) r[b][a] += (*data)[27 * b + 9 * a + 3 * c + d] * kLabelVec[g0][c] * kLabelVec[g1][d];
          }
        }
    // Expand rows and columns in the label basis.
    double half[3][3];
    for (int b = 0; b < 3; ++b) {
      auto c = coords({r[b][0], r[b][1], r[b][2]});
      for (int a = 0; a < 3; ++a) half[b][a] = c[a];
    }
    std::vector<double> out(9);
    for (int a = 0; a < 3; ++a) {
      auto c = coords({half[0][a], half[1][a], half[2][a]});
      for (int b = 0; b < 3; ++b) out[3 * b + a] = c[b];
    }
    coef.push_back(out);
  }
  double norm = coef[0][0];
  std::vector<Transport> table;
  for (int g = 0; g < combos; ++g) {
    for (int k = 0; k < 9; ++k) {
      double w = coef[g][k] / norm;
      if (std::abs(w) < 1e-12) continue;
      Transport t;
      t.gamma = gammas == 1 ? std::vector<int>{g} : std::vector<int>{g / 3, g % 3};
      t.beta = k / 3;
      t.alpha = k % 3;
      t.weight = w;
      table.push_back(t);
    }
  }
  return table;
}

namespace {

enum class BlockKind { Tree, Conv, Hub };

struct Block {
  BlockKind kind = BlockKind::Tree;
  int alpha = -1, beta = -1, gamma_a = -1, gamma_b = -1;
};

// Circuit made of RY pair blocks: RY a, RY b, CNOT a b, with the output
// wire closed by a final RY (X-type frame) or a final RZ fused into the
// last control (Z frame).
struct BlockModel {
  int m = 0;
  std::vector<Block> blocks;
  std::vector<int> leaves;
  std::vector<int> owner;  // block where a parameter is alpha or beta
  int top = -1;
  int output_qubit = 0;
  WireFrame frame = WireFrame::RyTail;
  int cnots = 0;
};

BlockModel block_model(const Circuit& c) {
  BlockModel bm;
  bm.m = c.num_params();
  bm.owner.assign(bm.m, -1);
  int n = c.n_qubits();
  std::vector<int> cur(n, -1), seen(n, 0);
  std::vector<std::pair<int, int>> pending(n, {-1, 0});  // block, 0 = control side
  auto fail = [](const std::string& why) { throw AnalysisError("not an RY pair-block circuit: " + why); };
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::CNOT) {
      int a = g.qubits[0], b = g.qubits[1];
      if (cur[a] < 0 || cur[b] < 0) fail("CNOT without fresh rotations on both qubits");
      Block blk;
      blk.alpha = cur[a];
      blk.beta = cur[b];
      int id = static_cast<int>(bm.blocks.size());
      bm.owner[blk.alpha] = bm.owner[blk.beta] = id;
      bm.blocks.push_back(blk);
      pending[a] = {id, 0};
      pending[b] = {id, 1};
      cur[a] = cur[b] = -1;
      ++bm.cnots;
      continue;
    }
    const auto& p = g.angle.param();
    if (!p || p->sign != 1 || g.angle.constant() != 0 || g.angle.has_float()) fail("fixed or signed rotation");
    int q = g.qubits[0];
    if (bm.top >= 0) fail("gates after the output rotation");
    if (g.kind == GateKind::RZ) {
      auto [blk, side] = pending[q];
      if (blk < 0 || side != 0) fail("RZ away from a control");
      bm.blocks[blk].kind = BlockKind::Hub;
      bm.blocks[blk].gamma_a = p->id;
      pending[q] = {-1, 0};
      bm.top = p->id;
      bm.output_qubit = q;
      bm.frame = WireFrame::Z;
      continue;
    }
    if (g.kind != GateKind::RY) fail("unsupported gate");
    if (cur[q] >= 0) fail("two rotations in a row");
    auto [blk, side] = pending[q];
    if (blk >= 0) {
      (side == 0 ? bm.blocks[blk].gamma_a : bm.blocks[blk].gamma_b) = p->id;
      pending[q] = {-1, 0};
    } else {
      if (seen[q]) fail("rotation after a discarded wire");
      bm.leaves.push_back(p->id);
    }
    seen[q] = 1;
    cur[q] = p->id;
  }
  for (int q = 0; q < n; ++q) {
    if (cur[q] < 0) continue;
    if (bm.top >= 0) fail("more than one open wire");
    bm.top = cur[q];
    bm.output_qubit = q;
    bm.frame = WireFrame::RyTail;
  }
  if (bm.top < 0) fail("no output rotation");
  for (auto& b : bm.blocks) {
    if (b.kind == BlockKind::Hub) continue;
    if (b.gamma_a < 0) fail("control wire ends inside the circuit");
    b.kind = b.gamma_b < 0 ? BlockKind::Tree : BlockKind::Conv;
  }
  return bm;
}

struct SingleQubitH {
  int target = 0;
  std::array<Rational, 4> k{};
};

SingleQubitH single_qubit_form(const Hamiltonian& h, int n) {
  SingleQubitH s;
  if (h.kind() == Hamiltonian::Kind::SingleQubit) {
    s.target = h.target();
    s.k = h.k();
    return s;
  }
  s.target = -1;
  for (const auto& t : h.terms(n)) {
    int idx = 0;
    for (int q = 0; q < n; ++q) {
      char o = t.ops[q];
      if (o == 'I') continue;
      if (s.target >= 0 && s.target != q) throw AnalysisError("H must act on a single qubit");
      s.target = q;
      idx = o == 'X' ? 1 : o == 'Y' ? 2 : 3;
    }
    s.k[idx] += t.coeff;
  }
  if (s.target < 0) s.target = 0;
  return s;
}

std::vector<double> to_doubles(const std::vector<ExactScalar>& v) {
  std::vector<double> r;
  for (const auto& x : v) r.push_back(x.real_value());
  return r;
}

// Var = scale * sum over labels of the basis-expanded network.
double model_scale(const BlockModel& bm) {
  // CNOT scalars, sign flips of every parameter, |0> normalisation at the
  // leaves (I-tilde already carries a factor 2), partial traces, the output
  // boundary and the block norms.
  int log2 = 2 * bm.cnots + bm.m - 3 * static_cast<int>(bm.leaves.size()) + 1;
  double s = 1.0;
  for (const auto& b : bm.blocks) {
    if (b.kind == BlockKind::Conv) {
      s /= 16.0;
    } else {
      s /= 8.0;
      log2 += 2;
    }
  }
  return std::ldexp(s, log2);
}

std::vector<double> top_vector(const BlockModel& bm, const Hamiltonian& h, int n) {
  SingleQubitH s = single_qubit_form(h, n);
  if (s.target != bm.output_qubit) throw AnalysisError("H must act on the output qubit");
  return to_doubles(h_tilde(Hamiltonian::single_qubit(0, s.k), 1, bm.frame));
}

double model_variance(const BlockModel& bm, const Hamiltonian& h, int n, int j, InputState input) {
  if (j < 0 || j >= bm.m) throw AnalysisError("parameter index out of range");
  const BlockTensors& bt = block_tensors();
  TensorNetwork<double> tn;
  for (int p = 0; p < bm.m; ++p) tn.add_var(3);
  for (const auto& b : bm.blocks) {
    double norm = b.kind == BlockKind::Conv ? 16.0 : 8.0;
    const std::vector<double>& raw = b.kind == BlockKind::Tree ? bt.tree : b.kind == BlockKind::Conv ? bt.conv : bt.hub;
    std::vector<double> data;
    for (double x : raw) data.push_back(x * norm);
    if (b.kind == BlockKind::Conv) {
      tn.add_factor({b.beta, b.alpha, b.gamma_a, b.gamma_b}, data);
    } else {
      tn.add_factor({b.beta, b.alpha, b.gamma_a}, data);
    }
  }
  std::vector<double> in = to_doubles(i_tilde({input}, WireFrame::X));
  for (int leaf : bm.leaves) tn.add_factor({leaf}, in);
  tn.add_factor({bm.top}, top_vector(bm, h, n));
  tn.add_factor({j}, {0.0, 1.0, 0.0});
  return model_scale(bm) * tn.contract_scalar();
}

LowerBound model_bound(const BlockModel& bm, const Hamiltonian& h, int n, int j, InputState input) {
  std::vector<double> htop = top_vector(bm, h, n);
  auto top_coords = coords({htop[0], htop[1], htop[2]});
  std::vector<double> in = to_doubles(i_tilde({input}, WireFrame::X));
  double in_label[3];
  for (int l = 0; l < 3; ++l) in_label[l] = in[0] * kLabelVec[l][0] + in[1] * kLabelVec[l][1] + in[2] * kLabelVec[l][2];

  std::map<BlockKind, std::vector<Transport>> tables = {
      {BlockKind::Tree, transport_table("tree")},
      {BlockKind::Conv, transport_table("conv")},
      {BlockKind::Hub, transport_table("hub")}};

  // Path from j up to the output, preferring the wire j sits on.
  std::vector<char> spine(bm.m, 0);
  for (int p = j; p >= 0;) {
    spine[p] = 1;
    if (p == bm.top) break;
    const Block& b = bm.blocks.at(bm.owner.at(p));
    p = (p == b.beta && b.gamma_b >= 0) ? b.gamma_b : b.gamma_a;
  }
  auto pref = [&](int p, int label) {
    if (spine[p]) return label == 1 ? 1.0 : 0.0;
    return label == 0 ? 1.0 : label == 1 ? 0.5 : 0.25;
  };

  LowerBound lb;
  lb.j = j;
  double scale = model_scale(bm);
  for (int comp = 0; comp < 3; ++comp) {
    if (top_coords[comp] <= 0) continue;
    std::vector<int> label(bm.m, -1);
    label[bm.top] = comp;
    double coef = scale * top_coords[comp];
    for (int bi = static_cast<int>(bm.blocks.size()) - 1; bi >= 0 && coef > 0; --bi) {
      const Block& b = bm.blocks[bi];
      std::vector<int> g = {label[b.gamma_a]};
      if (b.kind == BlockKind::Conv) g.push_back(label[b.gamma_b]);
      const Transport* best = nullptr;
      double best_score = 0;
      for (const auto& t : tables[b.kind]) {
        if (t.gamma != g) continue;
        double score = t.weight * pref(b.beta, t.beta) * pref(b.alpha, t.alpha);
        if (score > best_score) {
          best_score = score;
          best = &t;
        }
      }
      if (!best) {
        coef = 0;
        break;
      }
      label[b.beta] = best->beta;
      label[b.alpha] = best->alpha;
      coef *= best->weight;
    }
    if (coef <= 0 || label[j] != 1) continue;
    BoundTerm term;
    term.component = comp;
    term.coefficient = coef;
    term.input_factor = 1.0;
    for (int leaf : bm.leaves) term.input_factor *= in_label[label[leaf]];
    term.labels = label;
    lb.value += term.value();
    lb.terms.push_back(term);
  }
  return lb;
}

}  // namespace

nlohmann::json LowerBound::to_json(const Circuit& c) const {
  static const char* names[3] = {"v13", "v2", "v13-"};
  nlohmann::json t = nlohmann::json::array();
  for (const auto& term : terms) {
    nlohmann::json u = nlohmann::json::object();
    for (std::size_t p = 0; p < term.labels.size(); ++p) {
      if (term.labels[p] >= 0) u[c.params()[p]] = names[term.labels[p]];
    }
    t.push_back({{"component", names[term.component]},
                 {"coefficient", term.coefficient},
                 {"input_factor", term.input_factor},
                 {"value", term.value()},
                 {"labels", u}});
  }
  return {{"parameter", c.params().at(j)}, {"value", value}, {"terms", t}};
}

double ttn_variance(int n, const Hamiltonian& h, int j) {
  Circuit c = ttn(n);
  return model_variance(block_model(c), h, n, j, InputState::Zero);
}

double qcnn_variance(int n, const Hamiltonian& h, int j) {
  Circuit c = qcnn(n);
  return model_variance(block_model(c), h, n, j, InputState::Zero);
}

LowerBound ttn_lower_bound(int n, const Hamiltonian& h, InputState input) {
  return model_bound(block_model(ttn(n)), h, n, 0, input);
}

LowerBound qcnn_lower_bound(int n, const Hamiltonian& h, InputState input) {
  return model_bound(block_model(qcnn(n)), h, n, 0, input);
}

// ---- MPS ----

namespace {

using RVec = std::array<Rational, 3>;

RVec apply2m(const RVec& v) {
  static const SmallTensor m = m_matrix();
  RVec r{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r[a] += 2 * m.at({a + 1, b + 1}) * v[b];
  return r;
}

RVec chain(int n, RVec u) {
  u = apply2m(u);
  for (int q = n - 2; q >= 0; --q) {
    u = apply2m(u);
    u[1] = 0;
    u = apply2m(u);
  }
  return u;
}

Rational exact_real(const ExactScalar& s) {
  auto r = s.as_rational();
  if (!r) throw AnalysisError("expected a rational boundary entry");
  return *r;
}

}  // namespace

Rational mps_variance(int n, const Hamiltonian& h) {
  if (n < 2) throw AnalysisError("MPS ansatz needs n >= 2");
  SingleQubitH s = single_qubit_form(h, n);
  if (s.target != n - 1) throw AnalysisError("H must act on the last qubit");
  auto top = h_tilde(Hamiltonian::single_qubit(0, s.k), 1, WireFrame::Z);
  RVec u = chain(n, {exact_real(top[0]), exact_real(top[1]), exact_real(top[2])});
  auto in = i_tilde({InputState::Zero}, WireFrame::X);
  Rational v = u[1] * exact_real(in[1]) / 2;
  v.canonicalize();
  return v;
}

Rational mps_v2_coefficient(int n) {
  if (n < 2) throw AnalysisError("MPS ansatz needs n >= 2");
  RVec u = chain(n, {0, 1, 0});
  u[1].canonicalize();
  return u[1];
}

// ---- scans ----

namespace {

FitStats fit(const std::vector<double>& x, const std::vector<double>& y) {
  FitStats f;
  double m = static_cast<double>(x.size());
  double sx = std::accumulate(x.begin(), x.end(), 0.0), sy = std::accumulate(y.begin(), y.end(), 0.0);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = m * sxx - sx * sx;
  f.slope = den != 0 ? (m * sxy - sx * sy) / den : 0.0;
  f.intercept = (sy - f.slope * sx) / m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - f.slope * x[i] - f.intercept;
    f.rss += r * r;
  }
  // Gaussian AIC with two fitted coefficients; the floor keeps exact fits finite.
  f.aic = m * std::log(std::max(f.rss / m, 1e-300)) + 4.0;
  return f;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

std::string classify(const std::vector<ScalingRow>& rows, FitStats* exponential, FitStats* polynomial) {
  std::vector<double> n, logn, logv;
  for (const auto& r : rows) {
    if (r.variance <= 0) continue;
    n.push_back(r.n);
    logn.push_back(std::log(double(r.n)));
    logv.push_back(std::log(r.variance));
  }
  if (n.size() < 3) return "inconclusive";
  FitStats e = fit(n, logv), p = fit(logn, logv);
  if (exponential) *exponential = e;
  if (polynomial) *polynomial = p;
  double delta = e.aic - p.aic;
  if (std::abs(delta) < 2.0) return "inconclusive";
  return delta < 0 ? "exponential" : "polynomial";
}

Hamiltonian resolve_hamiltonian(const std::string& text, int n) {
  if (text.size() == 5 && text.rfind("last", 0) == 0) {
    std::array<Rational, 4> k{0, 0, 0, 0};
    std::string ops = "IXYZ";
    auto pos = ops.find(text[4]);
    if (pos == std::string::npos) throw AnalysisError("unknown Hamiltonian " + text);
    k[pos] = 1;
    return Hamiltonian::single_qubit(n - 1, k);
  }
  if (text.size() >= 2 && std::string("IXYZ").find(text[0]) != std::string::npos &&
      std::all_of(text.begin() + 1, text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::array<Rational, 4> k{0, 0, 0, 0};
    k[std::string("IXYZ").find(text[0])] = 1;
    int q = std::stoi(text.substr(1));
    if (q >= n) throw AnalysisError("Hamiltonian qubit out of range");
    return Hamiltonian::single_qubit(q, k);
  }
  try {
    return parse_hamiltonian(text);
  } catch (const CircuitError& e) {
    throw AnalysisError(e.what());
  }
}

std::string default_hamiltonian(const std::string& family) { return family == "mps" ? "lastX" : "Z0"; }

int default_parameter(const std::string& family) { return family == "he" ? 1 : 0; }

ScalingRow scan_point(const std::string& family, int n, int layers, const Hamiltonian& h, int j) {
  ScalingRow row;
  row.family = family;
  row.n = n;
  row.j = j;
  if (family == "he") {
    row.layers = layers;
    row.variance = he_variance(n, layers, h, j);
    row.reference = he_variance_limit(n, h).get_d();
  } else if (family == "ttn") {
    row.layers = 1;
    row.variance = ttn_variance(n, h, j);
    row.reference = j == 0 ? ttn_lower_bound(n, h).value : 0.0;
  } else if (family == "qcnn") {
    row.layers = 1;
    row.variance = qcnn_variance(n, h, j);
    row.reference = j == 0 ? qcnn_lower_bound(n, h).value : 0.0;
  } else if (family == "mps") {
    if (j != 0) throw AnalysisError("the MPS recurrence covers theta1 only");
    row.layers = 1;
    row.variance = mps_variance(n, h).get_d();
    try {
      row.reference = contract(build_network(mps(n), h, 0)).value;
    } catch (const VartnError& e) {
      throw AnalysisError(e.what());
    }
  } else {
    throw AnalysisError("unknown ansatz family " + family);
  }
  return row;
}

ScalingReport scaling_scan(const ScanConfig& cfg) {
  ScalingReport r;
  r.family = cfg.family;
  r.hamiltonian = cfg.hamiltonian.empty() ? default_hamiltonian(cfg.family) : cfg.hamiltonian;
  int j = cfg.j >= 0 ? cfg.j : default_parameter(cfg.family);
  r.j_policy = cfg.j >= 0 ? "fixed" : "default";
  for (int n : cfg.ns) {
    int layers = cfg.family == "he" ? (cfg.layers > 0 ? cfg.layers : n) : 1;
    r.rows.push_back(scan_point(cfg.family, n, layers, resolve_hamiltonian(r.hamiltonian, n), j));
  }
  r.classification = classify(r.rows, &r.exponential, &r.polynomial);
  return r;
}

std::string ScalingReport::to_csv() const {
  std::ostringstream os;
  os << "family,n,L,j,variance,reference,classification\n";
  for (const auto& row : rows) {
    os << row.family << ',' << row.n << ',' << row.layers << ',' << row.j << ',' << format_double(row.variance) << ','
       << format_double(row.reference) << ',' << classification << '\n';
  }
  return os.str();
}

nlohmann::json ScalingReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& row : rows) {
    rs.push_back({{"family", row.family},
                  {"n", row.n},
                  {"L", row.layers},
                  {"j", row.j},
                  {"variance", row.variance},
                  {"reference", row.reference}});
  }
  auto stats = [](const FitStats& f) {
    return nlohmann::json{{"slope", f.slope}, {"intercept", f.intercept}, {"rss", f.rss}, {"aic", f.aic}};
  };
  return {{"family", family},
          {"hamiltonian", hamiltonian},
          {"j_policy", j_policy},
          {"rows", rs},
          {"fit_exponential", stats(exponential)},
          {"fit_polynomial", stats(polynomial)},
          {"classification", classification}};
}

}  // namespace zxbp
