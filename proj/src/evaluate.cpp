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

#include "zxbp/evaluate.hpp"

#include <cmath>
#include <numeric>

#include "zxbp/tensor_network.hpp"

namespace zxbp {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Every spider is a binary variable s (its Z-basis value; for X spiders the
// value behind the Hadamards on each leg).  An edge whose total Hadamard count
// is even identifies the two variables; an odd count gives a Hadamard factor.
template <class T, class WeightFn, class ScalarFn>
std::vector<T> evaluate_impl(const ZxDiagram& d, std::size_t boundary_limit, WeightFn weight,
                             ScalarFn sqrt2_pow, const T& global) {
  std::size_t nb = d.inputs().size() + d.outputs().size();
  if (nb > boundary_limit) throw DiagramError("size limit exceeded");
  std::map<int, int> index;
  for (const auto& [id, vx] : d.vertices()) index[id] = static_cast<int>(index.size());
  int nv = static_cast<int>(index.size());
  UnionFind uf(nv);
  auto odd = [&](const Edge& e) {
    int h = e.kind == EdgeKind::Hadamard;
    h += d.kind(e.u) == VertexKind::X;
    h += d.kind(e.v) == VertexKind::X;
    return h % 2 == 1;
  };
  int had_count = 0;
  std::vector<std::pair<int, int>> had_pairs;
  std::vector<int> had_loops;
  for (const auto& [eid, e] : d.edges()) {
    if (e.u == e.v) {
      if (e.kind == EdgeKind::Hadamard) {
        had_loops.push_back(index[e.u]);
        ++had_count;
      }
      continue;
    }
    if (odd(e)) {
      had_pairs.emplace_back(index[e.u], index[e.v]);
      ++had_count;
    } else {
      uf.unite(index[e.u], index[e.v]);
    }
  }
  TensorNetwork<T> net;
  std::map<int, int> var_of_root;
  auto var = [&](int i) {
    int r = uf.find(i);
    auto it = var_of_root.find(r);
    if (it != var_of_root.end()) return it->second;
    int v = net.add_var(2);
    var_of_root[r] = v;
    return v;
  };
  for (const auto& [id, vx] : d.vertices()) {
    int v = var(index[id]);
    if (vx.kind == VertexKind::Boundary) continue;
    T w = weight(vx.phase);
    if (!(w == T(1))) net.add_factor({v}, {T(1), w});
  }
  for (auto [a, b] : had_pairs) {
    int va = var(a), vb = var(b);
    if (va == vb) {
      net.add_factor({va}, {T(1), T(-1)});
    } else {
      net.add_factor({va, vb}, {T(1), T(1), T(1), T(-1)});
    }
  }
  for (int a : had_loops) net.add_factor({var(a)}, {T(1), T(-1)});

  std::vector<int> bvars;
  for (int b : d.outputs()) bvars.push_back(var(index[b]));
  for (int b : d.inputs()) bvars.push_back(var(index[b]));
  std::vector<int> open;
  for (int v : bvars) {
    if (std::find(open.begin(), open.end(), v) == open.end()) open.push_back(v);
  }
  Factor<T> f = net.contract(open);
  T norm = global * sqrt2_pow(-had_count);
  std::size_t total = std::size_t{1} << nb;
  std::vector<T> out(total, T(0));
  for (std::size_t lin = 0; lin < total; ++lin) {
    std::map<int, int> bit;
    bool ok = true;
    for (std::size_t k = 0; k < nb && ok; ++k) {
      int b = static_cast<int>((lin >> (nb - 1 - k)) & 1);
      auto [it, inserted] = bit.emplace(bvars[k], b);
      if (!inserted && it->second != b) ok = false;
    }
    if (!ok) continue;
    std::size_t pos = 0;
    for (int v : open) pos = pos * 2 + static_cast<std::size_t>(bit[v]);
    out[lin] = f.data[pos] * norm;
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd evaluate(const ZxDiagram& d, const Assignment& assignment,
                          std::size_t boundary_limit) {
  using C = std::complex<double>;
  auto weight = [&](const Phase& p) { return std::polar(1.0, p.value(assignment)); };
  auto s2 = [](int k) { return C(std::pow(2.0, 0.5 * k), 0.0); };
  std::vector<C> data = evaluate_impl<C>(d, boundary_limit, weight, s2, d.scalar().to_complex());
  Eigen::Index rows = Eigen::Index{1} << d.outputs().size();
  Eigen::Index cols = Eigen::Index{1} << d.inputs().size();
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[static_cast<std::size_t>(r * cols + c)];
  }
  return m;
}

std::complex<double> evaluate_scalar(const ZxDiagram& d, const Assignment& assignment) {
  if (!d.inputs().empty() || !d.outputs().empty()) throw DiagramError("diagram is not closed");
  return evaluate(d, assignment)(0, 0);
}

std::vector<ExactScalar> evaluate_exact(const ZxDiagram& d, const ExactAssignment& assignment,
                                        std::size_t boundary_limit) {
  auto weight = [&](const Phase& p) {
    if (p.has_float()) throw DiagramError("float phase in exact evaluation");
    Rational c = p.constant();
    if (p.param()) {
      auto it = assignment.find(p.param()->id);
      if (it == assignment.end()) {
        throw std::invalid_argument("unassigned parameter " + std::to_string(p.param()->id));
      }
      c += p.param()->sign * it->second;
    }
    if (!ExactScalar::phase_is_exact(c)) throw DiagramError("phase is not a multiple of pi/4");
    return ExactScalar::phase(c);
  };
  auto s2 = [](int k) { return ExactScalar::sqrt2_pow(k); };
  return evaluate_impl<ExactScalar>(d, boundary_limit, weight, s2, d.scalar());
}

ExactScalar evaluate_exact_scalar(const ZxDiagram& d, const ExactAssignment& assignment) {
  if (!d.inputs().empty() || !d.outputs().empty()) throw DiagramError("diagram is not closed");
  return evaluate_exact(d, assignment).at(0);
}

}  // namespace zxbp
