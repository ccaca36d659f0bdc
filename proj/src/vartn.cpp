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

#include "zxbp/vartn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "zxbp/evaluate.hpp"
#include "zxbp/integrate.hpp"
#include "zxbp/tensor_network.hpp"

namespace zxbp {

namespace {

using cd = std::complex<double>;

// Bits of a pattern, x1 first.
int bit(unsigned x, int c) { return static_cast<int>((x >> (3 - c)) & 1U); }
int winding(unsigned x) { return bit(x, 0) - bit(x, 1) + bit(x, 2) - bit(x, 3); }

unsigned param_pattern(int a, int g) { return t_support(a)[0] ^ (g ? 0b1111U : 0U); }

bool in_t2_support(unsigned x) { return x == 0b1001 || x == 0b0110; }

// ---------------------------------------------------------------------------
// Brute force over eigen-projectors.

ExactScalar to_exact(cd z) { return ExactScalar::floating(z); }

template <class S>
struct Arith;

template <>
struct Arith<cd> {
  static cd phase(const Phase& p) { return std::polar(1.0, M_PI * p.constant().get_d() + p.float_offset()); }
  static cd inv_sqrt2() { return M_SQRT1_2; }
  static cd half() { return 0.5; }
  static cd i() { return {0.0, 1.0}; }
  static cd conj(const cd& z) { return std::conj(z); }
  static cd rational(const Rational& q) { return q.get_d(); }
};

template <>
struct Arith<ExactScalar> {
  static ExactScalar phase(const Phase& p) {
    if (p.has_float() || !ExactScalar::phase_is_exact(p.constant())) {
      throw VartnError("exact mode needs angles that are multiples of pi/4");
    }
    return ExactScalar::phase(p.constant());
  }
  static ExactScalar inv_sqrt2() { return ExactScalar::sqrt2_pow(-1); }
  static ExactScalar half() { return ExactScalar(Rational(1, 2)); }
  static ExactScalar i() { return ExactScalar::i(); }
  static ExactScalar conj(const ExactScalar& z) { return z.conj(); }
  static ExactScalar rational(const Rational& q) { return ExactScalar(q); }
};

template <class S>
using Mat2 = std::array<S, 4>;

template <class S>
void apply1(std::vector<S>& psi, int n, int q, const Mat2<S>& u) {
  std::size_t stride = std::size_t{1} << (n - 1 - q);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & stride) continue;
    S a = psi[i], b = psi[i | stride];
    psi[i] = u[0] * a + u[1] * b;
    psi[i | stride] = u[2] * a + u[3] * b;
  }
}

template <class S>
void apply_cnot(std::vector<S>& psi, int n, int c, int t) {
  std::size_t sc = std::size_t{1} << (n - 1 - c), st = std::size_t{1} << (n - 1 - t);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if ((i & sc) && !(i & st)) std::swap(psi[i], psi[i | st]);
  }
}

template <class S>
Mat2<S> fixed_gate(GateKind k, const Phase& angle) {
  using A = Arith<S>;
  switch (k) {
    case GateKind::RZ:
      return {S(1), S(0), S(0), A::phase(angle)};
    case GateKind::RX: {
      S e = A::phase(angle);
      S h = A::half();
      return {h * (S(1) + e), h * (S(1) - e), h * (S(1) - e), h * (S(1) + e)};
    }
    case GateKind::H: {
      S r = A::inv_sqrt2();
      return {r, r, r, S(0) - r};
    }
    default:
      throw VartnError("unexpected gate in projector expansion");
  }
}

// Eigen-projector of a parameterized rotation for branch b, including the
// constant part of its angle on the e^{i theta} branch.
template <class S>
Mat2<S> projector(GateKind k, const Phase& angle, int b) {
  using A = Arith<S>;
  S w = b ? A::phase(angle.without_param()) : S(1);
  if (k == GateKind::RZ) return b ? Mat2<S>{S(0), S(0), S(0), w} : Mat2<S>{S(1), S(0), S(0), S(0)};
  S h = A::half() * w;
  S s = b ? S(0) - h : h;
  return {h, s, s, h};
}

template <class S>
void apply_pauli(const std::vector<S>& in, std::vector<S>& out, int n, const std::string& ops) {
  using A = Arith<S>;
  std::size_t flip = 0;
  for (int q = 0; q < n; ++q) {
    if (ops[q] == 'X' || ops[q] == 'Y') flip |= std::size_t{1} << (n - 1 - q);
  }
  for (std::size_t x = 0; x < in.size(); ++x) {
    // P|x> = phase |x ^ flip>
    S ph(1);
    for (int q = 0; q < n; ++q) {
      int b = static_cast<int>((x >> (n - 1 - q)) & 1U);
      if (ops[q] == 'Z' && b) ph = S(0) - ph;
      if (ops[q] == 'Y') ph = ph * (b ? S(0) - A::i() : A::i());
    }
    out[x ^ flip] += ph * in[x];
  }
}

template <class S>
S bruteforce(const Circuit& circuit, const Hamiltonian& h, int j) {
  using A = Arith<S>;
  Circuit c = decompose_ry(circuit);
  int n = c.n_qubits(), m = c.num_params();
  if (j < 0 || j >= m) throw CircuitError("unknown parameter index " + std::to_string(j));
  if (m > kBruteForceMaxParams) {
    throw VartnError("brute force limited to " + std::to_string(kBruteForceMaxParams) + " parameters, circuit has " +
                     std::to_string(m));
  }
  std::size_t dim = std::size_t{1} << n, branches = std::size_t{1} << m;
  auto terms = h.terms(n);
  std::vector<std::vector<S>> psi(branches), hpsi(branches);
  for (std::size_t beta = 0; beta < branches; ++beta) {
    std::vector<S> v(dim, S(0));
    v[0] = S(1);
    for (const auto& g : c.gates()) {
      if (g.kind == GateKind::CNOT) {
        apply_cnot(v, n, g.qubits[0], g.qubits[1]);
      } else if (g.angle.has_param()) {
        int b = static_cast<int>((beta >> g.angle.param()->id) & 1U);
        apply1(v, n, g.qubits[0], projector<S>(g.kind, g.angle, b));
      } else {
        apply1(v, n, g.qubits[0], fixed_gate<S>(g.kind, g.angle));
      }
    }
    std::vector<S> hv(dim, S(0)), tmp(dim);
    for (const auto& t : terms) {
      std::fill(tmp.begin(), tmp.end(), S(0));
      apply_pauli(v, tmp, n, t.ops);
      S coeff = A::rational(t.coeff);
      for (std::size_t x = 0; x < dim; ++x) hv[x] += coeff * tmp[x];
    }
    psi[beta] = std::move(v);
    hpsi[beta] = std::move(hv);
  }
  // g over pairs (beta_k, beta'_k), parameter k as base-4 digit k.
  std::size_t total = std::size_t{1} << (2 * m);
  std::vector<S> g(total, S(0));
  for (std::size_t beta = 0; beta < branches; ++beta) {
    for (std::size_t betap = 0; betap < branches; ++betap) {
      S acc(0);
      for (std::size_t x = 0; x < dim; ++x) acc += A::conj(psi[betap][x]) * hpsi[beta][x];
      std::size_t idx = 0;
      for (int k = 0; k < m; ++k) {
        std::size_t p = 2 * ((beta >> k) & 1U) + ((betap >> k) & 1U);
        idx |= p << (2 * k);
      }
      g[idx] = acc;
    }
  }
  std::vector<S> w = g, next(total);
  for (int k = 0; k < m; ++k) {
    std::size_t stride = std::size_t{1} << (2 * k);
    for (std::size_t i = 0; i < total; ++i) {
      std::size_t pp = (i / stride) % 4;
      std::size_t base = i - pp * stride;
      S acc(0);
      for (std::size_t p = 0; p < 4; ++p) {
        unsigned x = static_cast<unsigned>(p << 2 | pp);
        bool on = k == j ? in_t2_support(x) : in_t_support(x);
        if (on) acc += w[base + p * stride];
      }
      next[i] = acc;
    }
    std::swap(w, next);
  }
  S var(0);
  for (std::size_t i = 0; i < total; ++i) var += g[i] * w[i];
  return var;
}

// ---------------------------------------------------------------------------
// Network construction.

GaussRational pauli_entry(char p, int r, int c) {
  switch (p) {
    case 'I':
      return r == c ? 1 : 0;
    case 'X':
      return r != c ? 1 : 0;
    case 'Z':
      return r == c ? (c ? -1 : 1) : 0;
    case 'Y':
      if (r == c) return 0;
      return r == 1 ? GaussRational(0, 1) : GaussRational(0, -1);
    default:
      throw CircuitError(std::string("unknown Pauli ") + p);
  }
}

// The output leg of pattern y on one qubit for the string pair (P, Q).
ExactScalar output_weight(char p, char q, unsigned y) {
  return ExactScalar(pauli_entry(p, bit(y, 1), bit(y, 0)) * pauli_entry(q, bit(y, 3), bit(y, 2)));
}

ExactScalar input_weight(InputState s, unsigned y) {
  switch (s) {
    case InputState::Zero:
      return y == 0 ? 1 : 0;
    case InputState::One:
      return y == 0b1111 ? 1 : 0;
    case InputState::Plus:
      return ExactScalar(Rational(1, 4));
  }
  return 0;
}

class Builder {
 public:
  Builder(const Circuit& c, const Hamiltonian& h, const NetworkOptions& opt) : c_(c), h_(h), opt_(opt) {}

  VarianceNetwork run() {
    int n = c_.n_qubits(), m = c_.num_params();
    if (opt_.j >= m || opt_.j < -1) throw CircuitError("unknown parameter index " + std::to_string(opt_.j));
    for (int e : opt_.exposed) {
      if (e < 0 || e >= m) throw CircuitError("unknown parameter index " + std::to_string(e));
      if (e == opt_.j) throw VartnError("the differentiated parameter cannot be exposed");
    }
    if (!opt_.inputs.empty() && static_cast<int>(opt_.inputs.size()) != n) {
      throw VartnError("input list has " + std::to_string(opt_.inputs.size()) + " entries for " + std::to_string(n) +
                       " qubits");
    }
    if (h_.min_qubits() > n) throw VartnError("Hamiltonian acts on more qubits than the circuit has");
    d_ = circuit_to_zx(c_);
    net_.n_qubits = n;
    net_.num_params = m;
    net_.j = opt_.j;
    classify();
    for (const auto& [v, vx] : d_.vertices()) {
      if (et_.count(v)) add_parity(v);
    }
    for (const auto& [eid, e] : d_.edges()) {
      if (et_.count(e.u) || et_.count(e.v)) continue;
      add_edge(e);
    }
    for (const auto& [v, vx] : d_.vertices()) {
      if (vx.kind == VertexKind::Boundary || param_of_.count(v) || et_.count(v)) continue;
      add_phase(v);
    }
    for (const auto& [v, k] : param_of_) add_copy(v, k);
    for (int q = 0; q < n; ++q) {
      InputState s = opt_.inputs.empty() ? InputState::Zero : opt_.inputs[q];
      int y = pattern_var(d_.inputs()[q]);
      std::vector<ExactScalar> w;
      for (unsigned x = 0; x < 16; ++x) w.push_back(input_weight(s, x));
      push({"InputTensor", {y}, std::move(w)});
    }
    auto terms = h_.terms(n);
    for (const auto& s : terms) {
      for (const auto& t : terms) {
        PairTerm pt;
        pt.coeff = ExactScalar(s.coeff * t.coeff);
        for (int q = 0; q < n; ++q) {
          if (s.ops[q] == 'I' && t.ops[q] == 'I') {
            pt.nodes.push_back(identity_output(q));
            continue;
          }
          std::vector<ExactScalar> w;
          for (unsigned x = 0; x < 16; ++x) w.push_back(output_weight(s.ops[q], t.ops[q], x));
          pt.nodes.push_back({"HamiltonianTensor", {pattern_var(d_.outputs()[q])}, std::move(w)});
        }
        net_.terms.push_back(std::move(pt));
      }
    }
    const ExactScalar& s = d_.scalar();
    net_.prefactor = s * s.conj() * s * s.conj();
    for (const auto& [v, k] : param_of_) {
      if (!g_var_.count(v)) net_.prefactor *= ExactScalar(2);
    }
    for (int e : opt_.exposed) net_.open.push_back(a_var_.at(vertex_of_.at(e)));
    if (!net_.prefactor.is_exact()) net_.exact = false;
    return std::move(net_);
  }

 private:
  bool is_x(int v) const { return d_.kind(v) == VertexKind::X; }
  EdgeKind effective(const Edge& e) const {
    EdgeKind k = e.kind;
    if (is_x(e.u)) k = toggle(k);
    if (is_x(e.v)) k = toggle(k);
    return k;
  }

  void classify() {
    for (const auto& [v, vx] : d_.vertices()) {
      if (vx.phase.has_param()) {
        int k = vx.phase.param()->id;
        if (vertex_of_.count(k)) throw VartnError("parameter " + std::to_string(k) + " occurs twice");
        param_of_[v] = k;
        vertex_of_[k] = v;
        a_var_[v] = add_var(3, "a:" + c_.params()[k]);
      }
    }
    for (const auto& [v, vx] : d_.vertices()) {
      if (vx.kind == VertexKind::Boundary || vx.phase.has_param() || vx.phase.has_float()) continue;
      if (!vx.phase.is_pauli()) continue;
      auto nb = d_.neighbors(v);
      if (nb.empty() || static_cast<int>(nb.size()) != d_.degree(v)) continue;
      bool ok = true;
      for (int eid : d_.incident(v)) {
        const Edge& e = d_.edge(eid);
        int w = d_.other_end(eid, v);
        if (effective(e) != EdgeKind::Hadamard || !param_of_.count(w)) ok = false;
      }
      if (ok) et_.insert(v);
    }
  }

  int add_var(int dim, std::string label) {
    net_.vars.push_back({dim, std::move(label)});
    return static_cast<int>(net_.vars.size()) - 1;
  }

  int pattern_var(int v) {
    auto it = y_var_.find(v);
    if (it != y_var_.end()) return it->second;
    std::string label = "y:" + std::to_string(v);
    return y_var_[v] = add_var(16, label);
  }

  int g_var(int v) {
    auto it = g_var_.find(v);
    if (it != g_var_.end()) return it->second;
    return g_var_[v] = add_var(2, "g:" + c_.params()[param_of_.at(v)]);
  }

  void push(VarNode node) {
    for (const auto& x : node.payload) {
      if (!x.is_exact()) net_.exact = false;
    }
    net_.nodes.push_back(std::move(node));
  }

  // Variables that carry the pattern of vertex v.
  std::vector<int> vars_of(int v, bool with_g) {
    if (param_of_.count(v)) {
      std::vector<int> out{a_var_.at(v)};
      if (with_g) out.push_back(g_var(v));
      return out;
    }
    return {pattern_var(v)};
  }

  // Fills a factor over the variables of the given vertices from their
  // patterns.
  template <class F>
  std::vector<ExactScalar> tabulate(const std::vector<int>& verts, const std::vector<int>& vars, bool with_g, F f) {
    std::size_t total = 1;
    for (int x : vars) total *= static_cast<std::size_t>(net_.vars[x].dim);
    std::vector<ExactScalar> out;
    out.reserve(total);
    std::vector<int> digit(vars.size(), 0);
    for (std::size_t lin = 0; lin < total; ++lin) {
      std::size_t pos = 0;
      std::vector<unsigned> pats;
      for (int v : verts) {
        if (param_of_.count(v)) {
          int a = digit[pos++] + 1;
          int g = with_g ? digit[pos++] : 0;
          pats.push_back(param_pattern(a, g));
        } else {
          pats.push_back(static_cast<unsigned>(digit[pos++]));
        }
      }
      out.push_back(f(pats));
      for (std::size_t k = vars.size(); k-- > 0;) {
        if (++digit[k] < net_.vars[vars[k]].dim) break;
        digit[k] = 0;
      }
    }
    return out;
  }

  void add_edge(const Edge& e) {
    if (e.u == e.v) throw VartnError("self-loop in circuit diagram");
    EdgeKind k = effective(e);
    bool both_params = param_of_.count(e.u) && param_of_.count(e.v);
    // A Hadamard edge between two parameters only sees their T-indices.
    bool with_g = !(both_params && k == EdgeKind::Hadamard);
    std::vector<int> vars = vars_of(e.u, with_g);
    auto rest = vars_of(e.v, with_g);
    vars.insert(vars.end(), rest.begin(), rest.end());
    std::vector<ExactScalar> payload;
    if (k == EdgeKind::Plain) {
      payload = tabulate({e.u, e.v}, vars, with_g,
                         [](const std::vector<unsigned>& p) { return ExactScalar(p[0] == p[1] ? 1 : 0); });
    } else {
      payload = tabulate({e.u, e.v}, vars, with_g, [](const std::vector<unsigned>& p) {
        int s = std::popcount(p[0] & p[1]) % 2 ? -1 : 1;
        return ExactScalar(Rational(s, 4));
      });
    }
    push({both_params && k == EdgeKind::Hadamard ? "MEdge" : "Edge", std::move(vars), std::move(payload)});
  }

  // Pauli spider whose Hadamard neighbours are all parameters: the pattern
  // sum leaves a parity condition on the T-indices and one on the flips.
  void add_parity(int v) {
    auto nb = d_.neighbors(v);
    std::vector<int> avars, gvars;
    for (int w : nb) {
      avars.push_back(a_var_.at(w));
      gvars.push_back(g_var(w));
    }
    int dg = static_cast<int>(nb.size());
    Rational scale = Rational(16);
    for (int k = 0; k < dg; ++k) scale /= 4;
    std::vector<ExactScalar> pa, pg;
    std::size_t ta = 1, tg = 1;
    for (int k = 0; k < dg; ++k) {
      ta *= 3;
      tg *= 2;
    }
    for (std::size_t lin = 0; lin < ta; ++lin) {
      int n2 = 0, n3 = 0;
      std::size_t r = lin;
      for (int k = 0; k < dg; ++k) {
        int a = static_cast<int>(r % 3) + 1;
        r /= 3;
        n2 += a == 2;
        n3 += a == 3;
      }
      pa.push_back(n2 % 2 == 0 && n3 % 2 == 0 ? ExactScalar(scale) : ExactScalar(0));
    }
    int want = d_.phase(v).constant() == 0 ? 0 : 1;
    for (std::size_t lin = 0; lin < tg; ++lin) pg.push_back(std::popcount(lin) % 2 == want ? 1 : 0);
    push({dg == 3 ? "ETNode" : "Parity", std::move(avars), std::move(pa)});
    push({"GConstraint", std::move(gvars), std::move(pg)});
  }

  void add_phase(int v) {
    const Phase& p = d_.phase(v);
    if (p.is_zero()) return;
    std::vector<ExactScalar> w;
    for (unsigned y = 0; y < 16; ++y) {
      int s = winding(y);
      Rational q = p.constant() * s;
      if (!p.has_float() && ExactScalar::phase_is_exact(q)) {
        w.push_back(ExactScalar::phase(q));
      } else {
        w.push_back(to_exact(std::polar(1.0, s * (M_PI * p.constant().get_d() + p.float_offset()))));
      }
    }
    push({"Phase", {pattern_var(v)}, std::move(w)});
  }

  void add_copy(int v, int k) {
    if (std::find(opt_.exposed.begin(), opt_.exposed.end(), k) != opt_.exposed.end()) return;
    if (k == opt_.j) {
      push({"P2", {a_var_.at(v)}, {0, 1, 0}});
    } else {
      push({"Copy", {a_var_.at(v)}, {1, 1, 1}});
    }
  }

  VarNode identity_output(int q) {
    std::vector<ExactScalar> w;
    for (unsigned x = 0; x < 16; ++x) w.push_back(output_weight('I', 'I', x));
    return {"HamiltonianTensor", {pattern_var(d_.outputs()[q])}, std::move(w)};
  }

  const Circuit& c_;
  const Hamiltonian& h_;
  const NetworkOptions& opt_;
  ZxDiagram d_;
  VarianceNetwork net_;
  std::map<int, int> param_of_, vertex_of_, a_var_, g_var_, y_var_;
  std::set<int> et_;
};

template <class T>
T convert(const ExactScalar& x);
template <>
cd convert<cd>(const ExactScalar& x) {
  return x.to_complex();
}
template <>
ExactScalar convert<ExactScalar>(const ExactScalar& x) {
  return x;
}

template <class T>
std::vector<T> contract_all(const VarianceNetwork& net, std::size_t max_entries) {
  std::size_t out_size = 1;
  for (int v : net.open) out_size *= static_cast<std::size_t>(net.vars.at(v).dim);
  std::vector<T> total(out_size, T(0));
  for (const auto& term : net.terms) {
    TensorNetwork<T> tn;
    tn.set_max_entries(max_entries);
    for (const auto& v : net.vars) tn.add_var(v.dim);
    auto add = [&](const VarNode& node) {
      std::vector<T> data;
      data.reserve(node.payload.size());
      for (const auto& x : node.payload) data.push_back(convert<T>(x));
      tn.add_factor(node.vars, std::move(data));
    };
    for (const auto& node : net.nodes) add(node);
    for (const auto& node : term.nodes) add(node);
    Factor<T> f;
    try {
      f = tn.contract(net.open);
    } catch (const ContractionError& e) {
      throw VartnError(std::string("infeasible contraction: ") + e.what());
    }
    T w = convert<T>(term.coeff * net.prefactor);
    for (std::size_t i = 0; i < out_size; ++i) total[i] += w * f.data[i];
  }
  return total;
}

nlohmann::json scalar_json(const ExactScalar& x) {
  auto z = x.to_complex();
  nlohmann::json j = {z.real(), z.imag()};
  return j;
}

nlohmann::json node_json(const VarianceNetwork& net, const VarNode& node) {
  std::vector<int> shape;
  for (int v : node.vars) shape.push_back(net.vars[v].dim);
  nlohmann::json payload = nlohmann::json::array();
  for (const auto& x : node.payload) payload.push_back(x.is_exact() ? nlohmann::json(x.str()) : scalar_json(x));
  return {{"kind", node.kind}, {"vars", node.vars}, {"shape", shape}, {"payload", payload}};
}

}  // namespace

bool in_t_support(unsigned p) { return t_index_of(p) != 0; }

VTensor::VTensor(const std::vector<ZxDiagram>& terms) {
  for (const auto& d : terms) {
    auto ps = d.params();
    int m = ps.empty() ? 0 : *ps.rbegin() + 1;
    m_ = std::max(m_, m);
  }
  if (m_ > kBruteForceMaxParams) {
    throw VartnError("V tensor limited to " + std::to_string(kBruteForceMaxParams) + " parameters");
  }
  g_.assign(std::size_t{1} << (2 * m_), cd(0));
  for (const auto& closed : terms) {
    if (!closed.inputs().empty() || !closed.outputs().empty()) throw VartnError("V tensor needs closed diagrams");
    ZxDiagram d = closed;
    std::vector<int> outs;
    for (int k = 0; k < m_; ++k) {
      for (int sign : {1, -1}) {
        auto sp = d.spiders_with_param(k, sign);
        if (sp.size() != 1) {
          throw VartnError("parameter " + std::to_string(k) + " must occur once with each sign");
        }
        int v = sp[0];
        d.set_phase(v, d.phase(v).without_param());
        int b = d.add_vertex(VertexKind::Boundary);
        d.add_edge(v, b, d.kind(v) == VertexKind::Z ? EdgeKind::Plain : EdgeKind::Hadamard);
        outs.push_back(b);
      }
    }
    d.set_outputs(outs);
    Eigen::MatrixXcd t = evaluate(d, {}, std::max<std::size_t>(kDefaultBoundaryLimit, outs.size()));
    for (Eigen::Index r = 0; r < t.rows(); ++r) g_[static_cast<std::size_t>(r)] += t(r, 0);
  }
}

std::complex<double> VTensor::operator()(const std::vector<int>& a) const {
  if (static_cast<int>(a.size()) != m_) throw VartnError("assignment length differs from parameter count");
  for (int x : a) {
    if (x < 1 || x > 3) throw VartnError("T-index must be 1, 2 or 3");
  }
  // Parameter 0 is the most significant base-4 digit of a G index.
  cd sum = 0;
  std::size_t combos = std::size_t{1} << m_;
  for (std::size_t pick = 0; pick < combos; ++pick) {
    std::size_t left = 0, right = 0;
    for (int k = 0; k < m_; ++k) {
      unsigned x = t_support(a[k])[(pick >> k) & 1U];
      left = left * 4 + (x >> 2);
      right = right * 4 + (x & 3U);
    }
    sum += g_[left] * g_[right];
  }
  return sum;
}

std::complex<double> v_tensor(const ZxDiagram& closed, const std::vector<int>& assignment) {
  return VTensor({closed})(assignment);
}

VarianceValue variance_bruteforce(const Circuit& c, const Hamiltonian& h, int j, bool exact) {
  VarianceValue out;
  out.method = "brute-force";
  if (exact) {
    ExactScalar v = bruteforce<ExactScalar>(c, h, j);
    out.exact = v;
    out.is_exact = true;
    out.value = v.real_value();
  } else {
    out.value = bruteforce<cd>(c, h, j).real();
  }
  return out;
}

double variance_from_vtensor(const Circuit& c, const Hamiltonian& h, int j) {
  if (j < 0 || j >= c.num_params()) throw CircuitError("unknown parameter index " + std::to_string(j));
  VTensor v(expectation_terms(c, h));
  int m = c.num_params();
  std::vector<int> a(m, 1);
  a[j] = 2;
  double total = 0.0;
  while (true) {
    total += v(a).real();
    int k = 0;
    for (; k < m; ++k) {
      if (k == j) continue;
      if (++a[k] <= 3) break;
      a[k] = 1;
    }
    if (k == m) break;
  }
  return total;
}

VarianceNetwork build_network(const Circuit& c, const Hamiltonian& h, const NetworkOptions& opt) {
  return Builder(c, h, opt).run();
}

std::vector<std::complex<double>> contract_float(const VarianceNetwork& net, std::size_t max_entries) {
  return contract_all<cd>(net, max_entries);
}

std::vector<ExactScalar> contract_exact(const VarianceNetwork& net, std::size_t max_entries) {
  if (!net.exact) throw VartnError("network has floating-point payloads");
  return contract_all<ExactScalar>(net, max_entries);
}

VarianceValue contract(const VarianceNetwork& net, bool exact) {
  if (!net.open.empty()) throw VartnError("network has open indices");
  VarianceValue out;
  out.method = "network";
  if (exact && net.exact) {
    out.exact = contract_exact(net).at(0);
    out.is_exact = true;
    out.value = out.exact.real_value();
  } else {
    out.value = contract_float(net).at(0).real();
  }
  return out;
}

nlohmann::json VarianceNetwork::to_json() const {
  nlohmann::json jv = nlohmann::json::array();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    jv.push_back({{"id", i}, {"dim", vars[i].dim}, {"label", vars[i].label}});
  }
  nlohmann::json jn = nlohmann::json::array();
  for (const auto& node : nodes) jn.push_back(node_json(*this, node));
  nlohmann::json jt = nlohmann::json::array();
  for (const auto& t : terms) {
    nlohmann::json tn = nlohmann::json::array();
    for (const auto& node : t.nodes) tn.push_back(node_json(*this, node));
    jt.push_back({{"coeff", t.coeff.str()}, {"nodes", tn}});
  }
  return {{"qubits", n_qubits}, {"params", num_params}, {"j", j},
          {"variables", jv}, {"nodes", jn},  {"terms", jt},
          {"prefactor", prefactor.str()}, {"open", open}, {"exact", exact}};
}

namespace {

// Conjugation of a Pauli into the frame of the last parameterized spider.
Eigen::Matrix2cd frame_matrix(WireFrame f) {
  Eigen::Matrix2cd h;
  h << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2;
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Identity();
  s(1, 1) = cd(0, 1);
  switch (f) {
    case WireFrame::Z:
      return Eigen::Matrix2cd::Identity();
    case WireFrame::X:
      return h;
    case WireFrame::RyTail:
      return s * h;
  }
  return h;
}

Eigen::Matrix2cd pauli_matrix(char p) {
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = pauli_entry(p, r, c).to_complex();
  }
  return m;
}

GaussRational round_gauss(cd z) {
  return GaussRational(Rational(static_cast<long>(std::lround(z.real()))),
                       Rational(static_cast<long>(std::lround(z.imag()))));
}

// sum over the support of T_a of P'[x2, x1] Q'[x4, x3].
std::array<GaussRational, 3> pair_kernel(char p, char q, WireFrame f) {
  Eigen::Matrix2cd fm = frame_matrix(f);
  Eigen::Matrix2cd pp = fm.adjoint() * pauli_matrix(p) * fm;
  Eigen::Matrix2cd qq = fm.adjoint() * pauli_matrix(q) * fm;
  std::array<GaussRational, 3> out{};
  for (int a = 1; a <= 3; ++a) {
    for (unsigned x : t_support(a)) {
      out[a - 1] += round_gauss(pp(bit(x, 1), bit(x, 0))) * round_gauss(qq(bit(x, 3), bit(x, 2)));
    }
  }
  return out;
}

}  // namespace

std::vector<ExactScalar> h_tilde(const Hamiltonian& h, int legs, WireFrame frame) {
  if (legs < 1) throw VartnError("h_tilde needs at least one leg");
  if (h.min_qubits() > legs) {
    throw VartnError("Hamiltonian acts on " + std::to_string(h.min_qubits()) + " qubits but only " +
                     std::to_string(legs) + " legs were given");
  }
  std::size_t total = 1;
  for (int k = 0; k < legs; ++k) total *= 3;
  std::vector<GaussRational> acc(total);
  auto terms = h.terms(legs);
  for (const auto& s : terms) {
    for (const auto& t : terms) {
      std::vector<std::array<GaussRational, 3>> ker;
      for (int q = 0; q < legs; ++q) ker.push_back(pair_kernel(s.ops[q], t.ops[q], frame));
      GaussRational coeff(s.coeff * t.coeff);
      for (std::size_t lin = 0; lin < total; ++lin) {
        GaussRational v = coeff;
        std::size_t r = lin;
        for (int q = legs; q-- > 0;) {
          v *= ker[q][r % 3];
          r /= 3;
        }
        acc[lin] += v;
      }
    }
  }
  std::vector<ExactScalar> out;
  for (auto& x : acc) out.emplace_back(x);
  return out;
}

std::vector<ExactScalar> i_tilde(const std::vector<InputState>& input, WireFrame frame) {
  if (input.empty()) throw VartnError("i_tilde needs at least one leg");
  std::vector<ExactScalar> out{ExactScalar::one()};
  for (InputState s : input) {
    std::array<ExactScalar, 2> phi;
    bool z = frame == WireFrame::Z;
    switch (s) {
      case InputState::Zero:
        phi = z ? std::array<ExactScalar, 2>{1, 0}
                : std::array<ExactScalar, 2>{ExactScalar::sqrt2_pow(-1), ExactScalar::sqrt2_pow(-1)};
        break;
      case InputState::One:
        phi = z ? std::array<ExactScalar, 2>{0, 1}
                : std::array<ExactScalar, 2>{ExactScalar::sqrt2_pow(-1), -ExactScalar::sqrt2_pow(-1)};
        break;
      case InputState::Plus:
        phi = z ? std::array<ExactScalar, 2>{ExactScalar::sqrt2_pow(-1), ExactScalar::sqrt2_pow(-1)}
                : std::array<ExactScalar, 2>{1, 0};
        break;
    }
    std::array<ExactScalar, 3> wire{};
    for (int a = 1; a <= 3; ++a) {
      for (unsigned x : t_support(a)) {
        wire[a - 1] += phi[bit(x, 0)] * phi[bit(x, 1)].conj() * phi[bit(x, 2)] * phi[bit(x, 3)].conj();
      }
    }
    std::vector<ExactScalar> next;
    for (const auto& o : out) {
      for (const auto& w : wire) next.push_back(o * w);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace zxbp
