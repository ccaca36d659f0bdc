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


#include "zxbp/integrate.hpp"

#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "zxbp/evaluate.hpp"
#include "zxbp/oracle.hpp"
#include "zxbp/rewrite.hpp"

namespace zxbp {

namespace {

constexpr Pattern kAllOnes = 0b1111;

Rational q(int num, int den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

SmallTensor make_tensor(std::string name, std::vector<int> shape, int den, const std::vector<int>& nums) {
  SmallTensor t{std::move(name), std::move(shape), {}};
  for (int x : nums) t.data.push_back(q(x, den));
  return t;
}

std::size_t flat_index(const std::vector<int>& shape, const std::vector<int>& idx) {
  if (idx.size() != shape.size()) throw std::out_of_range("wrong number of indices");
  std::size_t lin = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (idx[k] < 1 || idx[k] > shape[k]) throw std::out_of_range("index out of range");
    lin = lin * static_cast<std::size_t>(shape[k]) + static_cast<std::size_t>(idx[k] - 1);
  }
  return lin;
}

// A spider of a motif; the same motif is laid out four times, once per copy.
struct MotifSpider {
  Phase phase;
  bool exposed = false;
};

struct Motif {
  std::vector<MotifSpider> spiders;
  std::vector<std::pair<int, int>> had_edges;
  std::vector<int> traced;  // spiders whose output wire is traced out through a Hadamard
  ExactScalar copy_scalar = ExactScalar::one();
};

// Copies are (U, U-dagger, U, U-dagger); dagger copies carry negated phases.
// Exposed spiders get one open leg per copy, ordered spider-major so that
// each spider's four legs form one pattern with copy 0 most significant.
ZxDiagram four_copies(const Motif& m) {
  ZxDiagram d;
  std::vector<std::vector<int>> ids(4);
  for (int k = 0; k < 4; ++k) {
    for (const auto& s : m.spiders) {
      ids[k].push_back(d.add_vertex(VertexKind::Z, k % 2 == 0 ? s.phase : -s.phase));
    }
    for (auto [a, b] : m.had_edges) d.add_edge(ids[k][a], ids[k][b], EdgeKind::Hadamard);
    d.multiply_scalar(k % 2 == 0 ? m.copy_scalar : m.copy_scalar.conj());
  }
  for (int t : m.traced) {
    d.add_edge(ids[0][t], ids[1][t], EdgeKind::Plain);
    d.add_edge(ids[2][t], ids[3][t], EdgeKind::Plain);
  }
  std::vector<int> outs;
  for (std::size_t s = 0; s < m.spiders.size(); ++s) {
    if (!m.spiders[s].exposed) continue;
    for (int k = 0; k < 4; ++k) {
      int b = d.add_vertex(VertexKind::Boundary);
      d.add_edge(ids[k][s], b, EdgeKind::Plain);
      outs.push_back(b);
    }
  }
  d.set_outputs(outs);
  return d;
}

// Splits a 4E-bit index into E patterns.
std::vector<Pattern> split_patterns(std::size_t x, int e) {
  std::vector<Pattern> out(e);
  for (int k = e - 1; k >= 0; --k) {
    out[k] = static_cast<Pattern>(x & kAllOnes);
    x >>= 4;
  }
  return out;
}

// Projects a quadrature result onto products of T-basis tensors.  Returns
// the 3^E coefficients (first exposed spider slowest) and the residual of
// the expansion.
std::pair<std::vector<double>, double> project(const Eigen::VectorXcd& v, int e) {
  std::size_t n3 = 1;
  for (int k = 0; k < e; ++k) n3 *= 3;
  std::vector<std::complex<double>> coef(n3, 0.0);
  for (std::size_t x = 0; x < static_cast<std::size_t>(v.size()); ++x) {
    auto ps = split_patterns(x, e);
    std::size_t lin = 0;
    bool in = true;
    for (Pattern p : ps) {
      int a = t_index_of(p);
      if (a == 0) {
        in = false;
        break;
      }
      lin = lin * 3 + static_cast<std::size_t>(a - 1);
    }
    if (in) coef[lin] += v[static_cast<Eigen::Index>(x)] / std::pow(2.0, e);
  }
  double residual = 0.0;
  for (std::size_t x = 0; x < static_cast<std::size_t>(v.size()); ++x) {
    auto ps = split_patterns(x, e);
    std::size_t lin = 0;
    bool in = true;
    for (Pattern p : ps) {
      int a = t_index_of(p);
      if (a == 0) {
        in = false;
        break;
      }
      lin = lin * 3 + static_cast<std::size_t>(a - 1);
    }
    std::complex<double> expect = in ? coef[lin] : 0.0;
    residual = std::max(residual, std::abs(v[static_cast<Eigen::Index>(x)] - expect));
  }
  std::vector<double> re;
  for (auto c : coef) {
    residual = std::max(residual, std::abs(c.imag()));
    re.push_back(c.real());
  }
  return {re, residual};
}

Eigen::VectorXcd quadrature_of(const Motif& m, const std::vector<int>& params, int K) {
  Eigen::MatrixXcd r = quad_integrate(four_copies(m), params, K);
  return r.col(0);
}

}  // namespace

std::array<Pattern, 2> t_support(int a) {
  static const Pattern reps[] = {0b0000, 0b1001, 0b1100};
  if (a < 1 || a > 3) throw std::out_of_range("T-basis index must be 1, 2 or 3");
  Pattern r = reps[a - 1];
  return {r, r ^ kAllOnes};
}

int t_index_of(Pattern p) {
  for (int a = 1; a <= 3; ++a) {
    auto s = t_support(a);
    if (p == s[0] || p == s[1]) return a;
  }
  return 0;
}

ZxDiagram t_diagram(int a) {
  if (a < 1 || a > 3) throw std::out_of_range("T-basis index must be 1, 2 or 3");
  ZxDiagram d;
  std::vector<int> legs;
  for (int k = 0; k < 4; ++k) legs.push_back(d.add_vertex(VertexKind::Boundary));
  if (a == 1) {
    int z = d.add_vertex(VertexKind::Z);
    for (int b : legs) d.add_edge(z, b);
  } else {
    // a = 2 pairs legs (0,3) and (1,2); a = 3 pairs (0,1) and (2,3).
    std::array<int, 4> group = a == 2 ? std::array<int, 4>{0, 1, 1, 0} : std::array<int, 4>{0, 0, 1, 1};
    int z0 = d.add_vertex(VertexKind::Z), z1 = d.add_vertex(VertexKind::Z);
    int x = d.add_vertex(VertexKind::X, Phase(1));
    for (int k = 0; k < 4; ++k) d.add_edge(group[k] == 0 ? z0 : z1, legs[k]);
    d.add_edge(z0, x);
    d.add_edge(x, z1);
  }
  d.set_outputs(legs);
  return d;
}

TBasisTensor materialize_T(int a) {
  TBasisTensor t;
  t.index = a;
  auto vals = evaluate_exact(t_diagram(a));
  for (std::size_t k = 0; k < 16; ++k) {
    auto r = vals.at(k).as_rational();
    if (!r) throw IntegrationError("T-basis entry is not rational");
    t.entries[k] = *r;
  }
  return t;
}

const Rational& SmallTensor::at(const std::vector<int>& idx) const { return data.at(flat_index(shape, idx)); }

Eigen::MatrixXd SmallTensor::matrix() const {
  if (shape.size() != 2) throw std::logic_error(name + " is not a matrix");
  Eigen::MatrixXd m(shape[0], shape[1]);
  for (int i = 0; i < shape[0]; ++i) {
    for (int j = 0; j < shape[1]; ++j) m(i, j) = data[static_cast<std::size_t>(i * shape[1] + j)].get_d();
  }
  return m;
}

std::vector<double> SmallTensor::to_double() const {
  std::vector<double> out;
  for (const auto& x : data) out.push_back(x.get_d());
  return out;
}

nlohmann::json SmallTensor::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& x : data) entries.push_back(x.get_str());
  return {{"name", name}, {"shape", shape}, {"entries", entries}, {"layout", "row-major, indices 1..3"}};
}

nlohmann::json t_tensor_json(const TBasisTensor& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& x : t.entries) entries.push_back(x.get_str());
  return {{"name", "T" + std::to_string(t.index)},
          {"shape", {2, 2, 2, 2}},
          {"legs", {"U", "U_dagger", "U", "U_dagger"}},
          {"entries", entries}};
}

SmallTensor m_matrix() {
  return make_tensor("M", {3, 3}, 4, {1, 1, 1, 1, 1, -1, 1, -1, 1});
}

SmallTensor et_tensor() {
  return make_tensor("ET", {3, 3, 3}, 8,
                     {1, 0, 0, 0, 1, 0, 0, 0, 1,  //
                      0, 1, 0, 1, 0, 0, 0, 0, 0,  //
                      0, 0, 1, 0, 0, 0, 1, 0, 0});
}

SmallTensor ttn_tensor() {
  return make_tensor("T_TTN", {3, 3, 3}, 16,
                     {1, 0, 1, 0, 1, 0, 1, 0, 1,    //
                      1, 0, -1, 0, 1, 0, -1, 0, 1,  //
                      1, 0, 1, 0, 1, 0, 1, 0, 1});
}

SmallTensor em_matrix() {
  return make_tensor("EM", {9, 9}, 4,
                     {3, 1,  1, 0,  0, 0, 0,  0, 0,  //
                      1, 3,  -1, 0, 0, 0, 0,  0, 0,  //
                      1, -1, 3,  0, 0, 0, 0,  0, 0,  //
                      0, 0,  0,  1, 3, 0, 0,  0, 0,  //
                      0, 0,  0,  3, 1, 0, 0,  0, 0,  //
                      0, 0,  0,  -1, 1, 0, 0, 0, 0,  //
                      0, 0,  0,  0, 0, 0, 1,  0, 3,  //
                      0, 0,  0,  0, 0, 0, -1, 0, 1,  //
                      0, 0,  0,  0, 0, 0, 3,  0, 1});
}

Eigen::MatrixXcd DiagramSum::evaluate(const Assignment& assignment) const {
  Eigen::MatrixXcd acc;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    Eigen::MatrixXcd m = zxbp::evaluate(terms[k].second, assignment) * terms[k].first.to_complex();
    if (k == 0) {
      acc = m;
    } else {
      acc += m;
    }
  }
  return acc;
}

ZxDiagram substitute_param(const ZxDiagram& d, int j, const Rational& value) {
  ZxDiagram out = d;
  for (const auto& [v, vx] : d.vertices()) {
    const auto& p = vx.phase.param();
    if (!p || p->id != j) continue;
    out.set_phase(v, vx.phase.without_param() + Phase(Rational(value * p->sign)));
  }
  return out;
}

DiagramSum integrate_single_pair(const ZxDiagram& d, int j) {
  auto plus = d.spiders_with_param(j, 1);
  auto minus = d.spiders_with_param(j, -1);
  if (plus.size() > 1 || minus.size() > 1) {
    throw IntegrationError("parameter " + std::to_string(j) + " occurs more than once with one sign");
  }
  DiagramSum s;
  if (plus.empty() && minus.empty()) {
    s.terms.push_back({ExactScalar::one(), d});
    return s;
  }
  ExactScalar half(q(1, 2));
  s.terms.push_back({half, substitute_param(d, j, 0)});
  s.terms.push_back({half, substitute_param(d, j, 1)});
  return s;
}

namespace {

using EdgeKey = std::tuple<int, int, int>;

std::multiset<EdgeKey> edge_keys(const ZxDiagram& d) {
  std::multiset<EdgeKey> out;
  for (const auto& [eid, e] : d.edges()) {
    out.insert({std::min(e.u, e.v), std::max(e.u, e.v), e.kind == EdgeKind::Plain ? 0 : 1});
  }
  return out;
}

bool same_structure(const ZxDiagram& a, const ZxDiagram& b) {
  if (a.vertices().size() != b.vertices().size()) return false;
  for (const auto& [v, vx] : a.vertices()) {
    if (!b.has_vertex(v)) return false;
    if (b.kind(v) != vx.kind || b.phase(v) != vx.phase) return false;
  }
  return a.inputs() == b.inputs() && a.outputs() == b.outputs() && edge_keys(a) == edge_keys(b);
}

nlohmann::json step(const std::string& what, const std::vector<int>& vertices, const std::string& factor) {
  return {{"step", what}, {"vertices", vertices}, {"factor", factor}};
}

// Rewrites D[pi] into a diagram with the vertices, phases and edges of D[0]
// and the opposite scalar.  u, v carry +-theta_j and w is the X(pi)
// connector of the gradient diagram.
CancellationCertificate certify(const ZxDiagram& d0, const ZxDiagram& dpi, int u, int v, int w, int j,
                                int term) {
  CancellationCertificate cert;
  cert.param = j;
  cert.term = term;
  cert.steps = nlohmann::json::array();
  ZxDiagram a = d0, b = dpi;
  for (int x : {u, v}) {
    if (b.kind(x) != VertexKind::X) continue;
    apply_rule_in_place(a, Rule::ColorChange, {{x}, {}});
    apply_rule_in_place(b, Rule::ColorChange, {{x}, {}});
    cert.steps.push_back(step("colour-change (both terms)", {x}, "1"));
  }
  auto uw = b.edges_between(u, w);
  if (uw.size() != 1 || b.edge(uw[0]).kind != EdgeKind::Plain) return cert;
  ZxDiagram before = b;
  b.remove_edge(uw[0]);
  int p = b.add_vertex(VertexKind::Z, Phase(1));
  b.add_edge(u, p);
  b.add_edge(p, w);
  b.add_to_phase(u, Phase(1));
  cert.steps.push_back(step("unfuse pi", {u, p}, "1"));
  {
    ZxDiagram back = b;
    auto up = back.edges_between(u, p);
    apply_rule_in_place(back, Rule::Fuse, {{}, {up.at(0)}});
    if (!same_structure(back, before) || !(back.scalar() == before.scalar())) return cert;
  }
  Site pi_site{{p, w}, {}};
  if (!matches(b, Rule::PiCopy, pi_site)) return cert;
  ExactScalar f = apply_rule_in_place(b, Rule::PiCopy, pi_site);
  cert.steps.push_back(step(rule_name(Rule::PiCopy), {p, w}, f.str()));
  int fused = -1;
  for (int x : b.neighbors(v)) {
    if (x == w || b.is_boundary(x) || b.kind(x) != VertexKind::Z) continue;
    if (b.phase(x) != Phase(1) || b.degree(x) != 2) continue;
    auto nb = b.neighbors(x);
    if (std::find(nb.begin(), nb.end(), w) == nb.end()) continue;
    auto xv = b.edges_between(x, v);
    if (xv.size() != 1 || b.edge(xv[0]).kind != EdgeKind::Plain) continue;
    apply_rule_in_place(b, Rule::Fuse, {{}, {xv[0]}});
    cert.steps.push_back(step(rule_name(Rule::Fuse), {v, x}, "1"));
    fused = x;
    break;
  }
  if (fused < 0) return cert;
  cert.structural_match = same_structure(a, b) && b.scalar() == -a.scalar();
  return cert;
}

}  // namespace

bool GradientExpectation::verified() const {
  for (const auto& c : certificates) {
    if (!c.verified()) return false;
  }
  return true;
}

nlohmann::json GradientExpectation::to_json() const {
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : certificates) {
    certs.push_back({{"param", c.param},
                     {"term", c.term},
                     {"steps", c.steps},
                     {"structural_match", c.structural_match},
                     {"numeric_residual", c.numeric_residual},
                     {"verified", c.verified()}});
  }
  return {{"value", value.str()}, {"verified", verified()}, {"certificates", certs}};
}

GradientExpectation expectation_of_gradient(const Circuit& c, const Hamiltonian& h, int j) {
  if (j < 0 || j >= c.num_params()) throw CircuitError("no parameter with index " + std::to_string(j));
  GradientExpectation out;
  std::mt19937_64 rng(0x5eed + static_cast<unsigned>(j));
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  Assignment at;
  for (int k = 0; k < c.num_params(); ++k) at[k] = angle(rng);
  std::complex<double> numeric = 0.0;
  auto terms = h.terms(c.n_qubits());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    ZxDiagram gd = gradient_diagram(expectation_diagram(c, terms[t]), j);
    int u = gd.spiders_with_param(j, 1).at(0);
    int v = gd.spiders_with_param(j, -1).at(0);
    int w = gd.vertices().rbegin()->first;
    DiagramSum pair = integrate_single_pair(gd, j);
    const ZxDiagram& d0 = pair.terms.at(0).second;
    const ZxDiagram& dpi = pair.terms.at(1).second;
    CancellationCertificate cert = certify(d0, dpi, u, v, w, j, static_cast<int>(t));
    std::complex<double> z0 = evaluate_scalar(d0, at), zpi = evaluate_scalar(dpi, at);
    cert.numeric_residual = std::abs(z0 + zpi) / std::max(1.0, std::abs(z0));
    numeric += 0.5 * (z0 + zpi);
    out.certificates.push_back(std::move(cert));
  }
  out.value = out.verified() ? ExactScalar::zero() : ExactScalar::floating(numeric);
  return out;
}

double Reconstruction::max_error(const SmallTensor& reference) const {
  auto ref = reference.to_double();
  if (ref.size() != values.size()) return INFINITY;
  double e = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) e = std::max(e, std::abs(ref[k] - values[k]));
  return e;
}

Reconstruction quadrature_m(int K) {
  Motif m;
  m.spiders = {{Phase::param(0), true}, {Phase::param(1), true}};
  m.had_edges = {{0, 1}};
  auto [vals, res] = project(quadrature_of(m, {0, 1}, K), 2);
  return {vals, res};
}

Reconstruction quadrature_et(int K) {
  Motif m;
  m.spiders = {{Phase::param(0), true}, {Phase::param(1), true}, {Phase::param(2), true}, {Phase(), false}};
  m.had_edges = {{3, 0}, {3, 1}, {3, 2}};
  auto [vals, res] = project(quadrature_of(m, {0, 1, 2}, K), 3);
  return {vals, res};
}

Reconstruction quadrature_ttn(int K) {
  // beta on the discarded qubit, alpha and gamma on the kept one; the
  // pi/2 spider is what lc leaves of the target side of the CNOT.
  Motif m;
  m.spiders = {{Phase::param(1), true},
               {Phase::param(0), true},
               {Phase::param(2), true},
               {Phase(), false},
               {Phase(-1, 2), false}};
  m.had_edges = {{1, 3}, {2, 3}, {3, 4}, {0, 4}};
  m.traced = {4};
  auto [vals, res] = project(quadrature_of(m, {0, 1, 2}, K), 3);
  return {vals, res};
}

Reconstruction quadrature_em(int K) {
  // Control c, target chain alpha - beta - gamma, CNOT target node t and the
  // next node on the target wire.  The CNOT carries its sqrt(2) and the
  // outgoing node its internal copy scalar 2.
  Motif m;
  m.spiders = {{Phase(), true},         {Phase(), true}, {Phase::param(0), false},
               {Phase::param(1), false}, {Phase(), false}, {Phase(), true}};
  m.had_edges = {{1, 2}, {2, 3}, {3, 4}, {4, 0}, {4, 5}};
  m.copy_scalar = ExactScalar::sqrt2_pow(1);
  auto [c, res] = project(quadrature_of(m, {0, 1}, K), 3);
  Reconstruction r;
  r.values.assign(81, 0.0);
  r.residual = 2 * res;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int bp = 0; bp < 3; ++bp) {
        r.values[static_cast<std::size_t>((3 * a + b) * 9 + 3 * a + bp)] = 2 * c[static_cast<std::size_t>(9 * a + 3 * b + bp)];
      }
    }
  }
  return r;
}

double t_basis_residual(int K) {
  Motif m;
  m.spiders = {{Phase::param(0), true}};
  Eigen::VectorXcd v = quadrature_of(m, {0}, K);
  std::array<Rational, 16> sum{};
  for (int a = 1; a <= 3; ++a) {
    auto t = materialize_T(a);
    for (int k = 0; k < 16; ++k) sum[k] += t.entries[k];
  }
  double res = 0.0;
  for (int k = 0; k < 16; ++k) res = std::max(res, std::abs(v[k] - sum[k].get_d()));
  return res;
}

}  // namespace zxbp
