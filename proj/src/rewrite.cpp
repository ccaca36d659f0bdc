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

#include "zxbp/rewrite.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace zxbp {

namespace {

const std::vector<std::pair<Rule, std::string>>& rule_names() {
  static const std::vector<std::pair<Rule, std::string>> names = {
      {Rule::Fuse, "f"},
      {Rule::ColorChange, "h"},
      {Rule::IdZ, "i1"},
      {Rule::IdX, "i2"},
      {Rule::PiCopy, "pi-copy"},
      {Rule::Copy, "copy"},
      {Rule::Bialgebra, "bialgebra"},
      {Rule::Hopf, "hopf"},
      {Rule::SelfLoop, "self-loop"},
      {Rule::HadSelfLoop, "had-self-loop"},
      {Rule::LocalComp, "lc"},
      {Rule::IdInsert, "id-insert"},
      {Rule::BoundaryFix, "boundary-fix"},
  };
  return names;
}

bool is_spider(const ZxDiagram& d, int v) { return d.has_vertex(v) && !d.is_boundary(v); }

VertexKind opposite(VertexKind k) { return k == VertexKind::Z ? VertexKind::X : VertexKind::Z; }

bool has_self_loop(const ZxDiagram& d, int v) {
  for (int e : d.incident(v)) {
    if (d.edge(e).u == d.edge(e).v) return true;
  }
  return false;
}

bool odd_edge(const ZxDiagram& d, const Edge& e) {
  int h = e.kind == EdgeKind::Hadamard;
  h += d.kind(e.u) == VertexKind::X;
  h += d.kind(e.v) == VertexKind::X;
  return h % 2 == 1;
}

bool exact_constant(const Phase& p) { return !p.has_param() && p.is_exact(); }

// Edge ids incident to v other than `skip`.
std::vector<int> other_edges(const ZxDiagram& d, int v, int skip) {
  std::vector<int> out;
  for (int e : d.incident(v)) {
    if (e != skip) out.push_back(e);
  }
  return out;
}

int single_edge_between(const ZxDiagram& d, int u, int v) {
  auto es = d.edges_between(u, v);
  return es.size() == 1 ? es[0] : -1;
}

bool edge_ok(const ZxDiagram& d, const Site& s, std::size_t n) {
  if (s.edges.size() != n) return false;
  for (int e : s.edges) {
    if (!d.edges().count(e)) return false;
  }
  return true;
}

bool vertices_ok(const ZxDiagram& d, const Site& s, std::size_t n) {
  if (s.vertices.size() != n) return false;
  for (int v : s.vertices) {
    if (!d.has_vertex(v)) return false;
  }
  return true;
}

bool match_fuse(const ZxDiagram& d, const Site& s) {
  if (!edge_ok(d, s, 1)) return false;
  const Edge& e = d.edge(s.edges[0]);
  if (e.kind != EdgeKind::Plain || e.u == e.v) return false;
  if (!is_spider(d, e.u) || !is_spider(d, e.v)) return false;
  if (d.kind(e.u) != d.kind(e.v)) return false;
  return !(d.phase(e.u).has_param() && d.phase(e.v).has_param());
}

bool match_identity(const ZxDiagram& d, const Site& s, VertexKind k) {
  if (!vertices_ok(d, s, 1)) return false;
  int v = s.vertices[0];
  if (d.kind(v) != k || !d.phase(v).is_zero()) return false;
  return d.incident(v).size() == 2 && !has_self_loop(d, v);
}

bool match_loop(const ZxDiagram& d, const Site& s, EdgeKind k) {
  if (!vertices_ok(d, s, 1) || !edge_ok(d, s, 1)) return false;
  int v = s.vertices[0];
  const Edge& e = d.edge(s.edges[0]);
  return is_spider(d, v) && e.u == v && e.v == v && e.kind == k;
}

bool match_hopf(const ZxDiagram& d, const Site& s) {
  if (!edge_ok(d, s, 2) || s.edges[0] == s.edges[1]) return false;
  const Edge& a = d.edge(s.edges[0]);
  const Edge& b = d.edge(s.edges[1]);
  if (a.u == a.v) return false;
  bool same = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
  if (!same || !is_spider(d, a.u) || !is_spider(d, a.v)) return false;
  return odd_edge(d, a) && odd_edge(d, b);
}

bool match_pi_copy(const ZxDiagram& d, const Site& s) {
  if (!vertices_ok(d, s, 2)) return false;
  int p = s.vertices[0], v = s.vertices[1];
  if (p == v || !is_spider(d, p) || !is_spider(d, v)) return false;
  if (d.kind(p) != opposite(d.kind(v))) return false;
  if (!d.phase(p).is_pauli() || d.phase(p).constant() != 1) return false;
  if (d.incident(p).size() != 2 || has_self_loop(d, p)) return false;
  int e = single_edge_between(d, p, v);
  if (e < 0 || d.edge(e).kind != EdgeKind::Plain) return false;
  if (!exact_constant(d.phase(v)) || has_self_loop(d, v)) return false;
  return true;
}

bool match_copy(const ZxDiagram& d, const Site& s) {
  if (!vertices_ok(d, s, 2)) return false;
  int p = s.vertices[0], v = s.vertices[1];
  if (p == v || !is_spider(d, p) || !is_spider(d, v)) return false;
  if (d.kind(p) != opposite(d.kind(v))) return false;
  if (!d.phase(p).is_pauli() || d.incident(p).size() != 1 || has_self_loop(d, p)) return false;
  int e = single_edge_between(d, p, v);
  if (e < 0 || d.edge(e).kind != EdgeKind::Plain) return false;
  if (has_self_loop(d, v)) return false;
  if (d.phase(p).constant() == 1 && !exact_constant(d.phase(v))) return false;
  return true;
}

bool match_bialgebra(const ZxDiagram& d, const Site& s) {
  if (!edge_ok(d, s, 1)) return false;
  const Edge& e = d.edge(s.edges[0]);
  if (e.kind != EdgeKind::Plain || e.u == e.v) return false;
  if (!is_spider(d, e.u) || !is_spider(d, e.v)) return false;
  if (d.kind(e.u) != opposite(d.kind(e.v))) return false;
  if (!d.phase(e.u).is_zero() || !d.phase(e.v).is_zero()) return false;
  if (single_edge_between(d, e.u, e.v) < 0) return false;
  return !has_self_loop(d, e.u) && !has_self_loop(d, e.v);
}

bool match_lc(const ZxDiagram& d, const Site& s) {
  if (!vertices_ok(d, s, 1)) return false;
  int v = s.vertices[0];
  if (!is_spider(d, v) || d.kind(v) != VertexKind::Z) return false;
  if (!d.phase(v).is_proper_clifford() || has_self_loop(d, v)) return false;
  auto nb = d.neighbors(v);
  if (nb.size() != d.incident(v).size()) return false;  // parallel edges
  for (int e : d.incident(v)) {
    if (d.edge(e).kind != EdgeKind::Hadamard) return false;
  }
  for (int w : nb) {
    if (!is_spider(d, w) || d.kind(w) != VertexKind::Z) return false;
  }
  for (std::size_t a = 0; a < nb.size(); ++a) {
    for (std::size_t b = a + 1; b < nb.size(); ++b) {
      auto es = d.edges_between(nb[a], nb[b]);
      if (es.size() > 1) return false;
      if (es.size() == 1 && d.edge(es[0]).kind != EdgeKind::Hadamard) return false;
    }
  }
  return true;
}

bool match_id_insert(const ZxDiagram& d, const Site& s) {
  if (!edge_ok(d, s, 1)) return false;
  const Edge& e = d.edge(s.edges[0]);
  if (e.kind != EdgeKind::Plain || e.u == e.v) return false;
  return is_spider(d, e.u) && is_spider(d, e.v) && d.kind(e.u) == VertexKind::Z &&
         d.kind(e.v) == VertexKind::Z;
}

bool match_boundary_fix(const ZxDiagram& d, const Site& s) {
  if (!vertices_ok(d, s, 1)) return false;
  int b = s.vertices[0];
  return d.is_boundary(b) && d.incident(b).size() == 1;
}

// Places a new spider (kind, phase) on edge e, next to vertex `at`; the
// segment touching `at` is plain and the far segment keeps e's kind.
int split_edge(ZxDiagram& d, int e, int at, VertexKind kind, const Phase& phase) {
  Edge ed = d.edge(e);
  int far = ed.u == at ? ed.v : ed.u;
  d.remove_edge(e);
  int q = d.add_vertex(kind, phase);
  d.add_edge(at, q, EdgeKind::Plain);
  d.add_edge(q, far, ed.kind);
  return q;
}

ExactScalar do_fuse(ZxDiagram& d, const Site& s) {
  int eid = s.edges[0];
  Edge e = d.edge(eid);
  int keep = std::min(e.u, e.v), gone = std::max(e.u, e.v);
  d.add_to_phase(keep, d.phase(gone));
  d.remove_edge(eid);
  for (int f : std::vector<int>(d.incident(gone).begin(), d.incident(gone).end())) {
    Edge ed = d.edge(f);
    int a = ed.u == gone ? keep : ed.u;
    int b = ed.v == gone ? keep : ed.v;
    d.add_edge(a, b, ed.kind);
  }
  d.remove_vertex(gone);
  return ExactScalar::one();
}

ExactScalar do_color_change(ZxDiagram& d, const Site& s) {
  int v = s.vertices[0];
  d.set_kind(v, opposite(d.kind(v)));
  for (int e : d.incident(v)) {
    const Edge& ed = d.edge(e);
    if (ed.u != ed.v) d.set_edge_kind(e, toggle(ed.kind));
  }
  return ExactScalar::one();
}

ExactScalar do_identity(ZxDiagram& d, const Site& s) {
  int v = s.vertices[0];
  std::vector<int> es(d.incident(v).begin(), d.incident(v).end());
  int a = d.other_end(es[0], v), b = d.other_end(es[1], v);
  EdgeKind k = combine(d.edge(es[0]).kind, d.edge(es[1]).kind);
  d.remove_vertex(v);
  d.add_edge(a, b, k);
  return ExactScalar::one();
}

ExactScalar do_self_loop(ZxDiagram& d, const Site& s) {
  d.remove_edge(s.edges[0]);
  return ExactScalar::one();
}

ExactScalar do_had_self_loop(ZxDiagram& d, const Site& s) {
  d.remove_edge(s.edges[0]);
  d.add_to_phase(s.vertices[0], Phase(1, 1));
  ExactScalar f = ExactScalar::sqrt2_pow(-1);
  d.multiply_scalar(f);
  return f;
}

ExactScalar do_hopf(ZxDiagram& d, const Site& s) {
  d.remove_edge(s.edges[0]);
  d.remove_edge(s.edges[1]);
  ExactScalar f = ExactScalar::sqrt2_pow(-2);
  d.multiply_scalar(f);
  return f;
}

ExactScalar do_pi_copy(ZxDiagram& d, const Site& s) {
  int p = s.vertices[0], v = s.vertices[1];
  int pv = single_edge_between(d, p, v);
  int pw = -1;
  for (int e : d.incident(p)) {
    if (e != pv) pw = e;
  }
  int w = d.other_end(pw, p);
  EdgeKind kw = d.edge(pw).kind;
  VertexKind pk = d.kind(p);
  Phase alpha = d.phase(v);
  std::vector<int> rest = other_edges(d, v, pv);
  d.remove_vertex(p);
  for (int e : rest) split_edge(d, e, v, pk, Phase(1, 1));
  d.add_edge(v, w, kw);
  d.set_phase(v, -alpha);
  ExactScalar f = ExactScalar::phase(alpha.constant());
  d.multiply_scalar(f);
  return f;
}

ExactScalar do_copy(ZxDiagram& d, const Site& s) {
  int p = s.vertices[0], v = s.vertices[1];
  int pv = single_edge_between(d, p, v);
  VertexKind pk = d.kind(p);
  Phase pp = d.phase(p);
  std::vector<int> rest = other_edges(d, v, pv);
  int n = static_cast<int>(rest.size());
  ExactScalar f = ExactScalar::sqrt2_pow(1 - n);
  if (pp.constant() == 1) f *= ExactScalar::phase(d.phase(v).constant());
  for (int e : rest) {
    Edge ed = d.edge(e);
    int x = ed.u == v ? ed.v : ed.u;
    int q = d.add_vertex(pk, pp);
    d.add_edge(q, x, ed.kind);
  }
  d.remove_vertex(p);
  d.remove_vertex(v);
  d.multiply_scalar(f);
  return f;
}

ExactScalar do_bialgebra(ZxDiagram& d, const Site& s) {
  int eid = s.edges[0];
  Edge e = d.edge(eid);
  int u = e.u, v = e.v;
  std::vector<int> ue = other_edges(d, u, eid), ve = other_edges(d, v, eid);
  int m = static_cast<int>(ue.size()), k = static_cast<int>(ve.size());
  VertexKind uk = d.kind(u), vk = d.kind(v);
  std::vector<int> us, vs;
  for (int f : ue) {
    Edge ed = d.edge(f);
    int x = ed.u == u ? ed.v : ed.u;
    int a = d.add_vertex(vk);
    d.add_edge(a, x, ed.kind);
    us.push_back(a);
  }
  for (int f : ve) {
    Edge ed = d.edge(f);
    int y = ed.u == v ? ed.v : ed.u;
    int b = d.add_vertex(uk);
    d.add_edge(b, y, ed.kind);
    vs.push_back(b);
  }
  for (int a : us) {
    for (int b : vs) d.add_edge(a, b, EdgeKind::Plain);
  }
  d.remove_vertex(u);
  d.remove_vertex(v);
  ExactScalar f = ExactScalar::sqrt2_pow((m - 1) * (k - 1));
  d.multiply_scalar(f);
  return f;
}

ExactScalar do_lc(ZxDiagram& d, const Site& s) {
  int v = s.vertices[0];
  Phase phi = d.phase(v);
  auto nb = d.neighbors(v);
  int added = 0, removed = 0;
  for (std::size_t a = 0; a < nb.size(); ++a) {
    for (std::size_t b = a + 1; b < nb.size(); ++b) {
      auto es = d.edges_between(nb[a], nb[b]);
      if (es.empty()) {
        d.add_edge(nb[a], nb[b], EdgeKind::Hadamard);
        ++added;
      } else {
        d.remove_edge(es[0]);
        ++removed;
      }
    }
  }
  for (int w : nb) d.add_to_phase(w, -phi);
  d.remove_vertex(v);
  int sign = phi.constant() == Rational(1, 2) ? 1 : -1;
  ExactScalar f = ExactScalar(GaussRational(1, sign)) *
                  ExactScalar::sqrt2_pow(added - removed - static_cast<int>(nb.size()));
  d.multiply_scalar(f);
  return f;
}

ExactScalar do_id_insert(ZxDiagram& d, const Site& s) {
  Edge e = d.edge(s.edges[0]);
  d.remove_edge(s.edges[0]);
  int w = d.add_vertex(VertexKind::Z);
  d.add_edge(e.u, w, EdgeKind::Hadamard);
  d.add_edge(w, e.v, EdgeKind::Hadamard);
  return ExactScalar::one();
}

ExactScalar do_boundary_fix(ZxDiagram& d, const Site& s) {
  int b = s.vertices[0];
  int e = *d.incident(b).begin();
  Edge ed = d.edge(e);
  int x = ed.u == b ? ed.v : ed.u;
  d.remove_edge(e);
  int w = d.add_vertex(VertexKind::Z);
  d.add_edge(b, w, toggle(ed.kind));
  d.add_edge(w, x, EdgeKind::Hadamard);
  return ExactScalar::one();
}

}  // namespace

std::string rule_name(Rule r) {
  for (const auto& [rule, name] : rule_names()) {
    if (rule == r) return name;
  }
  return "?";
}

Rule rule_from_name(const std::string& name) {
  for (const auto& [rule, n] : rule_names()) {
    if (n == name) return rule;
  }
  throw RewriteError("unknown rule " + name);
}

bool matches(const ZxDiagram& d, Rule r, const Site& s) {
  switch (r) {
    case Rule::Fuse:
      return match_fuse(d, s);
    case Rule::ColorChange:
      return vertices_ok(d, s, 1) && is_spider(d, s.vertices[0]);
    case Rule::IdZ:
      return match_identity(d, s, VertexKind::Z);
    case Rule::IdX:
      return match_identity(d, s, VertexKind::X);
    case Rule::PiCopy:
      return match_pi_copy(d, s);
    case Rule::Copy:
      return match_copy(d, s);
    case Rule::Bialgebra:
      return match_bialgebra(d, s);
    case Rule::Hopf:
      return match_hopf(d, s);
    case Rule::SelfLoop:
      return match_loop(d, s, EdgeKind::Plain);
    case Rule::HadSelfLoop:
      return match_loop(d, s, EdgeKind::Hadamard);
    case Rule::LocalComp:
      return match_lc(d, s);
    case Rule::IdInsert:
      return match_id_insert(d, s);
    case Rule::BoundaryFix:
      return match_boundary_fix(d, s);
  }
  return false;
}

std::vector<Site> find_sites(const ZxDiagram& d, Rule r) {
  std::vector<Site> cand;
  switch (r) {
    case Rule::Fuse:
    case Rule::Bialgebra:
    case Rule::IdInsert:
      for (const auto& [eid, e] : d.edges()) cand.push_back({{}, {eid}});
      break;
    case Rule::ColorChange:
    case Rule::IdZ:
    case Rule::IdX:
    case Rule::LocalComp:
    case Rule::BoundaryFix:
      for (const auto& [v, vx] : d.vertices()) cand.push_back({{v}, {}});
      break;
    case Rule::SelfLoop:
    case Rule::HadSelfLoop:
      for (const auto& [eid, e] : d.edges()) {
        if (e.u == e.v) cand.push_back({{e.u}, {eid}});
      }
      break;
    case Rule::Hopf:
      for (const auto& [eid, e] : d.edges()) {
        for (int f : d.edges_between(e.u, e.v)) {
          if (f > eid) cand.push_back({{}, {eid, f}});
        }
      }
      break;
    case Rule::PiCopy:
    case Rule::Copy:
      for (const auto& [p, vx] : d.vertices()) {
        if (vx.kind == VertexKind::Boundary) continue;
        for (int v : d.neighbors(p)) cand.push_back({{p, v}, {}});
      }
      break;
  }
  std::vector<Site> out;
  for (auto& s : cand) {
    if (matches(d, r, s)) out.push_back(std::move(s));
  }
  return out;
}

ExactScalar apply_rule_in_place(ZxDiagram& d, Rule r, const Site& s) {
  if (!matches(d, r, s)) throw RewriteError("pattern mismatch for rule " + rule_name(r));
  switch (r) {
    case Rule::Fuse:
      return do_fuse(d, s);
    case Rule::ColorChange:
      return do_color_change(d, s);
    case Rule::IdZ:
    case Rule::IdX:
      return do_identity(d, s);
    case Rule::PiCopy:
      return do_pi_copy(d, s);
    case Rule::Copy:
      return do_copy(d, s);
    case Rule::Bialgebra:
      return do_bialgebra(d, s);
    case Rule::Hopf:
      return do_hopf(d, s);
    case Rule::SelfLoop:
      return do_self_loop(d, s);
    case Rule::HadSelfLoop:
      return do_had_self_loop(d, s);
    case Rule::LocalComp:
      return do_lc(d, s);
    case Rule::IdInsert:
      return do_id_insert(d, s);
    case Rule::BoundaryFix:
      return do_boundary_fix(d, s);
  }
  throw RewriteError("unknown rule");
}

ZxDiagram apply_rule(const ZxDiagram& d, Rule r, const Site& s, std::vector<TraceEntry>* trace) {
  ZxDiagram out = d;
  ExactScalar f = apply_rule_in_place(out, r, s);
  if (trace) trace->push_back({r, s, f});
  return out;
}

GraphLikeCert check_graph_like(const ZxDiagram& d) {
  GraphLikeCert c;
  c.only_z = true;
  c.hadamard_only = true;
  c.no_parallel_or_loops = true;
  c.boundaries_ok = true;
  for (const auto& [v, vx] : d.vertices()) {
    if (vx.kind == VertexKind::X) c.only_z = false;
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [eid, e] : d.edges()) {
    if (e.u == e.v) {
      c.no_parallel_or_loops = false;
      continue;
    }
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) c.no_parallel_or_loops = false;
    if (!d.is_boundary(e.u) && !d.is_boundary(e.v) && e.kind != EdgeKind::Hadamard) {
      c.hadamard_only = false;
    }
  }
  std::map<int, int> boundary_count;
  for (const auto& [v, vx] : d.vertices()) {
    if (vx.kind != VertexKind::Boundary) continue;
    auto nb = d.neighbors(v);
    if (nb.size() != 1 || d.incident(v).size() != 1 || d.kind(nb[0]) != VertexKind::Z) {
      c.boundaries_ok = false;
      continue;
    }
    if (++boundary_count[nb[0]] > 1) c.boundaries_ok = false;
  }
  return c;
}

namespace {

// One normalization step; returns false once nothing applies.
bool normalize_step(ZxDiagram& d, std::vector<TraceEntry>* trace) {
  auto apply = [&](Rule r, const Site& s) {
    ExactScalar f = apply_rule_in_place(d, r, s);
    if (trace) trace->push_back({r, s, f});
    return true;
  };
  for (const auto& [v, vx] : d.vertices()) {
    if (vx.kind == VertexKind::X) return apply(Rule::ColorChange, {{v}, {}});
  }
  for (const auto& [eid, e] : d.edges()) {
    Site s{{}, {eid}};
    if (match_fuse(d, s)) return apply(Rule::Fuse, s);
  }
  for (const auto& [v, vx] : d.vertices()) {
    Site s{{v}, {}};
    if (!match_identity(d, s, VertexKind::Z)) continue;
    std::vector<int> es(d.incident(v).begin(), d.incident(v).end());
    int a = d.other_end(es[0], v), b = d.other_end(es[1], v);
    if (d.is_boundary(a) || d.is_boundary(b)) continue;
    EdgeKind k = combine(d.edge(es[0]).kind, d.edge(es[1]).kind);
    if (k == EdgeKind::Plain && a != b && d.phase(a).has_param() && d.phase(b).has_param()) continue;
    return apply(Rule::IdZ, s);
  }
  for (const auto& [eid, e] : d.edges()) {
    if (e.u != e.v) continue;
    Site s{{e.u}, {eid}};
    return apply(e.kind == EdgeKind::Plain ? Rule::SelfLoop : Rule::HadSelfLoop, s);
  }
  for (const auto& [eid, e] : d.edges()) {
    if (e.u == e.v) continue;
    for (int f : d.edges_between(e.u, e.v)) {
      if (f == eid) continue;
      Site s{{}, {eid, f}};
      if (match_hopf(d, s)) return apply(Rule::Hopf, s);
    }
  }
  for (const auto& [eid, e] : d.edges()) {
    Site s{{}, {eid}};
    if (match_id_insert(d, s)) return apply(Rule::IdInsert, s);
  }
  std::map<int, int> boundary_count;
  for (const auto& [v, vx] : d.vertices()) {
    if (vx.kind != VertexKind::Boundary) continue;
    int x = d.neighbors(v).empty() ? -1 : d.neighbors(v)[0];
    bool fix = x < 0 || d.is_boundary(x) || ++boundary_count[x] > 1;
    if (fix) return apply(Rule::BoundaryFix, {{v}, {}});
  }
  return false;
}

}  // namespace

std::pair<ZxDiagram, GraphLikeCert> to_graph_like(const ZxDiagram& d,
                                                  std::vector<TraceEntry>* trace) {
  ZxDiagram g = d;
  while (normalize_step(g, trace)) {
  }
  return {g, check_graph_like(g)};
}

ZxDiagram local_complement(const ZxDiagram& d, int v, std::vector<TraceEntry>* trace) {
  return apply_rule(d, Rule::LocalComp, {{v}, {}}, trace);
}

ZxDiagram remove_proper_cliffords(const ZxDiagram& d, std::vector<TraceEntry>* trace) {
  ZxDiagram g = d;
  while (true) {
    bool done_lc = false;
    for (const auto& [v, vx] : g.vertices()) {
      Site s{{v}, {}};
      if (!match_lc(g, s)) continue;
      ExactScalar f = apply_rule_in_place(g, Rule::LocalComp, s);
      if (trace) trace->push_back({Rule::LocalComp, s, f});
      done_lc = true;
      break;
    }
    if (done_lc) continue;
    // lc can leave two-legged phase-free spiders behind.
    bool changed = false;
    while (normalize_step(g, trace)) changed = true;
    if (!changed) break;
  }
  return g;
}

nlohmann::json trace_to_json(const std::vector<TraceEntry>& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : trace) {
    nlohmann::json f;
    auto m = t.factor.as_monomial();
    if (m) {
      f = {{"re", m->first.re.get_str()}, {"im", m->first.im.get_str()}, {"half_exp", m->second}};
    } else {
      f = t.factor.str();
    }
    out.push_back({{"rule", rule_name(t.rule)},
                   {"vertices", t.site.vertices},
                   {"edges", t.site.edges},
                   {"factor", f}});
  }
  return out;
}

}  // namespace zxbp
