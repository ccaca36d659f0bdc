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

#include "zxbp/diagram.hpp"

#include <algorithm>

namespace zxbp {

std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Boundary:
      return "B";
    case VertexKind::Z:
      return "Z";
    default:
      return "X";
  }
}

std::string to_string(EdgeKind k) { return k == EdgeKind::Plain ? "plain" : "had"; }

int ZxDiagram::add_vertex(VertexKind kind, Phase phase) {
  int id = next_vertex_;
  add_vertex_with_id(id, kind, std::move(phase));
  return id;
}

void ZxDiagram::add_vertex_with_id(int id, VertexKind kind, Phase phase) {
  if (id < 0) throw DiagramError("negative vertex id");
  if (vertices_.count(id)) throw DiagramError("duplicate vertex id " + std::to_string(id));
  if (kind == VertexKind::Boundary) phase = Phase();
  vertices_[id] = Vertex{kind, std::move(phase)};
  incidence_[id];
  next_vertex_ = std::max(next_vertex_, id + 1);
}

int ZxDiagram::add_edge(int u, int v, EdgeKind kind) {
  if (!has_vertex(u) || !has_vertex(v)) throw DiagramError("dangling edge reference");
  int id = next_edge_++;
  edges_[id] = Edge{u, v, kind};
  incidence_[u].insert(id);
  incidence_[v].insert(id);
  return id;
}

void ZxDiagram::remove_edge(int eid) {
  auto it = edges_.find(eid);
  if (it == edges_.end()) throw DiagramError("no such edge");
  incidence_[it->second.u].erase(eid);
  incidence_[it->second.v].erase(eid);
  edges_.erase(it);
}

void ZxDiagram::remove_vertex(int v) {
  if (!has_vertex(v)) throw DiagramError("no such vertex");
  std::vector<int> inc(incidence_[v].begin(), incidence_[v].end());
  for (int e : inc) remove_edge(e);
  vertices_.erase(v);
  incidence_.erase(v);
  inputs_.erase(std::remove(inputs_.begin(), inputs_.end(), v), inputs_.end());
  outputs_.erase(std::remove(outputs_.begin(), outputs_.end(), v), outputs_.end());
}

const Vertex& ZxDiagram::vertex(int v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw DiagramError("no such vertex " + std::to_string(v));
  return it->second;
}

void ZxDiagram::set_kind(int v, VertexKind k) {
  if (!has_vertex(v)) throw DiagramError("no such vertex");
  vertices_[v].kind = k;
}

void ZxDiagram::set_phase(int v, Phase p) {
  if (!has_vertex(v)) throw DiagramError("no such vertex");
  vertices_[v].phase = std::move(p);
}

void ZxDiagram::add_to_phase(int v, const Phase& p) {
  if (!has_vertex(v)) throw DiagramError("no such vertex");
  vertices_[v].phase = vertices_[v].phase + p;
}

const Edge& ZxDiagram::edge(int eid) const {
  auto it = edges_.find(eid);
  if (it == edges_.end()) throw DiagramError("no such edge");
  return it->second;
}

void ZxDiagram::set_edge_kind(int eid, EdgeKind k) {
  auto it = edges_.find(eid);
  if (it == edges_.end()) throw DiagramError("no such edge");
  it->second.kind = k;
}

const std::set<int>& ZxDiagram::incident(int v) const {
  auto it = incidence_.find(v);
  if (it == incidence_.end()) throw DiagramError("no such vertex " + std::to_string(v));
  return it->second;
}

int ZxDiagram::degree(int v) const {
  int d = 0;
  for (int e : incident(v)) d += edges_.at(e).u == edges_.at(e).v ? 2 : 1;
  return d;
}

std::vector<int> ZxDiagram::neighbors(int v) const {
  std::set<int> out;
  for (int e : incident(v)) {
    const Edge& ed = edges_.at(e);
    int w = ed.u == v ? ed.v : ed.u;
    if (w != v) out.insert(w);
  }
  return {out.begin(), out.end()};
}

std::vector<int> ZxDiagram::edges_between(int u, int v) const {
  std::vector<int> out;
  for (int e : incident(u)) {
    const Edge& ed = edges_.at(e);
    if ((ed.u == u && ed.v == v) || (ed.u == v && ed.v == u)) out.push_back(e);
  }
  return out;
}

int ZxDiagram::other_end(int eid, int v) const {
  const Edge& ed = edge(eid);
  if (ed.u == v) return ed.v;
  if (ed.v == v) return ed.u;
  throw DiagramError("edge not incident to vertex");
}

bool ZxDiagram::touches_boundary(int v) const {
  for (int w : neighbors(v)) {
    if (is_boundary(w)) return true;
  }
  return false;
}

std::size_t ZxDiagram::num_spiders() const {
  std::size_t n = 0;
  for (const auto& [id, vx] : vertices_) n += vx.kind != VertexKind::Boundary;
  return n;
}

std::set<int> ZxDiagram::params() const {
  std::set<int> out;
  for (const auto& [id, vx] : vertices_) {
    if (vx.phase.param()) out.insert(vx.phase.param()->id);
  }
  return out;
}

std::vector<int> ZxDiagram::spiders_with_param(int id, int sign) const {
  std::vector<int> out;
  for (const auto& [v, vx] : vertices_) {
    const auto& p = vx.phase.param();
    if (p && p->id == id && p->sign == sign) out.push_back(v);
  }
  return out;
}

void ZxDiagram::validate() const {
  std::set<int> seen;
  auto check = [&](const std::vector<int>& list) {
    for (int b : list) {
      if (!has_vertex(b)) throw DiagramError("boundary references missing vertex");
      if (!is_boundary(b)) throw DiagramError("boundary list references a spider");
      if (!seen.insert(b).second) throw DiagramError("duplicate boundary attachment");
      if (degree(b) != 1) throw DiagramError("boundary vertex must have exactly one edge");
    }
  };
  check(inputs_);
  check(outputs_);
  for (const auto& [id, vx] : vertices_) {
    if (vx.kind == VertexKind::Boundary && !seen.count(id)) {
      throw DiagramError("boundary vertex not listed as input or output");
    }
  }
}

ZxDiagram build(const std::vector<SpiderSpec>& spiders, const std::vector<EdgeSpec>& edges,
                const std::vector<int>& inputs, const std::vector<int>& outputs,
                const ExactScalar& scalar) {
  ZxDiagram d;
  for (const auto& s : spiders) d.add_vertex_with_id(s.id, s.kind, s.phase);
  for (const auto& e : edges) d.add_edge(e.u, e.v, e.kind);
  d.set_inputs(inputs);
  d.set_outputs(outputs);
  d.set_scalar(scalar);
  d.validate();
  return d;
}

ZxDiagram identity_diagram(int n) {
  ZxDiagram d;
  std::vector<int> in, out;
  for (int q = 0; q < n; ++q) {
    int a = d.add_vertex(VertexKind::Boundary);
    int b = d.add_vertex(VertexKind::Boundary);
    d.add_edge(a, b);
    in.push_back(a);
    out.push_back(b);
  }
  d.set_inputs(in);
  d.set_outputs(out);
  return d;
}

ZxDiagram relabel(const ZxDiagram& d, int offset) {
  ZxDiagram r;
  for (const auto& [id, vx] : d.vertices()) r.add_vertex_with_id(id + offset, vx.kind, vx.phase);
  for (const auto& [eid, e] : d.edges()) r.add_edge(e.u + offset, e.v + offset, e.kind);
  std::vector<int> in, out;
  for (int b : d.inputs()) in.push_back(b + offset);
  for (int b : d.outputs()) out.push_back(b + offset);
  r.set_inputs(in);
  r.set_outputs(out);
  r.set_scalar(d.scalar());
  return r;
}

namespace {

// Copies every vertex and edge of src (ids unchanged) into dst.
void merge_into(ZxDiagram& dst, const ZxDiagram& src) {
  for (const auto& [id, vx] : src.vertices()) dst.add_vertex_with_id(id, vx.kind, vx.phase);
  for (const auto& [eid, e] : src.edges()) dst.add_edge(e.u, e.v, e.kind);
  dst.multiply_scalar(src.scalar());
}

}  // namespace

ZxDiagram compose(const ZxDiagram& d1, const ZxDiagram& d2) {
  if (d1.outputs().size() != d2.inputs().size()) throw DiagramError("arity mismatch in compose");
  ZxDiagram r = relabel(d1, 0);
  ZxDiagram s = relabel(d2, d1.next_vertex_id());
  merge_into(r, s);
  std::vector<int> outs = r.outputs();
  std::vector<int> ins = s.inputs();
  for (std::size_t k = 0; k < outs.size(); ++k) {
    int o = outs[k];
    int p = ins[k];
    int eo = *r.incident(o).begin();
    int ep = *r.incident(p).begin();
    int x = r.other_end(eo, o);
    int y = r.other_end(ep, p);
    EdgeKind kind = combine(r.edge(eo).kind, r.edge(ep).kind);
    if (x == p && y == o) throw DiagramError("compose produces a closed loop of bare wire");
    r.remove_vertex(o);
    r.remove_vertex(p);
    if (x == p) x = y;
    if (y == o) y = x;
    r.add_edge(x, y, kind);
  }
  std::vector<int> in = d1.inputs();
  r.set_inputs(in);
  r.set_outputs(s.outputs());
  return r;
}

ZxDiagram tensor(const ZxDiagram& d1, const ZxDiagram& d2) {
  ZxDiagram r = relabel(d1, 0);
  ZxDiagram s = relabel(d2, d1.next_vertex_id());
  merge_into(r, s);
  std::vector<int> in = r.inputs(), out = r.outputs();
  in.insert(in.end(), s.inputs().begin(), s.inputs().end());
  out.insert(out.end(), s.outputs().begin(), s.outputs().end());
  r.set_inputs(in);
  r.set_outputs(out);
  return r;
}

ZxDiagram adjoint(const ZxDiagram& d) {
  ZxDiagram r = relabel(d, 0);
  for (const auto& [id, vx] : d.vertices()) r.set_phase(id, -vx.phase);
  r.set_inputs(d.outputs());
  r.set_outputs(d.inputs());
  r.set_scalar(d.scalar().conj());
  return r;
}

}  // namespace zxbp
