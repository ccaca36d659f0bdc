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

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "zxbp/exact_scalar.hpp"
#include "zxbp/phase.hpp"

namespace zxbp {

enum class VertexKind { Boundary, Z, X };
enum class EdgeKind { Plain, Hadamard };

inline EdgeKind toggle(EdgeKind k) {
  return k == EdgeKind::Plain ? EdgeKind::Hadamard : EdgeKind::Plain;
}
// Kind of the edge obtained by joining two edges end to end.
inline EdgeKind combine(EdgeKind a, EdgeKind b) { return a == b ? EdgeKind::Plain : EdgeKind::Hadamard; }

std::string to_string(VertexKind k);
std::string to_string(EdgeKind k);

struct Vertex {
  VertexKind kind = VertexKind::Z;
  Phase phase;
};

struct Edge {
  int u = 0;
  int v = 0;
  EdgeKind kind = EdgeKind::Plain;
};

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Open graph of Z/X spiders.  Boundaries are vertices of kind Boundary with
// exactly one incident edge; inputs and outputs list them in order.
class ZxDiagram {
 public:
  int add_vertex(VertexKind kind, Phase phase = {});
  void add_vertex_with_id(int id, VertexKind kind, Phase phase = {});
  int add_edge(int u, int v, EdgeKind kind = EdgeKind::Plain);
  void remove_edge(int eid);
  void remove_vertex(int v);

  bool has_vertex(int v) const { return vertices_.count(v) != 0; }
  const Vertex& vertex(int v) const;
  VertexKind kind(int v) const { return vertex(v).kind; }
  const Phase& phase(int v) const { return vertex(v).phase; }
  void set_kind(int v, VertexKind k);
  void set_phase(int v, Phase p);
  void add_to_phase(int v, const Phase& p);

  const std::map<int, Vertex>& vertices() const { return vertices_; }
  const std::map<int, Edge>& edges() const { return edges_; }
  const Edge& edge(int eid) const;
  void set_edge_kind(int eid, EdgeKind k);

  // Incident edge ids; a self-loop is listed once.
  const std::set<int>& incident(int v) const;
  // Number of edge ends at v (a self-loop counts twice).
  int degree(int v) const;
  // Distinct neighbours other than v itself.
  std::vector<int> neighbors(int v) const;
  std::vector<int> edges_between(int u, int v) const;
  int other_end(int eid, int v) const;
  bool is_boundary(int v) const { return kind(v) == VertexKind::Boundary; }
  bool touches_boundary(int v) const;

  const std::vector<int>& inputs() const { return inputs_; }
  const std::vector<int>& outputs() const { return outputs_; }
  void set_inputs(std::vector<int> in) { inputs_ = std::move(in); }
  void set_outputs(std::vector<int> out) { outputs_ = std::move(out); }

  const ExactScalar& scalar() const { return scalar_; }
  void set_scalar(ExactScalar s) { scalar_ = std::move(s); }
  void multiply_scalar(const ExactScalar& s) { scalar_ *= s; }

  std::size_t num_spiders() const;
  // Parameter ids referenced by spider phases.
  std::set<int> params() const;
  // Spiders whose phase references parameter id with the given sign.
  std::vector<int> spiders_with_param(int id, int sign) const;
  int next_vertex_id() const { return next_vertex_; }

  // Checks boundary bookkeeping; throws DiagramError on violation.
  void validate() const;

 private:
  std::map<int, Vertex> vertices_;
  std::map<int, Edge> edges_;
  std::map<int, std::set<int>> incidence_;
  std::vector<int> inputs_;
  std::vector<int> outputs_;
  ExactScalar scalar_ = ExactScalar::one();
  int next_vertex_ = 0;
  int next_edge_ = 0;
};

struct SpiderSpec {
  int id = 0;
  VertexKind kind = VertexKind::Z;
  Phase phase;
};

struct EdgeSpec {
  int u = 0;
  int v = 0;
  EdgeKind kind = EdgeKind::Plain;
};

ZxDiagram build(const std::vector<SpiderSpec>& spiders, const std::vector<EdgeSpec>& edges,
                const std::vector<int>& inputs, const std::vector<int>& outputs,
                const ExactScalar& scalar = ExactScalar::one());

ZxDiagram identity_diagram(int n);
// Outputs of d1 are wired to inputs of d2.
ZxDiagram compose(const ZxDiagram& d1, const ZxDiagram& d2);
ZxDiagram tensor(const ZxDiagram& d1, const ZxDiagram& d2);
ZxDiagram adjoint(const ZxDiagram& d);
// Copy of d with every vertex id shifted by offset.
ZxDiagram relabel(const ZxDiagram& d, int offset);

}  // namespace zxbp
