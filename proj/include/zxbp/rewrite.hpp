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

#include <json.hpp>
#include <string>
#include <vector>

#include "zxbp/diagram.hpp"

namespace zxbp {

enum class Rule {
  Fuse,          // f: two same-colour spiders joined by a plain edge
  ColorChange,   // h
  IdZ,           // i1: Z(0) with two legs
  IdX,           // i2: X(0) with two legs
  PiCopy,        // push a two-legged pi spider through an opposite-colour spider
  Copy,          // opposite-colour 0/pi state copied through a spider
  Bialgebra,
  Hopf,          // two parallel edges whose Hadamard count is odd
  SelfLoop,      // plain self-loop
  HadSelfLoop,   // Hadamard self-loop
  LocalComp,     // lc
  IdInsert,      // plain edge -> Hadamard, Z(0), Hadamard (used by normalization)
  BoundaryFix,   // Z(0) spider inserted at a boundary (used by normalization)
};

std::string rule_name(Rule r);
Rule rule_from_name(const std::string& name);

// Where a rule applies.  Vertex and edge roles per rule:
//   Fuse: edge = the plain edge (the higher-id end is merged into the lower).
//   ColorChange, IdZ, IdX, SelfLoop, HadSelfLoop, LocalComp: vertices = {v};
//     SelfLoop/HadSelfLoop also take edge = the loop.
//   PiCopy, Copy: vertices = {p, v}, p the two-legged pi spider / the state.
//   Bialgebra: edge = the plain edge between Z(0) and X(0).
//   Hopf: edges = {e1, e2}.
//   IdInsert: edge.  BoundaryFix: vertices = {boundary}.
struct Site {
  std::vector<int> vertices;
  std::vector<int> edges;
};

struct TraceEntry {
  Rule rule;
  Site site;
  ExactScalar factor;
};

class RewriteError : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

bool matches(const ZxDiagram& d, Rule r, const Site& site);
// All sites where r applies, in deterministic (lowest id first) order.
std::vector<Site> find_sites(const ZxDiagram& d, Rule r);
// Applies r at site in place and returns the scalar factor it introduced
// (already folded into the diagram scalar).  Throws RewriteError on mismatch.
ExactScalar apply_rule_in_place(ZxDiagram& d, Rule r, const Site& site);
ZxDiagram apply_rule(const ZxDiagram& d, Rule r, const Site& site,
                     std::vector<TraceEntry>* trace = nullptr);

struct GraphLikeCert {
  bool only_z = false;
  bool hadamard_only = false;       // Z-Z edges are Hadamard edges
  bool no_parallel_or_loops = false;
  bool boundaries_ok = false;
  bool all() const { return only_z && hadamard_only && no_parallel_or_loops && boundaries_ok; }
};

GraphLikeCert check_graph_like(const ZxDiagram& d);

std::pair<ZxDiagram, GraphLikeCert> to_graph_like(const ZxDiagram& d,
                                                  std::vector<TraceEntry>* trace = nullptr);

ZxDiagram local_complement(const ZxDiagram& d, int v, std::vector<TraceEntry>* trace = nullptr);

// Removes every interior +-pi/2 spider that satisfies the lc precondition
// and keeps the result graph-like.
ZxDiagram remove_proper_cliffords(const ZxDiagram& d, std::vector<TraceEntry>* trace = nullptr);

nlohmann::json trace_to_json(const std::vector<TraceEntry>& trace);

}  // namespace zxbp
