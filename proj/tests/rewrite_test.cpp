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

#include <random>

#include "gtest/gtest.h"
#include "zxbp/evaluate.hpp"
#include "zxbp/fuzz.hpp"

using namespace zxbp;

namespace {

double distance(const ZxDiagram& a, const ZxDiagram& b, const Assignment& asg = {}) {
  return (evaluate(a, asg) - evaluate(b, asg)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Rewrite, RuleNamesRoundTrip) {
  for (const char* n : {"f", "h", "i1", "i2", "pi-copy", "copy", "bialgebra", "hopf", "self-loop",
                        "had-self-loop", "lc", "id-insert", "boundary-fix"}) {
    EXPECT_EQ(rule_name(rule_from_name(n)), n);
  }
  EXPECT_THROW(rule_from_name("nope"), RewriteError);
}

TEST(Rewrite, FuseAddsPhases) {
  ZxDiagram d = build({{0, VertexKind::Boundary, {}}, {1, VertexKind::Z, Phase::param(0)},
                       {2, VertexKind::Z, Phase(1, 2)}, {3, VertexKind::Boundary, {}}},
                      {{0, 1}, {1, 2}, {2, 3}}, {0}, {3});
  auto sites = find_sites(d, Rule::Fuse);
  ASSERT_EQ(sites.size(), 1u);
  std::vector<TraceEntry> trace;
  ZxDiagram f = apply_rule(d, Rule::Fuse, sites[0], &trace);
  EXPECT_EQ(f.num_spiders(), 1u);
  EXPECT_EQ(f.phase(1), Phase::param(0, 1, Rational(1, 2)));
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].factor, ExactScalar::one());
  EXPECT_LT(distance(d, f, {{0, 0.4}}), 1e-12);
}

TEST(Rewrite, CopyScalar) {
  // X(0) state into a three-legged Z spider.
  ZxDiagram d = build({{0, VertexKind::X, {}}, {1, VertexKind::Z, Phase(1, 4)},
                       {2, VertexKind::Boundary, {}}, {3, VertexKind::Boundary, {}}},
                      {{0, 1}, {1, 2}, {1, 3}}, {}, {2, 3});
  auto sites = find_sites(d, Rule::Copy);
  ASSERT_FALSE(sites.empty());
  std::vector<TraceEntry> trace;
  ZxDiagram c = apply_rule(d, Rule::Copy, sites[0], &trace);
  EXPECT_EQ(trace.at(0).factor, ExactScalar::sqrt2_pow(-1));
  EXPECT_LT(distance(d, c), 1e-12);
}

TEST(Rewrite, HopfHalvesScalar) {
  ZxDiagram d = build({{0, VertexKind::Boundary, {}}, {1, VertexKind::Z, {}}, {2, VertexKind::X, {}},
                       {3, VertexKind::Boundary, {}}},
                      {{0, 1}, {1, 2}, {1, 2}, {2, 3}}, {0}, {3});
  auto sites = find_sites(d, Rule::Hopf);
  ASSERT_FALSE(sites.empty());
  std::vector<TraceEntry> trace;
  ZxDiagram h = apply_rule(d, Rule::Hopf, sites[0], &trace);
  EXPECT_EQ(trace.at(0).factor, ExactScalar(Rational(1, 2)));
  EXPECT_LT(distance(d, h), 1e-12);
}

TEST(Rewrite, MismatchedSiteThrows) {
  ZxDiagram d = build({{0, VertexKind::Z, {}}, {1, VertexKind::X, {}}}, {{0, 1}}, {}, {});
  EXPECT_FALSE(matches(d, Rule::Fuse, Site{{}, {0}}));
  EXPECT_THROW(apply_rule(d, Rule::Fuse, Site{{}, {0}}), RewriteError);
  EXPECT_THROW(apply_rule(d, Rule::IdZ, Site{{7}, {}}), RewriteError);
}

TEST(Rewrite, GraphLikeOfRandomDiagrams) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    ZxDiagram d = random_diagram(rng);
    Assignment a;
    for (int p : d.params()) a[p] = 0.9 - 0.4 * p;
    std::vector<TraceEntry> trace;
    auto [g, cert] = to_graph_like(d, &trace);
    EXPECT_TRUE(cert.all());
    EXPECT_TRUE(check_graph_like(g).all());
    EXPECT_LT(distance(d, g, a), 1e-9 * std::max(1.0, evaluate(d, a).cwiseAbs().maxCoeff()));
    // replaying the trace reproduces the scalar
    ExactScalar s = d.scalar();
    for (const auto& e : trace) s *= e.factor;
    EXPECT_EQ(s, g.scalar());
    EXPECT_EQ(trace_to_json(trace).size(), trace.size());
  }
}

TEST(Rewrite, RemovesProperCliffords) {
  // Interior +-pi/2 spiders inside a Hadamard-connected cluster.
  ZxDiagram d = build({{0, VertexKind::Boundary, {}}, {1, VertexKind::Z, {}}, {2, VertexKind::Z, Phase(1, 2)},
                       {3, VertexKind::Z, Phase(3, 2)}, {4, VertexKind::Z, Phase::param(0)},
                       {5, VertexKind::Boundary, {}}},
                      {{0, 1}, {1, 2, EdgeKind::Hadamard}, {2, 3, EdgeKind::Hadamard},
                       {3, 4, EdgeKind::Hadamard}, {2, 4, EdgeKind::Hadamard}, {4, 5}},
                      {0}, {5});
  ZxDiagram r = remove_proper_cliffords(d);
  EXPECT_TRUE(check_graph_like(r).all());
  EXPECT_TRUE(find_sites(r, Rule::LocalComp).empty());
  EXPECT_LT(distance(d, r, {{0, 0.2}}), 1e-9);
}

TEST(Rewrite, Fuzz200) {
  FuzzReport rep = rewrite_fuzz(200, 20261015);
  EXPECT_EQ(rep.diagrams, 200);
  EXPECT_TRUE(rep.passed()) << "max error " << rep.max_error << ", graph-like failures "
                            << rep.graph_like_failures;
  for (const char* r : {"f", "h", "i1", "i2", "pi-copy", "copy", "bialgebra", "hopf", "self-loop",
                        "had-self-loop", "lc", "id-insert", "boundary-fix"}) {
    EXPECT_GT(rep.per_rule[r], 0) << r;
  }
}
