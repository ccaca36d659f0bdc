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


#include "zxbp/fuzz.hpp"

#include <algorithm>
#include <cmath>

#include "zxbp/evaluate.hpp"
#include "zxbp/rewrite.hpp"

namespace zxbp {

namespace {

const Rule kAllRules[] = {Rule::Fuse,     Rule::ColorChange, Rule::IdZ,        Rule::IdX,
                          Rule::PiCopy,   Rule::Copy,        Rule::Bialgebra,  Rule::Hopf,
                          Rule::SelfLoop, Rule::HadSelfLoop, Rule::LocalComp,  Rule::IdInsert,
                          Rule::BoundaryFix};

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double relative_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

ZxDiagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opts) {
  ZxDiagram d;
  int n = uniform(rng, 1, opts.max_spiders);
  std::vector<int> spiders;
  for (int i = 0; i < n; ++i) {
    VertexKind k = uniform(rng, 0, 1) ? VertexKind::Z : VertexKind::X;
    int q = uniform(rng, 0, 6);
    Phase p = q >= 3 ? Phase() : Phase(q + 1, 2);
    spiders.push_back(d.add_vertex(k, p));
  }
  int nparams = uniform(rng, 0, std::min(opts.max_params, n));
  std::vector<int> order = spiders;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i < nparams; ++i) {
    int v = order[i];
    int sign = uniform(rng, 0, 1) ? 1 : -1;
    d.set_phase(v, Phase::param(i, sign, d.phase(v).constant()));
  }
  auto kind = [&] { return uniform(rng, 0, 1) ? EdgeKind::Plain : EdgeKind::Hadamard; };
  for (int i = 1; i < n; ++i) d.add_edge(spiders[i], spiders[uniform(rng, 0, i - 1)], kind());
  int extra = uniform(rng, 0, n);
  for (int i = 0; i < extra; ++i) {
    int u = spiders[uniform(rng, 0, n - 1)];
    int v = uniform(rng, 0, 9) == 0 ? u : spiders[uniform(rng, 0, n - 1)];
    d.add_edge(u, v, kind());
  }
  int nb = uniform(rng, 0, opts.max_boundaries);
  int nin = uniform(rng, 0, nb);
  std::vector<int> ins, outs;
  for (int i = 0; i < nb; ++i) (i < nin ? ins : outs).push_back(d.add_vertex(VertexKind::Boundary));
  std::vector<bool> wired(nb, false);
  if (nin > 0 && nb > nin && uniform(rng, 0, 9) == 0) {
    d.add_edge(ins[0], outs[0], kind());
    wired[0] = wired[nin] = true;
  }
  for (int i = 0; i < nb; ++i) {
    if (wired[i]) continue;
    int b = i < nin ? ins[i] : outs[i - nin];
    d.add_edge(b, spiders[uniform(rng, 0, n - 1)], kind());
  }
  d.set_inputs(ins);
  d.set_outputs(outs);
  d.validate();
  return d;
}

FuzzReport rewrite_fuzz(int count, std::uint64_t seed, double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  FuzzReport rep;
  rep.tolerance = tolerance;
  auto record = [&](Rule r, double err) {
    ++rep.applications;
    ++rep.per_rule[rule_name(r)];
    rep.max_error = std::max(rep.max_error, err);
  };
  for (int t = 0; t < count; ++t) {
    ZxDiagram d = random_diagram(rng);
    Assignment a;
    for (int p : d.params()) a[p] = angle(rng);
    Eigen::MatrixXcd ref = evaluate(d, a);
    ++rep.diagrams;

    // one application of every applicable rule to the original diagram
    for (Rule r : kAllRules) {
      auto sites = find_sites(d, r);
      if (sites.empty()) continue;
      const Site& s = sites[uniform(rng, 0, static_cast<int>(sites.size()) - 1)];
      record(r, relative_error(ref, evaluate(apply_rule(d, r, s), a)));
    }

    // a random walk of rewrites
    ZxDiagram cur = d;
    for (int step = 0; step < 12; ++step) {
      std::vector<std::pair<Rule, Site>> all;
      for (Rule r : kAllRules) {
        for (auto& s : find_sites(cur, r)) all.emplace_back(r, std::move(s));
      }
      if (all.empty()) break;
      auto& [r, s] = all[uniform(rng, 0, static_cast<int>(all.size()) - 1)];
      cur = apply_rule(cur, r, s);
      record(r, relative_error(ref, evaluate(cur, a)));
    }

    auto [g, cert] = to_graph_like(d);
    if (!cert.all() || !check_graph_like(g).all()) ++rep.graph_like_failures;
    rep.max_error = std::max(rep.max_error, relative_error(ref, evaluate(g, a)));
    for (const auto& s : find_sites(g, Rule::LocalComp)) {
      record(Rule::LocalComp, relative_error(ref, evaluate(apply_rule(g, Rule::LocalComp, s), a)));
    }
    ZxDiagram r = remove_proper_cliffords(g);
    if (!check_graph_like(r).all()) ++rep.graph_like_failures;
    rep.max_error = std::max(rep.max_error, relative_error(ref, evaluate(r, a)));
  }
  return rep;
}

}  // namespace zxbp
