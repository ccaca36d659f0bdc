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

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "zxbp/diagram.hpp"

namespace zxbp {

struct RandomDiagramOptions {
  int max_boundaries = 4;
  int max_spiders = 12;
  int max_params = 3;
};

// Small random diagram with phases in {0, pi/2, pi, 3pi/2}; up to
// max_params spiders carry a symbolic parameter (ids 0, 1, ...).
ZxDiagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opts = {});

struct FuzzReport {
  int diagrams = 0;
  int applications = 0;
  std::map<std::string, int> per_rule;
  double max_error = 0.0;
  int graph_like_failures = 0;
  bool passed() const { return graph_like_failures == 0 && max_error <= tolerance; }
  double tolerance = 1e-9;
};

// Applies every rule at random matching sites of `count` random diagrams and
// compares the evaluated linear map against the original at random parameter
// values.  Also runs the graph-like normalization and proper-Clifford removal.
FuzzReport rewrite_fuzz(int count, std::uint64_t seed, double tolerance = 1e-9);

}  // namespace zxbp
