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

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "zxbp/diagram.hpp"

namespace zxbp {

inline constexpr std::size_t kDefaultBoundaryLimit = 12;

// Matrix with 2^|outputs| rows and 2^|inputs| columns; the first output
// (input) is the most significant bit of the row (column) index.
Eigen::MatrixXcd evaluate(const ZxDiagram& d, const Assignment& assignment = {},
                          std::size_t boundary_limit = kDefaultBoundaryLimit);

// Value of a diagram without boundaries.
std::complex<double> evaluate_scalar(const ZxDiagram& d, const Assignment& assignment = {});

using ExactAssignment = std::map<int, Rational>;  // parameter id -> multiple of pi

// Exact evaluation in Q(i)[sqrt 2]; every phase must be a multiple of pi/4
// once parameters are substituted.  Row-major entries.
std::vector<ExactScalar> evaluate_exact(const ZxDiagram& d, const ExactAssignment& assignment = {},
                                        std::size_t boundary_limit = kDefaultBoundaryLimit);
ExactScalar evaluate_exact_scalar(const ZxDiagram& d, const ExactAssignment& assignment = {});

}  // namespace zxbp
