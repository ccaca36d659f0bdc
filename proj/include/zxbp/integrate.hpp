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
#include <array>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "zxbp/circuit.hpp"
#include "zxbp/diagram.hpp"

namespace zxbp {

// T-basis index a in {1, 2, 3}.  A pattern is the 4-copy value of one
// spider, legs ordered (U, U-dagger, U, U-dagger) with the first leg as the
// most significant bit.
using Pattern = unsigned;

// The two support patterns of T_a: {r_a, r_a ^ 0b1111}.
std::array<Pattern, 2> t_support(int a);
// 1..3 if p lies in the support of T_a, 0 otherwise.
int t_index_of(Pattern p);

struct TBasisTensor {
  int index = 1;
  std::array<Rational, 16> entries{};
  const Rational& at(Pattern p) const { return entries.at(p); }
};

// Evaluates the diagram of T_a: two Z-spiders over leg pairs, joined by an
// X(pi) spider unless a = 1.
ZxDiagram t_diagram(int a);
TBasisTensor materialize_T(int a);

struct SmallTensor {
  std::string name;
  std::vector<int> shape;
  std::vector<Rational> data;  // row-major

  // 1-based indices, as printed.
  const Rational& at(const std::vector<int>& idx) const;
  Eigen::MatrixXd matrix() const;  // 2-index tensors only
  std::vector<double> to_double() const;
  nlohmann::json to_json() const;
};

SmallTensor m_matrix();
SmallTensor et_tensor();
SmallTensor ttn_tensor();
SmallTensor em_matrix();

nlohmann::json t_tensor_json(const TBasisTensor& t);

// Weighted sum of diagrams.
struct DiagramSum {
  std::vector<std::pair<ExactScalar, ZxDiagram>> terms;
  Eigen::MatrixXcd evaluate(const Assignment& assignment = {}) const;
};

class IntegrationError : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

// Replaces every occurrence of parameter j by the constant value*pi.
ZxDiagram substitute_param(const ZxDiagram& d, int j, const Rational& value);

// Uniform average over theta_j.  Each of +-theta_j occurs at most once, so
// the integrand has frequencies in {-1, 0, 1} and the two-point rule
// (theta_j = 0 and pi) is exact.  A diagram free of theta_j is returned
// unchanged as a one-term sum.
DiagramSum integrate_single_pair(const ZxDiagram& d, int j);

struct CancellationCertificate {
  int param = 0;
  int term = 0;              // Pauli term of the Hamiltonian
  nlohmann::json steps;      // rewrite steps that turn D[pi] into -D[0]
  bool structural_match = false;
  double numeric_residual = 0.0;
  bool verified() const { return structural_match && numeric_residual < 1e-9; }
};

struct GradientExpectation {
  ExactScalar value;  // exactly zero once every certificate verifies
  std::vector<CancellationCertificate> certificates;
  bool verified() const;
  nlohmann::json to_json() const;
};

// Mean of d<H>/d theta_j under the uniform product measure.  Throws
// CircuitError for an unknown parameter.
GradientExpectation expectation_of_gradient(const Circuit& c, const Hamiltonian& h, int j);

// Independent reconstructions of the closed forms by uniform quadrature of
// four-copy sub-diagrams, projected onto the T-basis.
struct Reconstruction {
  std::vector<double> values;  // same layout as the SmallTensor
  // max |quadrature - T-basis expansion|.  Zero when the sub-diagram does
  // not couple the all-ones flips of its spiders (M, T_TTN); a Z(0) hub
  // does (ET, EM), and there only the T-projections are meaningful.
  double residual = 0.0;
  double max_error(const SmallTensor& reference) const;
};

Reconstruction quadrature_m(int K = 8);
Reconstruction quadrature_et(int K = 8);
Reconstruction quadrature_ttn(int K = 8);
Reconstruction quadrature_em(int K = 8);

// Quadrature of four single-leg copies of Z(+theta), Z(-theta), Z(+theta),
// Z(-theta) against T_1 + T_2 + T_3; returns the max-norm residual.
double t_basis_residual(int K = 8);

}  // namespace zxbp
