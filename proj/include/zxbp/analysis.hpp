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
#include <complex>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "zxbp/circuit.hpp"
#include "zxbp/vartn.hpp"

namespace zxbp {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BasisVec { V1, V2, V12, V13, V13m };

std::array<int, 3> entries(BasisVec v);
std::string to_string(BasisVec v);
// v^{(x)n}, first factor most significant.
std::vector<double> kron_power(BasisVec v, int n);

// ---- hardware-efficient ansatz ----

inline constexpr int kDenseLayerLimit = 6;
inline constexpr int kLayerApplyLimit = 12;

// LT = EM_{1,2} EM_{2,3} ... EM_{n,1} acting on column vectors over
// {1,2,3}^n.  Dense only up to kDenseLayerLimit qubits.
Eigen::MatrixXd he_layer_operator(int n);
// The same product applied without forming the matrix.
std::vector<double> he_layer_apply(int n, const std::vector<double>& v);

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;  // by decreasing modulus
  int unit_count = 0;                              // |lambda - 1| <= tol
  double max_subunit = 0.0;                        // largest |lambda| among the rest
  // Distance between the unit-eigenvalue projector and the projector onto
  // the expected eigenspace (Frobenius norm).
  double eigenspace_distance = 0.0;
};

// Expected unit eigenspace: span{v1 v12, v1 v13, v12 v12, v13 v13}.
Spectrum em_spectrum(double tol = 1e-9);
// Expected unit eigenspace: span{v12^n, v13^n}.
Spectrum he_layer_spectrum(int n, double tol = 1e-9);

// Var(d<H>/d theta_j) for hardware_efficient(n, layers), obtained by pushing
// a 3^n vector through the earlier layers and closing it with a one-layer
// network.
double he_variance(int n, int layers, const Hamiltonian& h, int j);
// 4 Tr(H^2) / 4^n.
Rational he_variance_limit(int n, const Hamiltonian& h);
// he_variance iterated in L until successive values agree to tol.
double he_variance_limit_exact(int n, const Hamiltonian& h, int j, double tol = 1e-13, int max_layers = 4000);

// ---- RY/CNOT block ansatzes (tree, QCNN) ----

// The closed-form pair-block tensors over {1,2,3}, recomputed from four-copy
// pattern sums.  Layout [beta][alpha][gamma_a] (tree and top hub) and
// [beta][alpha][gamma_a][gamma_b] (convolution).
struct BlockTensors {
  std::vector<double> tree;  // discarded target
  std::vector<double> conv;  // both qubits continue
  std::vector<double> hub;   // control fused with a final RZ
};
const BlockTensors& block_tensors();

// Expansion of a block in the basis {v13, v2, v13-}: each entry maps labels
// of the gamma legs to labels of (beta, alpha) with a nonnegative weight.
// Weights are normalised so that all-v13 maps to all-v13 with weight 1.
struct Transport {
  std::vector<int> gamma;  // labels 0 = v13, 1 = v2, 2 = v13-
  int beta = 0;
  int alpha = 0;
  double weight = 0.0;
};
std::vector<Transport> transport_table(const std::string& block);  // "tree", "conv", "hub"

double ttn_variance(int n, const Hamiltonian& h, int j);
double qcnn_variance(int n, const Hamiltonian& h, int j);

struct BoundTerm {
  int component = 0;           // label of the H-tilde component it starts from
  double coefficient = 0.0;    // everything except the input factor
  double input_factor = 0.0;   // I-tilde of the leaf labels
  std::vector<int> labels;     // per parameter, 0 = v13, 1 = v2, 2 = v13-
  double value() const { return coefficient * input_factor; }
};

struct LowerBound {
  int j = 0;
  double value = 0.0;
  std::vector<BoundTerm> terms;
  nlohmann::json to_json(const Circuit& c) const;
};

// One term of the nonnegative expansion per H-tilde component, for the
// first gate on qubit 0 (the deepest parameter).
LowerBound ttn_lower_bound(int n, const Hamiltonian& h, InputState input = InputState::Zero);
LowerBound qcnn_lower_bound(int n, const Hamiltonian& h, InputState input = InputState::Zero);

// ---- MPS staircase ----

// Var(d<H>/d theta_1) for mps(n), H a single-qubit operator on the last
// qubit, by the chain recurrence
//   u <- 2M u, then u <- D 2M u, u <- 2M u per remaining qubit,
// with D = diag(1, 0, 1) for the traced control spiders.
Rational mps_variance(int n, const Hamiltonian& h);
// The v2 coefficient arriving at theta_1 for H = X on the last qubit.
Rational mps_v2_coefficient(int n);

// ---- scans ----

// "Z0", "X3", ... (one Pauli on one qubit), "lastX" (on qubit n-1), or any
// text accepted by parse_hamiltonian.
Hamiltonian resolve_hamiltonian(const std::string& text, int n);

struct ScanConfig {
  std::string family;          // he, ttn, qcnn, mps
  std::vector<int> ns;
  int layers = 0;              // he only; 0 means L = n
  std::string hamiltonian;     // "" picks the family default
  int j = -1;                  // -1 picks the family default
};

struct ScalingRow {
  std::string family;
  int n = 0;
  int layers = 0;
  int j = 0;
  double variance = 0.0;
  double reference = 0.0;
};

struct FitStats {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
  double aic = 0.0;
};

struct ScalingReport {
  std::string family;
  std::string hamiltonian;
  std::string j_policy;
  std::vector<ScalingRow> rows;
  FitStats exponential;  // log V = slope * n + intercept
  FitStats polynomial;   // log V = slope * log n + intercept
  std::string classification = "inconclusive";

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

// Rows with zero variance are reported but left out of the fits.
std::string classify(const std::vector<ScalingRow>& rows, FitStats* exponential = nullptr,
                     FitStats* polynomial = nullptr);
ScalingReport scaling_scan(const ScanConfig& cfg);

}  // namespace zxbp
