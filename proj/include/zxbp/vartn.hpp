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

#include <complex>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "zxbp/circuit.hpp"
#include "zxbp/diagram.hpp"
#include "zxbp/exact_scalar.hpp"

namespace zxbp {

class VartnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kBruteForceMaxParams = 10;

// Four-copy patterns inside the support of T_1 + T_2 + T_3.
bool in_t_support(unsigned pattern);

// V_U over a T-index assignment (one entry in {1, 2, 3} per parameter, by
// parameter id).  The closed diagrams are the Pauli terms of <H>; their
// parameter spiders are opened once and the table is reused.
class VTensor {
 public:
  explicit VTensor(const std::vector<ZxDiagram>& terms);
  int num_params() const { return m_; }
  std::complex<double> operator()(const std::vector<int>& assignment) const;

 private:
  int m_ = 0;
  std::vector<std::complex<double>> g_;  // G[beta, beta'] with pairs interleaved
};

std::complex<double> v_tensor(const ZxDiagram& closed, const std::vector<int>& assignment);

struct VarianceValue {
  double value = 0.0;
  ExactScalar exact;  // set when exact arithmetic was used
  bool is_exact = false;
  std::string method;
};

// Var of d<H>/d theta_j by expanding every rotation into its two eigen-
// projectors.  Exact arithmetic needs every fixed angle to be a multiple of
// pi/4.
VarianceValue variance_bruteforce(const Circuit& c, const Hamiltonian& h, int j, bool exact = false);
// The same sum taken over T-index assignments of v_tensor.
double variance_from_vtensor(const Circuit& c, const Hamiltonian& h, int j);

enum class InputState { Zero, One, Plus };

struct NetworkOptions {
  // Parameter whose copy tensor becomes P_2; -1 for none.
  int j = -1;
  // Parameters whose T-index is left open; their copy tensors are dropped.
  std::vector<int> exposed;
  // One entry per qubit; defaults to |0>.
  std::vector<InputState> inputs;
};

struct VarVariable {
  int dim = 0;
  std::string label;
};

struct VarNode {
  // Copy, P2, MEdge, ETNode, Parity, GConstraint, Phase, Edge, InputTensor,
  // HamiltonianTensor
  std::string kind;
  std::vector<int> vars;
  std::vector<ExactScalar> payload;  // row-major, first variable slowest
};

struct PairTerm {
  ExactScalar coeff;  // h_s * h_t
  std::vector<VarNode> nodes;
};

// Four-copy variance network: Var = prefactor * sum_terms coeff * contract.
struct VarianceNetwork {
  int n_qubits = 0;
  int num_params = 0;
  int j = -1;
  std::vector<VarVariable> vars;
  std::vector<VarNode> nodes;
  std::vector<PairTerm> terms;
  ExactScalar prefactor = ExactScalar::one();
  std::vector<int> open;  // T-index variables of exposed parameters
  bool exact = true;      // every payload is exact

  nlohmann::json to_json() const;
};

VarianceNetwork build_network(const Circuit& c, const Hamiltonian& h, const NetworkOptions& opt);
inline VarianceNetwork build_network(const Circuit& c, const Hamiltonian& h, int j) {
  NetworkOptions opt;
  opt.j = j;
  return build_network(c, h, opt);
}

// Contracts every pair term; the result is ordered by net.open (first open
// variable slowest).  Throws VartnError when an intermediate exceeds the
// entry budget.
std::vector<std::complex<double>> contract_float(const VarianceNetwork& net,
                                                 std::size_t max_entries = std::size_t{1} << 26);
std::vector<ExactScalar> contract_exact(const VarianceNetwork& net, std::size_t max_entries = std::size_t{1} << 22);
VarianceValue contract(const VarianceNetwork& net, bool exact = false);

// Boundary tensors over {1,2,3}^legs.  The measured wire ends with a
// parameterized X-spider followed by a pi/2 Z-spider (the tail of an RY
// rotation), so a single-qubit H = k0 I + k1 X + k2 Y + k3 Z maps to
// 2 k0^2 v13 + 2 (k1^2 + k3^2) v2 + 2 k2^2 v13-.  H acts on qubits 0..legs-1.
enum class WireFrame { Z, X, RyTail };
std::vector<ExactScalar> h_tilde(const Hamiltonian& h, int legs, WireFrame frame = WireFrame::RyTail);
// Input state entering a wire whose first parameterized spider has the given
// colour (Z or X; RyTail behaves as X).
std::vector<ExactScalar> i_tilde(const std::vector<InputState>& input, WireFrame frame = WireFrame::X);

}  // namespace zxbp
