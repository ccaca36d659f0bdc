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
#include <stdexcept>
#include <string>
#include <vector>

#include "zxbp/diagram.hpp"

namespace zxbp {

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GateKind { RX, RZ, RY, H, CNOT };

std::string to_string(GateKind k);

// A rotation angle is a Phase; a named parameter is stored as Phase::param
// with id = index of the parameter in the circuit.
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> qubits;  // CNOT: {control, target}
  Phase angle;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::string>& params() const { return params_; }
  int num_params() const { return static_cast<int>(params_.size()); }
  // Index of a named parameter; throws CircuitError if absent.
  int param_index(const std::string& name) const;

  void add_rotation(GateKind kind, int qubit, const Phase& angle);
  // Registers a fresh parameter and returns its index.
  int add_param_rotation(GateKind kind, int qubit, const std::string& name);
  void add_h(int qubit);
  void add_cnot(int control, int target);

 private:
  void check_qubit(int q) const;

  int n_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::string> params_;
};

struct PauliTerm {
  Rational coeff = 1;
  std::string ops;  // one of I, X, Y, Z per qubit, qubit 0 first
};

class Hamiltonian {
 public:
  enum class Kind { PauliSum, SingleQubit };

  static Hamiltonian pauli_sum(std::vector<PauliTerm> terms);
  // k0 I + k1 X + k2 Y + k3 Z on the target qubit.
  static Hamiltonian single_qubit(int target, std::array<Rational, 4> k);

  Kind kind() const { return kind_; }
  int target() const { return target_; }
  const std::array<Rational, 4>& k() const { return k_; }

  // Smallest register the Hamiltonian fits on.
  int min_qubits() const;
  // Pauli decomposition on n qubits with zero terms dropped and equal
  // strings merged.
  std::vector<PauliTerm> terms(int n) const;
  Eigen::MatrixXcd matrix(int n) const;
  // Tr(H^2) on n qubits.
  Rational trace_square(int n) const;
  std::string str() const;

 private:
  Kind kind_ = Kind::PauliSum;
  std::vector<PauliTerm> terms_;
  int target_ = 0;
  std::array<Rational, 4> k_{};
};

// Exact rational from "3", "-0.25", "1/3", "2.5e-3".
Rational parse_rational(const std::string& s);

// "0.5*ZZI + 1.0*XII", "XX", "-Z", or "single q0 k0 k1 k2 k3".
Hamiltonian parse_hamiltonian(const std::string& text);

// One gate per line: "RX q0 theta1", "CNOT q0 q1", "RZ q2 pi/2", "H q1".
// An optional "qubits N" line fixes the register size; '#' starts a comment.
Circuit parse_circuit(const std::string& text);
Circuit circuit_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const Circuit& c);
std::string circuit_to_text(const Circuit& c);
// Reads a circuit file in either format.
Circuit load_circuit(const std::string& path);

Circuit decompose_ry(const Circuit& c);

Circuit hardware_efficient(int n, int layers);
// Binary tree of RY pair blocks; the output qubit 0 gets one more RY after
// the last block.
Circuit ttn(int n);
// Convolution (even then odd neighbour pairs) and pooling stages of RY pair
// blocks, closed by an RZ on the output qubit 0.
Circuit qcnn(int n);
// Staircase: RX then RZ on each qubit, CNOT q -> q+1 between consecutive
// qubits.
Circuit mps(int n);
// Two-qubit reference instance: RX, RZ on each qubit, CNOT q1 q0, then RX, RZ
// on q0.  With H = XX the gradient variance at theta1 is 3/64.
Circuit two_qubit_example();
// Builds a family by name: "he" (needs layers), "ttn", "qcnn", "mps".
Circuit ansatz(const std::string& family, int n, int layers = 1);

// Exact unitary diagram; RY gates are decomposed first.
ZxDiagram circuit_to_zx(const Circuit& c);
// Layer of Pauli spiders (n inputs, n outputs), including the scalar i per Y.
ZxDiagram pauli_diagram(const std::string& ops);
// <0|U^dagger P U|0> times the term coefficient, as a closed diagram.
ZxDiagram expectation_diagram(const Circuit& c, const PauliTerm& term);
// Single-term Hamiltonians only; throws CircuitError for sums.
ZxDiagram expectation_diagram(const Circuit& c, const Hamiltonian& h);
// One closed diagram per Pauli string; <H> is the sum of their values.
std::vector<ZxDiagram> expectation_terms(const Circuit& c, const Hamiltonian& h);

// Derivative of the closed diagram ed with respect to parameter j.
ZxDiagram gradient_diagram(const ZxDiagram& ed, int j);

}  // namespace zxbp
