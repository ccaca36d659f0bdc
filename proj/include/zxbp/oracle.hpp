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
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zxbp/circuit.hpp"
#include "zxbp/diagram.hpp"

namespace zxbp {

inline constexpr int kMaxSimulatedQubits = 20;

// Gate matrices in the library convention: RZ(t) = diag(1, e^{it}),
// RX(t) = H RZ(t) H, RY(t) = RZ(pi/2) RX(t) RZ(-pi/2).
Eigen::Matrix2cd gate_matrix(GateKind kind, double angle = 0.0);

// Angle of gate g at parameter values theta (indexed by parameter id).
double gate_angle(const Gate& g, const std::vector<double>& theta);

struct StateVector {
  int n = 0;
  Eigen::VectorXcd amp;  // qubit 0 is the most significant bit
};

StateVector simulate(const Circuit& c, const std::vector<double>& theta);
// Dense product of gate matrices (n <= 10).
Eigen::MatrixXcd unitary(const Circuit& c, const std::vector<double>& theta);

double expectation(const Circuit& c, const std::vector<double>& theta, const Hamiltonian& h);
double gradient_ps(const Circuit& c, const std::vector<double>& theta, const Hamiltonian& h, int j);
double gradient_fd(const Circuit& c, const std::vector<double>& theta, const Hamiltonian& h, int j,
                   double step = 1e-5);

// Counter-based generator: the k-th draw is a SplitMix64 hash of (seed, k),
// so any block of draws can be produced independently.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t at(std::uint64_t counter) const;
  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

struct McEstimate {
  double mean = 0.0;
  double variance = 0.0;      // unbiased sample variance of the gradient
  double stderr_mean = 0.0;
  double stderr_variance = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  std::string generator = "splitmix64-counter";
};

// Samples theta uniformly from [-pi, pi]^m and collects gradient statistics.
McEstimate mc_grad_stats(const Circuit& c, const Hamiltonian& h, int j, long samples, std::uint64_t seed);

// Mean of f over a uniform K-point grid per parameter; exact for
// trigonometric polynomials of degree < K in each parameter.
std::complex<double> quad_integrate(const std::function<std::complex<double>(const std::vector<double>&)>& f,
                                    int num_params, int K = 8);
// Entrywise average of evaluate(d) over the listed parameters.
Eigen::MatrixXcd quad_integrate(const ZxDiagram& d, const std::vector<int>& params, int K = 8,
                                const Assignment& fixed = {});

}  // namespace zxbp
