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


#include "zxbp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "zxbp/evaluate.hpp"

namespace zxbp {

namespace {

using cd = std::complex<double>;

void apply_1q(Eigen::VectorXcd& psi, int n, int q, const Eigen::Matrix2cd& u) {
  Eigen::Index stride = Eigen::Index(1) << (n - 1 - q);
  for (Eigen::Index base = 0; base < psi.size(); base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      cd a = psi[i], b = psi[i + stride];
      psi[i] = u(0, 0) * a + u(0, 1) * b;
      psi[i + stride] = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

void apply_cnot(Eigen::VectorXcd& psi, int n, int c, int t) {
  Eigen::Index cm = Eigen::Index(1) << (n - 1 - c);
  Eigen::Index tm = Eigen::Index(1) << (n - 1 - t);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if ((i & cm) && !(i & tm)) std::swap(psi[i], psi[i | tm]);
  }
}

void apply_gate(Eigen::VectorXcd& psi, int n, const Gate& g, const std::vector<double>& theta) {
  if (g.kind == GateKind::CNOT) {
    apply_cnot(psi, n, g.qubits[0], g.qubits[1]);
  } else {
    apply_1q(psi, n, g.qubits[0], gate_matrix(g.kind, gate_angle(g, theta)));
  }
}

void apply_pauli(Eigen::VectorXcd& psi, int n, const std::string& ops) {
  for (int q = 0; q < n; ++q) {
    if (ops[q] == 'I') continue;
    Eigen::Matrix2cd p;
    if (ops[q] == 'X') p << 0, 1, 1, 0;
    if (ops[q] == 'Y') p << 0, cd(0, -1), cd(0, 1), 0;
    if (ops[q] == 'Z') p << 1, 0, 0, -1;
    apply_1q(psi, n, q, p);
  }
}

void check_size(const Circuit& c, int limit) {
  if (c.n_qubits() > limit) throw std::length_error("size limit exceeded: too many qubits to simulate");
}

}  // namespace

Eigen::Matrix2cd gate_matrix(GateKind kind, double angle) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  Eigen::Matrix2cd rz;
  rz << 1, 0, 0, std::polar(1.0, angle);
  switch (kind) {
    case GateKind::RZ:
      return rz;
    case GateKind::RX:
      return h * rz * h;
    case GateKind::RY: {
      Eigen::Matrix2cd sp, sm;
      sp << 1, 0, 0, cd(0, 1);
      sm << 1, 0, 0, cd(0, -1);
      return sp * (h * rz * h) * sm;
    }
    case GateKind::H:
      return h;
    case GateKind::CNOT:
      break;
  }
  throw CircuitError("no single-qubit matrix for " + to_string(kind));
}

double gate_angle(const Gate& g, const std::vector<double>& theta) {
  double a = M_PI * g.angle.constant().get_d() + g.angle.float_offset();
  if (g.angle.param()) {
    int id = g.angle.param()->id;
    if (id >= static_cast<int>(theta.size())) throw CircuitError("missing value for parameter");
    a += g.angle.param()->sign * theta[id];
  }
  return a;
}

StateVector simulate(const Circuit& c, const std::vector<double>& theta) {
  check_size(c, kMaxSimulatedQubits);
  int n = c.n_qubits();
  StateVector s{n, Eigen::VectorXcd::Zero(Eigen::Index(1) << n)};
  s.amp[0] = 1;
  for (const auto& g : c.gates()) apply_gate(s.amp, n, g, theta);
  return s;
}

Eigen::MatrixXcd unitary(const Circuit& c, const std::vector<double>& theta) {
  check_size(c, 10);
  int n = c.n_qubits();
  Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[col] = 1;
    for (const auto& g : c.gates()) apply_gate(psi, n, g, theta);
    u.col(col) = psi;
  }
  return u;
}

double expectation(const Circuit& c, const std::vector<double>& theta, const Hamiltonian& h) {
  StateVector s = simulate(c, theta);
  cd total = 0;
  for (const auto& t : h.terms(s.n)) {
    Eigen::VectorXcd p = s.amp;
    apply_pauli(p, s.n, t.ops);
    total += t.coeff.get_d() * s.amp.dot(p);
  }
  return total.real();
}

double gradient_ps(const Circuit& c, const std::vector<double>& theta, const Hamiltonian& h, int j) {
  if (j < 0 || j >= c.num_params()) throw CircuitError("parameter index out of range");
  std::vector<double> tp = theta, tm = theta;
  tp.at(j) += M_PI / 2;
  tm.at(j) -= M_PI / 2;
  return 0.5 * (expectation(c, tp, h) - expectation(c, tm, h));
}

double gradient_fd(const Circuit& c, const std::vector<double>& theta, const Hamiltonian& h, int j,
                   double step) {
  if (j < 0 || j >= c.num_params()) throw CircuitError("parameter index out of range");
  std::vector<double> tp = theta, tm = theta;
  tp.at(j) += step;
  tm.at(j) -= step;
  return (expectation(c, tp, h) - expectation(c, tm, h)) / (2 * step);
}

std::uint64_t CounterRng::at(std::uint64_t counter) const {
  std::uint64_t z = seed_ + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
}

McEstimate mc_grad_stats(const Circuit& c, const Hamiltonian& h, int j, long samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  if (j < 0 || j >= c.num_params()) throw CircuitError("parameter index out of range");
  check_size(c, kMaxSimulatedQubits);
  CounterRng rng(seed);
  int m = c.num_params();
  std::vector<double> g(samples);
  auto run_block = [&](long begin, long end) {
    std::vector<double> theta(m);
    for (long s = begin; s < end; ++s) {
      for (int k = 0; k < m; ++k) {
        theta[k] = -M_PI + 2 * M_PI * rng.uniform(static_cast<std::uint64_t>(s) * m + k);
      }
      g[s] = gradient_ps(c, theta, h, j);
    }
  };
  long workers = std::clamp<long>(std::thread::hardware_concurrency(), 1, 16);
  workers = std::min(workers, std::max(1L, samples / 1024));
  long block = (samples + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (long w = 1; w < workers; ++w) pool.emplace_back(run_block, w * block, std::min(samples, (w + 1) * block));
  run_block(0, std::min(samples, block));
  for (auto& t : pool) t.join();
  double mean = 0;
  for (double x : g) mean += x;
  mean /= samples;
  double m2 = 0, m4 = 0;
  for (double x : g) {
    double d = (x - mean) * (x - mean);
    m2 += d;
    m4 += d * d;
  }
  double nn = static_cast<double>(samples);
  McEstimate e;
  e.mean = mean;
  e.variance = m2 / (nn - 1);
  e.stderr_mean = std::sqrt(e.variance / nn);
  double mu2 = m2 / nn, mu4 = m4 / nn;
  e.stderr_variance = std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / nn);
  e.samples = samples;
  e.seed = seed;
  return e;
}

std::complex<double> quad_integrate(const std::function<std::complex<double>(const std::vector<double>&)>& f,
                                    int num_params, int K) {
  if (K < 1 || num_params < 0) throw std::invalid_argument("bad quadrature grid");
  std::vector<int> idx(num_params, 0);
  std::vector<double> theta(num_params);
  cd sum = 0;
  long total = 0;
  while (true) {
    for (int k = 0; k < num_params; ++k) theta[k] = -M_PI + 2 * M_PI * idx[k] / K;
    sum += f(theta);
    ++total;
    int k = 0;
    while (k < num_params && ++idx[k] == K) idx[k++] = 0;
    if (k == num_params) break;
  }
  return sum / static_cast<double>(total);
}

Eigen::MatrixXcd quad_integrate(const ZxDiagram& d, const std::vector<int>& params, int K,
                                const Assignment& fixed) {
  Eigen::MatrixXcd acc;
  std::vector<int> idx(params.size(), 0);
  long total = 0;
  while (true) {
    Assignment a = fixed;
    for (std::size_t k = 0; k < params.size(); ++k) a[params[k]] = -M_PI + 2 * M_PI * idx[k] / K;
    Eigen::MatrixXcd m = evaluate(d, a);
    if (total == 0) {
      acc = m;
    } else {
      acc += m;
    }
    ++total;
    std::size_t k = 0;
    while (k < params.size() && ++idx[k] == K) idx[k++] = 0;
    if (k == params.size()) break;
  }
  return acc / static_cast<double>(total);
}

}  // namespace zxbp
