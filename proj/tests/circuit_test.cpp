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


#include "zxbp/circuit.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "zxbp/evaluate.hpp"
#include "zxbp/oracle.hpp"
#include "zxbp/rewrite.hpp"

using namespace zxbp;
using cd = std::complex<double>;

namespace {

std::vector<double> random_theta(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<double> t(m);
  for (double& x : t) x = u(rng);
  return t;
}

Assignment to_assignment(const std::vector<double>& t) {
  Assignment a;
  for (std::size_t i = 0; i < t.size(); ++i) a[static_cast<int>(i)] = t[i];
  return a;
}

// Random circuit over RX/RZ/RY/H/CNOT with m parameters.
Circuit random_circuit(std::mt19937_64& rng, int n, int m) {
  Circuit c(n);
  std::uniform_int_distribution<int> q(0, n - 1), kind(0, 5);
  int k = 0;
  while (k < m) {
    int g = kind(rng);
    if (g <= 2) {
      GateKind r = g == 0 ? GateKind::RX : g == 1 ? GateKind::RZ : GateKind::RY;
      c.add_param_rotation(r, q(rng), "p" + std::to_string(++k));
    } else if (g == 3) {
      c.add_h(q(rng));
    } else if (n > 1) {
      int a = q(rng), b = q(rng);
      if (a != b) c.add_cnot(a, b);
    } else {
      c.add_rotation(GateKind::RZ, 0, Phase(1, 2));
    }
  }
  return c;
}

Hamiltonian random_hamiltonian(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> p(0, 3), count(1, 3), coeff(-4, 4);
  std::vector<PauliTerm> terms;
  int t = count(rng);
  for (int i = 0; i < t; ++i) {
    std::string ops;
    for (int q = 0; q < n; ++q) ops += "IXYZ"[p(rng)];
    terms.push_back({Rational(coeff(rng), 2), ops});
  }
  return Hamiltonian::pauli_sum(terms);
}

double zx_expectation(const Circuit& c, const Hamiltonian& h, const Assignment& a) {
  cd total = 0;
  for (const auto& d : expectation_terms(c, h)) total += evaluate_scalar(d, a);
  EXPECT_LT(std::abs(total.imag()), 1e-10);
  return total.real();
}

double zx_gradient(const Circuit& c, const Hamiltonian& h, int j, const Assignment& a) {
  cd total = 0;
  for (const auto& d : expectation_terms(c, h)) total += evaluate_scalar(gradient_diagram(d, j), a);
  return total.real();
}

}  // namespace

TEST(CircuitToZx, SingleRotation) {
  Circuit c(1);
  c.add_param_rotation(GateKind::RZ, 0, "theta");
  ZxDiagram d = circuit_to_zx(c);
  EXPECT_EQ(d.num_spiders(), 1u);
  auto m = evaluate(d, {{0, 0.8}});
  EXPECT_LT(std::abs(m(0, 0) - 1.0), 1e-12);
  EXPECT_LT(std::abs(m(1, 1) - std::polar(1.0, 0.8)), 1e-12);
  EXPECT_LT(std::abs(m(0, 1)) + std::abs(m(1, 0)), 1e-12);
}

TEST(CircuitToZx, CnotIsExact) {
  Circuit c(2);
  c.add_cnot(0, 1);
  auto e = evaluate_exact(circuit_to_zx(c));
  std::vector<int> want = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
  for (int i = 0; i < 16; ++i) EXPECT_EQ(e[i], ExactScalar(want[i])) << i;
}

TEST(CircuitToZx, ExampleMatchesGateProduct) {
  Circuit c = two_qubit_example();
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    auto th = random_theta(rng, c.num_params());
    EXPECT_LT((evaluate(circuit_to_zx(c), to_assignment(th)) - unitary(c, th)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CircuitToZx, AnsatzFamiliesMatchGateProduct) {
  std::mt19937_64 rng(2);
  std::vector<Circuit> family = {hardware_efficient(2, 1), hardware_efficient(3, 2), hardware_efficient(4, 1),
                                 ttn(2), ttn(4), qcnn(2), qcnn(4), mps(2), mps(3), mps(4)};
  for (const auto& c : family) {
    ZxDiagram d = circuit_to_zx(c);
    for (int t = 0; t < 50; ++t) {
      auto th = random_theta(rng, c.num_params());
      ASSERT_LT((evaluate(d, to_assignment(th)) - unitary(c, th)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(DecomposeRy, ReplacesEveryRy) {
  Circuit c(1);
  c.add_param_rotation(GateKind::RY, 0, "theta");
  Circuit d = decompose_ry(c);
  ASSERT_EQ(d.gates().size(), 3u);
  EXPECT_EQ(d.gates()[0].kind, GateKind::RZ);
  EXPECT_EQ(d.gates()[0].angle, Phase(-1, 2));
  EXPECT_EQ(d.gates()[1].kind, GateKind::RX);
  EXPECT_EQ(d.gates()[1].angle, Phase::param(0));
  EXPECT_EQ(d.gates()[2].angle, Phase(1, 2));
  EXPECT_EQ(d.params(), c.params());
  for (double t : {0.0, 0.4, -2.0}) {
    EXPECT_LT((unitary(d, {t}) - unitary(c, {t})).norm(), 1e-12);
  }
  EXPECT_LT((unitary(d, {0.0}) - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
  Circuit plain = two_qubit_example();
  EXPECT_EQ(circuit_to_text(decompose_ry(plain)), circuit_to_text(plain));
}

TEST(Ansatz, Shapes) {
  Circuit he = hardware_efficient(4, 3);
  EXPECT_EQ(he.num_params(), 3 * 4 * 3);
  EXPECT_THROW(hardware_efficient(4, 0), CircuitError);
  EXPECT_THROW(hardware_efficient(1, 2), CircuitError);

  auto cnots = [](const Circuit& c) {
    int k = 0;
    for (const auto& g : c.gates()) k += g.kind == GateKind::CNOT;
    return k;
  };
  EXPECT_EQ(cnots(ttn(2)), 1);
  EXPECT_EQ(cnots(ttn(4)), 3);
  EXPECT_EQ(ttn(8).num_params(), 15);
  EXPECT_EQ(ttn(4).params().back(), "t3q0");
  EXPECT_EQ(ttn(4).params()[0], "t1q0");
  EXPECT_THROW(ttn(6), CircuitError);

  EXPECT_EQ(cnots(qcnn(2)), 2);
  // 8 -> 4 -> 2 -> 1 active qubits: pooling blocks 4 + 2 + 1
  int pools = 0;
  for (const auto& p : qcnn(8).params()) pools += p[0] == 'p';
  EXPECT_EQ(pools, 2 * (4 + 2 + 1));
  EXPECT_THROW(qcnn(12), CircuitError);

  EXPECT_EQ(cnots(mps(2)), 1);
  EXPECT_EQ(cnots(mps(5)), 4);
  Circuit m = mps(5);
  EXPECT_EQ(m.gates()[0].kind, GateKind::RX);
  EXPECT_EQ(m.gates()[0].qubits[0], 0);
  EXPECT_EQ(m.params()[0], "theta1");
  EXPECT_THROW(mps(1), CircuitError);
}

TEST(Ansatz, GraphLikeForms) {
  for (const auto& c : {hardware_efficient(2, 1), ttn(4), qcnn(4), mps(4)}) {
    Hamiltonian z = Hamiltonian::single_qubit(0, {0, 0, 0, 1});
    ZxDiagram ed = expectation_diagram(c, z);
    auto [g, cert] = to_graph_like(ed);
    EXPECT_TRUE(cert.all());
    ZxDiagram r = remove_proper_cliffords(g);
    EXPECT_TRUE(check_graph_like(r).all());
    std::vector<double> th(c.num_params(), 0.3);
    EXPECT_NEAR(evaluate_scalar(r, to_assignment(th)).real(), expectation(c, th, z), 1e-10);
    for (int j = 0; j < c.num_params(); ++j) {
      EXPECT_EQ(r.spiders_with_param(j, 1).size(), 1u);
      EXPECT_EQ(r.spiders_with_param(j, -1).size(), 1u);
    }
  }
}

TEST(Expectation, SmallCases) {
  Circuit empty(1);
  Hamiltonian z = parse_hamiltonian("Z");
  EXPECT_NEAR(evaluate_scalar(expectation_diagram(empty, z)).real(), 1.0, 1e-12);
  EXPECT_EQ(evaluate_exact_scalar(expectation_diagram(empty, z)), ExactScalar::one());

  Circuit rx(1);
  rx.add_param_rotation(GateKind::RX, 0, "theta");
  for (double t : {0.0, 0.5, 2.0, -1.3}) {
    EXPECT_NEAR(evaluate_scalar(expectation_diagram(rx, z), {{0, t}}).real(), std::cos(t), 1e-12);
  }

  Circuit c = two_qubit_example();
  Hamiltonian xx = parse_hamiltonian("XX");
  std::vector<double> zero(c.num_params(), 0.0);
  EXPECT_NEAR(evaluate_scalar(expectation_diagram(c, xx), to_assignment(zero)).real(), expectation(c, zero, xx),
              1e-12);
}

TEST(Expectation, SumsAndSingleQubitForm) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 3;
    Circuit c = random_circuit(rng, n, 4);
    Hamiltonian h = random_hamiltonian(rng, n);
    auto th = random_theta(rng, c.num_params());
    EXPECT_NEAR(zx_expectation(c, h, to_assignment(th)), expectation(c, th, h), 1e-10);
  }
  Circuit c = two_qubit_example();
  Hamiltonian s = parse_hamiltonian("single q1 0.5 -1 0.25 2");
  EXPECT_EQ(s.terms(2).size(), 4u);
  EXPECT_THROW(expectation_diagram(c, s), CircuitError);
  auto th = random_theta(rng, c.num_params());
  EXPECT_NEAR(zx_expectation(c, s, to_assignment(th)), expectation(c, th, s), 1e-10);
}

TEST(Gradient, SingleQubitRx) {
  Circuit rx(1);
  rx.add_param_rotation(GateKind::RX, 0, "theta");
  ZxDiagram g = gradient_diagram(expectation_diagram(rx, parse_hamiltonian("Z")), 0);
  for (double t : {0.0, M_PI / 3, 1.2}) {
    EXPECT_NEAR(evaluate_scalar(g, {{0, t}}).real(), -std::sin(t), 1e-12);
  }
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 3;
    int m = 1 + t % 6;
    Circuit c = random_circuit(rng, n, m);
    Hamiltonian h = random_hamiltonian(rng, n);
    int j = std::uniform_int_distribution<int>(0, m - 1)(rng);
    auto th = random_theta(rng, m);
    EXPECT_NEAR(zx_gradient(c, h, j, to_assignment(th)), gradient_fd(c, th, h, j), 1e-6);
  }
}

TEST(Gradient, ParameterShiftOnExample) {
  Circuit c = two_qubit_example();
  Hamiltonian xx = parse_hamiltonian("XX");
  std::mt19937_64 rng(8);
  auto th = random_theta(rng, c.num_params());
  for (int j = 0; j < c.num_params(); ++j) {
    auto tp = th, tm = th;
    tp[j] += M_PI / 2;
    tm[j] -= M_PI / 2;
    double shift = 0.5 * (zx_expectation(c, xx, to_assignment(tp)) - zx_expectation(c, xx, to_assignment(tm)));
    EXPECT_NEAR(zx_gradient(c, xx, j, to_assignment(th)), shift, 1e-10);
  }
}

TEST(Gradient, IrrelevantParameterIsZero) {
  Circuit c(2);
  c.add_param_rotation(GateKind::RX, 0, "a");
  c.add_param_rotation(GateKind::RZ, 1, "b");  // acts on |0>, only a phase
  ZxDiagram g = gradient_diagram(expectation_diagram(c, parse_hamiltonian("ZZ")), 1);
  EXPECT_NEAR(std::abs(evaluate_scalar(g, {{0, 0.7}, {1, -0.2}})), 0.0, 1e-12);
  EXPECT_THROW(gradient_diagram(expectation_diagram(c, parse_hamiltonian("ZZ")), 5), DiagramError);
}

TEST(Parsing, CircuitText) {
  Circuit c = parse_circuit("# comment\nRX q0 theta1\nCNOT q0 q1\nRZ q2 pi/2\nRY q1 -3*pi/4\nH q2\n");
  EXPECT_EQ(c.n_qubits(), 3);
  EXPECT_EQ(c.num_params(), 1);
  EXPECT_EQ(c.gates()[2].angle, Phase(1, 2));
  EXPECT_EQ(c.gates()[3].angle, Phase(-3, 4));
  Circuit back = parse_circuit(circuit_to_text(c));
  EXPECT_EQ(circuit_to_text(back), circuit_to_text(c));
  Circuit viaj = circuit_from_json(nlohmann::json::parse(circuit_to_json(c).dump()));
  EXPECT_EQ(circuit_to_text(viaj), circuit_to_text(c));
  EXPECT_EQ(circuit_to_text(load_circuit(ZXBP_TEST_DATA "/example2q.qc")), circuit_to_text(two_qubit_example()));
}

TEST(Parsing, RejectsMalformedCircuits) {
  EXPECT_THROW(parse_circuit("RX q0 theta\nRZ q1 theta\n"), CircuitError);
  EXPECT_THROW(parse_circuit("FOO q1\n"), CircuitError);
  EXPECT_THROW(parse_circuit("RX q0 0.3\n"), CircuitError);
  EXPECT_THROW(parse_circuit("CNOT q0 q0\n"), CircuitError);
  EXPECT_THROW(parse_circuit("qubits 1\nCNOT q0 q1\n"), CircuitError);
  EXPECT_THROW(parse_circuit("RX qq theta\n"), CircuitError);
  EXPECT_THROW(load_circuit(ZXBP_TEST_DATA "/malformed.qc"), CircuitError);
  EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"({"gates": [{"gate": "RX"}]})")), CircuitError);
}

TEST(Parsing, Hamiltonians) {
  Hamiltonian h = parse_hamiltonian("0.5*ZZI + 1.0*XII - 0.25 YYZ");
  auto t = h.terms(3);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].coeff, Rational(1, 2));
  EXPECT_EQ(t[2].coeff, Rational(-1, 4));
  EXPECT_EQ(t[2].ops, "YYZ");
  EXPECT_EQ(h.trace_square(3), (Rational(1, 4) + 1 + Rational(1, 16)) * 8);
  EXPECT_EQ(parse_hamiltonian("ZI + ZI").terms(2).size(), 1u);
  Hamiltonian s = parse_hamiltonian("single q2 1 0 0 1/2");
  EXPECT_EQ(s.kind(), Hamiltonian::Kind::SingleQubit);
  EXPECT_EQ(s.min_qubits(), 3);
  Eigen::MatrixXcd m = s.matrix(3);
  EXPECT_NEAR(m(0, 0).real(), 1.5, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), 0.5, 1e-15);
  EXPECT_THROW(parse_hamiltonian("XQ"), CircuitError);
  EXPECT_THROW(parse_hamiltonian("XX + Z"), CircuitError);
  EXPECT_THROW(parse_hamiltonian("single q0 1 2"), CircuitError);
  EXPECT_EQ(parse_rational("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(parse_rational("-7/21"), Rational(-1, 3));
  EXPECT_THROW(parse_rational("1/0"), CircuitError);
}
