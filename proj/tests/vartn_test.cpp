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

#include "zxbp/vartn.hpp"

#include <random>

#include "gtest/gtest.h"
#include "zxbp/oracle.hpp"

using namespace zxbp;

namespace {

Circuit random_circuit(std::mt19937_64& rng, int n, int m) {
  Circuit c(n);
  std::uniform_int_distribution<int> q(0, n - 1), kind(0, 9), eighth(0, 7);
  int placed = 0;
  while (placed < m) {
    int k = kind(rng);
    int a = q(rng);
    if (k < 5) {
      GateKind g = k < 2 ? GateKind::RX : (k < 4 ? GateKind::RZ : GateKind::RY);
      c.add_param_rotation(g, a, "t" + std::to_string(++placed));
    } else if (k < 7 && n > 1) {
      int b = q(rng);
      if (b == a) b = (a + 1) % n;
      c.add_cnot(a, b);
    } else if (k == 7) {
      c.add_h(a);
    } else {
      c.add_rotation(k == 8 ? GateKind::RZ : GateKind::RX, a, Phase(eighth(rng), 4));
    }
  }
  return c;
}

Hamiltonian random_hamiltonian(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> p(0, 3), cnt(1, 3), num(-4, 4);
  std::vector<PauliTerm> terms;
  int k = cnt(rng);
  for (int t = 0; t < k; ++t) {
    std::string s;
    for (int q = 0; q < n; ++q) s += "IXYZ"[p(rng)];
    int c = num(rng);
    terms.push_back({Rational(c == 0 ? 1 : c, 4), s});
  }
  return Hamiltonian::pauli_sum(terms);
}

}  // namespace

TEST(Bruteforce, TwoQubitExampleIsThreeSixtyFourths) {
  Circuit c = two_qubit_example();
  Hamiltonian h = parse_hamiltonian("XX");
  auto exact = variance_bruteforce(c, h, 0, true);
  ASSERT_TRUE(exact.is_exact);
  EXPECT_EQ(exact.exact, ExactScalar(Rational(3, 64)));
  EXPECT_NEAR(variance_bruteforce(c, h, 0).value, 3.0 / 64, 1e-12);
  EXPECT_NEAR(variance_from_vtensor(c, h, 0), 3.0 / 64, 1e-12);
  // 64 Var per parameter
  std::vector<int> expected{3, 1, 11, 11, 3, 11};
  for (int j = 0; j < 6; ++j) {
    EXPECT_EQ(variance_bruteforce(c, h, j, true).exact, ExactScalar(Rational(expected[j], 64))) << j;
  }
}

TEST(Bruteforce, ParameterWithoutEffectGivesZero) {
  Circuit c(2);
  c.add_param_rotation(GateKind::RZ, 0, "a");
  c.add_param_rotation(GateKind::RX, 1, "b");
  EXPECT_EQ(variance_bruteforce(c, parse_hamiltonian("ZZ"), 0, true).exact, ExactScalar(0));
  EXPECT_EQ(variance_bruteforce(c, parse_hamiltonian("IZ"), 1, true).exact, ExactScalar(Rational(1, 2)));
}

TEST(Bruteforce, RejectsLargeCircuits) {
  Circuit c = hardware_efficient(2, 2);
  EXPECT_THROW(variance_bruteforce(c, parse_hamiltonian("ZI"), 0), VartnError);
  EXPECT_THROW(variance_bruteforce(two_qubit_example(), parse_hamiltonian("XX"), 6), CircuitError);
}

TEST(Bruteforce, MatchesMonteCarlo) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 3; ++t) {
    Circuit c = random_circuit(rng, 2, 4);
    Hamiltonian h = random_hamiltonian(rng, 2);
    double v = variance_bruteforce(c, h, 0).value;
    auto mc = mc_grad_stats(c, h, 0, 200000, 101 + t);
    EXPECT_LT(std::abs(mc.variance - v), 4 * mc.stderr_variance + 1e-12) << t;
  }
}

TEST(VTensor, RealOnRealHamiltonians) {
  Circuit c = two_qubit_example();
  VTensor v(expectation_terms(c, parse_hamiltonian("XX")));
  ASSERT_EQ(v.num_params(), 6);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> a(1, 3);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> as(6);
    for (auto& x : as) x = a(rng);
    EXPECT_NEAR(v(as).imag(), 0.0, 1e-12);
  }
  // All-T1 is the square of the constant Fourier coefficient, so it is
  // never negative.
  EXPECT_GE(v(std::vector<int>(6, 1)).real(), -1e-12);
}

TEST(VTensor, ParameterFreeEffect) {
  Circuit c(1);
  c.add_param_rotation(GateKind::RZ, 0, "a");
  auto d = expectation_diagram(c, parse_hamiltonian("Z"));
  // <Z> = 1 for every theta: only the all-T1 assignment survives.
  EXPECT_NEAR(v_tensor(d, {1}).real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(v_tensor(d, {2})), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(v_tensor(d, {3})), 0.0, 1e-12);
}

TEST(Network, TwoQubitExampleExact) {
  Circuit c = two_qubit_example();
  Hamiltonian h = parse_hamiltonian("XX");
  auto net = build_network(c, h, 0);
  EXPECT_TRUE(net.exact);
  auto v = contract(net, true);
  ASSERT_TRUE(v.is_exact);
  EXPECT_EQ(v.exact, ExactScalar(Rational(3, 64)));
  EXPECT_NEAR(contract(net).value, 3.0 / 64, 1e-12);
  auto j = net.to_json();
  EXPECT_EQ(j["params"], 6);
  int medges = 0, p2 = 0;
  for (const auto& node : j["nodes"]) {
    medges += node["kind"] == "MEdge";
    p2 += node["kind"] == "P2";
  }
  EXPECT_GT(medges, 0);
  EXPECT_EQ(p2, 1);
}

TEST(Network, MatchesBruteForceOnRandomCircuits) {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> nq(1, 4), mp(2, 8);
  for (int t = 0; t < 30; ++t) {
    int n = nq(rng), m = mp(rng);
    Circuit c = random_circuit(rng, n, m);
    Hamiltonian h = random_hamiltonian(rng, n);
    int j = std::uniform_int_distribution<int>(0, m - 1)(rng);
    double bf = variance_bruteforce(c, h, j).value;
    double nw = contract(build_network(c, h, j)).value;
    EXPECT_NEAR(nw, bf, 1e-9) << "instance " << t << "\n" << circuit_to_text(c) << h.str();
  }
}

TEST(Network, FamiliesMatchBruteForce) {
  Hamiltonian z0 = Hamiltonian::single_qubit(0, {0, 0, 0, 1});
  for (const char* fam : {"he", "ttn", "qcnn", "mps"}) {
    Circuit c = ansatz(fam, 2, 1);
    for (int j = 0; j < c.num_params(); ++j) {
      EXPECT_NEAR(contract(build_network(c, z0, j)).value, variance_bruteforce(c, z0, j).value, 1e-10)
          << fam << " " << j;
    }
  }
  Circuit mps3 = mps(3);
  Hamiltonian x2 = Hamiltonian::single_qubit(2, {0, 1, 0, 0});
  EXPECT_NEAR(contract(build_network(mps3, x2, 0)).value, variance_bruteforce(mps3, x2, 0).value, 1e-10);
}

TEST(Network, ExposedIndicesSumToVariance) {
  Circuit c = two_qubit_example();
  Hamiltonian h = parse_hamiltonian("XX");
  NetworkOptions opt;
  opt.j = 0;
  opt.exposed = {2, 4};
  auto net = build_network(c, h, opt);
  ASSERT_EQ(net.open.size(), 2U);
  auto t = contract_exact(net);
  ASSERT_EQ(t.size(), 9U);
  ExactScalar sum;
  for (const auto& x : t) sum += x;
  EXPECT_EQ(sum, ExactScalar(Rational(3, 64)));
  NetworkOptions bad;
  bad.j = 0;
  bad.exposed = {0};
  EXPECT_THROW(build_network(c, h, bad), VartnError);
}

TEST(Network, LinearInHamiltonianPairs) {
  // Var is a quadratic form in H: Var(H1 + H2) + Var(H1 - H2) = 2 Var(H1) + 2 Var(H2).
  Circuit c = two_qubit_example();
  auto var = [&](const std::string& s) { return contract(build_network(c, parse_hamiltonian(s), 0), true).exact; };
  ExactScalar lhs = var("XX + 0.5*ZY") + var("XX - 0.5*ZY");
  ExactScalar rhs = ExactScalar(2) * var("XX") + ExactScalar(2) * var("0.5*ZY");
  EXPECT_EQ(lhs, rhs);
}

TEST(Network, DisconnectedComponentsMultiply) {
  // Two independent single-qubit blocks: the variance of a product
  // observable factorizes into Var(first) * E[second^2].
  Circuit c(2);
  c.add_param_rotation(GateKind::RX, 0, "a");
  c.add_param_rotation(GateKind::RX, 1, "b");
  auto v = contract(build_network(c, parse_hamiltonian("ZZ"), 0), true);
  // d/da cos a cos b = -sin a cos b; E = 1/2 * 1/2
  EXPECT_EQ(v.exact, ExactScalar(Rational(1, 4)));
}

TEST(HTilde, SingleQubitClosedForms) {
  auto z = h_tilde(Hamiltonian::single_qubit(0, {0, 0, 0, 1}), 1);
  EXPECT_EQ(z, (std::vector<ExactScalar>{0, 2, 0}));
  auto y = h_tilde(Hamiltonian::single_qubit(0, {0, 0, 1, 0}), 1);
  EXPECT_EQ(y, (std::vector<ExactScalar>{2, 0, -2}));
  auto id = h_tilde(Hamiltonian::single_qubit(0, {1, 0, 0, 0}), 1);
  EXPECT_EQ(id, (std::vector<ExactScalar>{2, 0, 2}));
  // P2 annihilates the identity part.
  EXPECT_TRUE(id[1].is_zero());
}

TEST(HTilde, GeneralSingleQubitMatchesFormula) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> num(-5, 5);
  for (int t = 0; t < 20; ++t) {
    std::array<Rational, 4> k;
    for (auto& x : k) {
      x = Rational(num(rng), 3);
      x.canonicalize();
    }
    auto ht = h_tilde(Hamiltonian::single_qubit(0, k), 1);
    Rational v13 = 2 * k[0] * k[0], v2 = 2 * (k[1] * k[1] + k[3] * k[3]), v13m = 2 * k[2] * k[2];
    EXPECT_EQ(ht[0], ExactScalar(v13 + v13m));
    EXPECT_EQ(ht[1], ExactScalar(v2));
    EXPECT_EQ(ht[2], ExactScalar(v13 - v13m));
  }
}

TEST(HTilde, TwoLegProductAndErrors) {
  auto zz = h_tilde(parse_hamiltonian("ZZ"), 2);
  ASSERT_EQ(zz.size(), 9U);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) EXPECT_EQ(zz[3 * a + b], ExactScalar(a == 1 && b == 1 ? 4 : 0));
  }
  EXPECT_THROW(h_tilde(parse_hamiltonian("ZZ"), 1), VartnError);
}

TEST(ITilde, ZeroStateIsNonNegative) {
  auto one = i_tilde({InputState::Zero});
  ASSERT_EQ(one.size(), 3U);
  // Each T-support holds two of the sixteen equal weights 1/4.
  for (const auto& x : one) EXPECT_EQ(x, ExactScalar(Rational(1, 2)));
  EXPECT_EQ(i_tilde({InputState::Zero}, WireFrame::Z), (std::vector<ExactScalar>{1, 0, 0}));
  auto two = i_tilde({InputState::Zero, InputState::Zero});
  std::vector<std::array<int, 3>> us{{1, 0, 1}, {0, 1, 0}, {1, 0, -1}};
  for (const auto& u : us) {
    for (const auto& w : us) {
      ExactScalar s;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) s += two[3 * a + b] * ExactScalar(u[a] * w[b]);
      }
      EXPECT_GE(s.real_value(), 0.0);
    }
  }
  ExactScalar all13;
  for (int a : {0, 2}) {
    for (int b : {0, 2}) all13 += two[3 * a + b];
  }
  EXPECT_GT(all13.real_value(), 0.0);
}
