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

// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// status when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "zxbp/analysis.hpp"
#include "zxbp/evaluate.hpp"
#include "zxbp/fuzz.hpp"
#include "zxbp/integrate.hpp"
#include "zxbp/oracle.hpp"
#include "zxbp/vartn.hpp"

using namespace zxbp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Assignment to_assignment(const std::vector<double>& t) {
  Assignment a;
  for (std::size_t i = 0; i < t.size(); ++i) a[static_cast<int>(i)] = t[i];
  return a;
}

std::vector<double> random_theta(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<double> t(m);
  for (double& x : t) x = u(rng);
  return t;
}

// Every rotation carries its own uniformly distributed parameter.
Circuit random_assumption_circuit(std::mt19937_64& rng, int n, int m) {
  Circuit c(n);
  std::uniform_int_distribution<int> q(0, n - 1), kind(0, 3);
  int k = 0;
  while (k < m) {
    int g = kind(rng);
    if (g < 3) {
      GateKind r = g == 0 ? GateKind::RX : (g == 1 ? GateKind::RZ : GateKind::RY);
      c.add_param_rotation(r, q(rng), "p" + std::to_string(++k));
    } else if (n > 1) {
      int a = q(rng), b = q(rng);
      if (a != b) c.add_cnot(a, b);
    }
  }
  return c;
}

Hamiltonian random_pauli_sum(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> p(0, 3), coeff(-4, 4);
  std::vector<PauliTerm> terms;
  for (int t = 0; t < 2; ++t) {
    std::string ops;
    for (int q = 0; q < n; ++q) ops += "IXYZ"[p(rng)];
    int c = coeff(rng);
    terms.push_back({Rational(c == 0 ? 1 : c, 2), ops});
  }
  return Hamiltonian::pauli_sum(terms);
}

double zx_value(const Circuit& c, const Hamiltonian& h, const std::vector<double>& th, int grad_j = -1) {
  double total = 0;
  Assignment a = to_assignment(th);
  for (const auto& d : expectation_terms(c, h)) {
    total += evaluate_scalar(grad_j < 0 ? d : gradient_diagram(d, grad_j), a).real();
  }
  return total;
}

Hamiltonian pauli_on(char p, int q) {
  std::array<Rational, 4> k{0, 0, 0, 0};
  k[p == 'X' ? 1 : (p == 'Y' ? 2 : 3)] = 1;
  return Hamiltonian::single_qubit(q, k);
}

// 1. Two-qubit example: 3/64 exactly and in floating point by two routes,
// Monte-Carlo agreement.
void criterion1(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  Circuit c = two_qubit_example();
  Hamiltonian xx = parse_hamiltonian("XX");
  const ExactScalar target(Rational(3, 64));
  VarianceValue bf_exact = variance_bruteforce(c, xx, 0, true);
  VarianceValue net_exact = contract(build_network(c, xx, 0), true);
  double bf = variance_bruteforce(c, xx, 0).value;
  double net = contract(build_network(c, xx, 0)).value;
  McEstimate mc = mc_grad_stats(c, xx, 0, 200000, 7);
  double elapsed = seconds_since(t0);
  o.require(bf_exact.is_exact && bf_exact.exact == target, "brute force exact");
  o.require(net_exact.is_exact && net_exact.exact == target, "network exact");
  o.require(std::abs(bf - 3.0 / 64) <= 1e-12, "brute force float");
  o.require(std::abs(net - 3.0 / 64) <= 1e-12, "network float");
  o.require(std::abs(mc.variance - 3.0 / 64) <= 4 * mc.stderr_variance, "Monte-Carlo");
  o.require(elapsed < 5.0, "runtime");
  o.detail << "brute=" << bf_exact.exact.str() << " network=" << net_exact.exact.str() << " mc=" << mc.variance
           << "+-" << mc.stderr_variance << " time=" << elapsed << "s";
}

// 2. Closed-form tensors against quadrature.
void criterion2(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  struct Item {
    const char* name;
    Reconstruction r;
    SmallTensor ref;
    std::size_t entries;
  };
  std::vector<Item> items = {{"M", quadrature_m(), m_matrix(), 9},
                             {"ET", quadrature_et(), et_tensor(), 27},
                             {"T_TTN", quadrature_ttn(), ttn_tensor(), 27},
                             {"EM", quadrature_em(), em_matrix(), 81}};
  double elapsed = seconds_since(t0);
  for (const auto& it : items) {
    double err = it.r.max_error(it.ref);
    o.require(it.ref.data.size() == it.entries && it.r.values.size() == it.entries, std::string(it.name) + " size");
    o.require(err <= 1e-10, std::string(it.name) + " entries");
    o.detail << it.name << "(" << it.entries << ") err=" << err << " ";
  }
  o.require(elapsed < 30.0, "runtime");
  o.detail << "time=" << elapsed << "s";
}

// 3. Mean gradient vanishes for every family.
void criterion3(Outcome& o) {
  std::mt19937_64 rng(3);
  int runs = 0;
  double worst = 0;
  for (const char* family : {"he", "ttn", "qcnn", "mps"}) {
    for (int n : {2, 4}) {
      Circuit c = ansatz(family, n);
      Hamiltonian h = resolve_hamiltonian("Z0", n);
      std::uniform_int_distribution<int> pick(0, c.num_params() - 1);
      for (int r = 0; r < 3; ++r) {
        int j = pick(rng);
        McEstimate e = mc_grad_stats(c, h, j, 100000, 1000 + runs);
        if (e.stderr_mean > 0) worst = std::max(worst, std::abs(e.mean) / e.stderr_mean);
        o.require(std::abs(e.mean) <= 4 * e.stderr_mean,
                  std::string(family) + " n=" + std::to_string(n) + " j=" + std::to_string(j));
        ++runs;
      }
    }
  }
  o.detail << runs << " estimates, max |mean|/stderr=" << worst;
}

// 4. Network, brute force and Monte-Carlo agree on random circuits.
void criterion4(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4);
  int network_cases = 0;
  double worst_net = 0, worst_z = 0;
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 4;
    int m = 1 + t % 8;
    Circuit c = random_assumption_circuit(rng, n, m);
    Hamiltonian h = random_pauli_sum(rng, n);
    int j = std::uniform_int_distribution<int>(0, m - 1)(rng);
    double bf = variance_bruteforce(c, h, j).value;
    try {
      double net = contract(build_network(c, h, j)).value;
      worst_net = std::max(worst_net, std::abs(net - bf));
      o.require(std::abs(net - bf) <= 1e-9, "network case " + std::to_string(t));
      ++network_cases;
    } catch (const VartnError&) {
    }
    McEstimate e = mc_grad_stats(c, h, j, 100000, 4000 + t);
    // A parameter without effect has zero variance; the samples then carry
    // only rounding noise.
    if (bf > 1e-12) worst_z = std::max(worst_z, std::abs(bf - e.variance) / e.stderr_variance);
    o.require(std::abs(bf - e.variance) <= 4 * e.stderr_variance || std::abs(bf - e.variance) <= 1e-12,
              "Monte-Carlo case " + std::to_string(t));
  }
  double elapsed = seconds_since(t0);
  o.require(elapsed < 600.0, "runtime");
  o.detail << "30 circuits, network applicable on " << network_cases << ", max|net-brute|=" << worst_net
           << ", max|brute-mc|/stderr=" << worst_z << " time=" << elapsed << "s";
}

// 5. Unit eigenvalues of EM and LT.
void criterion5(Outcome& o) {
  Spectrum em = em_spectrum();
  o.require(em.unit_count == 4, "EM unit count");
  o.require(em.max_subunit <= 1 - 1e-6, "EM gap");
  o.require(em.eigenspace_distance <= 1e-9, "EM eigenspace");
  o.detail << "EM unit=" << em.unit_count << " dist=" << em.eigenspace_distance;
  for (int n = 3; n <= 6; ++n) {
    Spectrum lt = he_layer_spectrum(n);
    o.require(lt.unit_count == 2, "LT unit count n=" + std::to_string(n));
    o.require(lt.max_subunit <= 1 - 1e-6, "LT gap n=" + std::to_string(n));
    o.require(lt.eigenspace_distance <= 1e-9, "LT eigenspace n=" + std::to_string(n));
    o.detail << "; LT" << n << " unit=" << lt.unit_count << " sub=" << lt.max_subunit
             << " dist=" << lt.eigenspace_distance;
  }
}

// 6. Convergence of the deep hardware-efficient variance to 4 Tr(H^2) / 4^n.
void criterion6(Outcome& o) {
  const int n = 4;
  Hamiltonian z = pauli_on('Z', 0);
  double target = he_variance_limit(n, z).get_d();
  double lambda = he_layer_spectrum(n).max_subunit;
  std::vector<double> gap;
  for (int layers = 2; layers <= 12; ++layers) gap.push_back(std::abs(he_variance(n, layers, z, 1) - target));
  bool monotone = true;
  for (std::size_t i = 1; i < gap.size(); ++i) monotone = monotone && gap[i] < gap[i - 1];
  double ratio = std::pow(gap.back() / gap.front(), 1.0 / (gap.size() - 1));
  o.require(monotone, "gap not monotonically decreasing");
  o.require(ratio <= lambda + 0.05, "geometric ratio " + std::to_string(ratio) + " > " + std::to_string(lambda + 0.05));
  double deep = he_variance_limit_exact(n, z, 1);
  o.detail << "target=" << target << " gap(L=2)=" << gap.front() << " gap(L=3)=" << gap[1]
           << " gap(L=12)=" << gap.back() << "; deep-circuit value=" << deep << " (Tr(H^2)/(2(4^n-1))="
           << z.trace_square(n).get_d() / (2 * (std::pow(4.0, n) - 1)) << ")";
}

// 7. Scaling verdicts.
void criterion7(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  auto scan = [](const std::string& family, std::vector<int> ns) {
    ScanConfig cfg;
    cfg.family = family;
    cfg.ns = std::move(ns);
    return scaling_scan(cfg);
  };
  ScalingReport he = scan("he", {2, 3, 4, 5, 6, 7, 8});
  o.require(he.classification == "exponential", "he verdict " + he.classification);
  ScalingReport mps_r = scan("mps", {2, 3, 4, 5, 6, 7, 8, 9, 10});
  o.require(mps_r.classification == "exponential", "mps verdict " + mps_r.classification);
  bool halving = true;
  for (int n = 2; n < 10; ++n) halving = halving && mps_v2_coefficient(n + 1) * 2 == mps_v2_coefficient(n);
  o.require(halving, "mps v2 halving");
  for (const char* family : {"ttn", "qcnn"}) {
    ScalingReport r = scan(family, {2, 4, 8, 16});
    o.require(r.classification == "polynomial", std::string(family) + " verdict " + r.classification);
    for (const auto& row : r.rows) {
      o.require(row.variance >= row.reference - 1e-9, std::string(family) + " bound n=" + std::to_string(row.n));
    }
    o.detail << family << "=" << r.classification << " (V16=" << r.rows.back().variance
             << " bound=" << r.rows.back().reference << ") ";
  }
  double elapsed = seconds_since(t0);
  o.require(elapsed < 900.0, "runtime");
  o.detail << "he=" << he.classification << " mps=" << mps_r.classification << " halving=" << (halving ? "exact" : "no")
           << " time=" << elapsed << "s";
}

// 8. Rewrite soundness.
void criterion8(Outcome& o) {
  FuzzReport r = rewrite_fuzz(200, 8, 1e-9);
  o.require(r.diagrams == 200, "diagram count");
  o.require(r.applications > 0, "no rule applied");
  o.require(r.max_error <= 1e-9, "evaluation changed");
  o.require(r.graph_like_failures == 0, "graph-like check");
  o.detail << r.diagrams << " diagrams, " << r.applications << " applications, max err=" << r.max_error
           << ", graph-like failures=" << r.graph_like_failures;
}

// 9. Gradients.
void criterion9(Outcome& o) {
  std::mt19937_64 rng(9);
  double worst_zx = 0, worst_ps = 0, worst_shift = 0;
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 3;
    int m = 1 + t % 6;
    Circuit c = random_assumption_circuit(rng, n, m);
    Hamiltonian h = random_pauli_sum(rng, n);
    int j = std::uniform_int_distribution<int>(0, m - 1)(rng);
    auto th = random_theta(rng, m);
    double fd = gradient_fd(c, th, h, j);
    double zx = zx_value(c, h, th, j);
    double ps = gradient_ps(c, th, h, j);
    auto tp = th, tm = th;
    tp[j] += M_PI / 2;
    tm[j] -= M_PI / 2;
    double shift = 0.5 * (zx_value(c, h, tp) - zx_value(c, h, tm));
    worst_zx = std::max(worst_zx, std::abs(zx - fd));
    worst_ps = std::max(worst_ps, std::abs(ps - fd));
    worst_shift = std::max(worst_shift, std::abs(zx - shift));
  }
  o.require(worst_zx <= 1e-6, "gradient diagram vs finite difference");
  o.require(worst_ps <= 1e-6, "parameter shift vs finite difference");
  o.require(worst_shift <= 1e-10, "parameter-shift identity");
  o.detail << "max|zx-fd|=" << worst_zx << " max|ps-fd|=" << worst_ps << " max|zx-shift|=" << worst_shift;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"two-qubit example variance", criterion1},
      {"closed-form tensors", criterion2},
      {"mean gradient vanishes", criterion3},
      {"cross-stack variance agreement", criterion4},
      {"hardware-efficient spectra", criterion5},
      {"hardware-efficient deep limit", criterion6},
      {"scaling verdicts", criterion7},
      {"rewrite soundness fuzz", criterion8},
      {"gradient correctness", criterion9},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    o.detail.precision(6);
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu (%s): %s  %s\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
