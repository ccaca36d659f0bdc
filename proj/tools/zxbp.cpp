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

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "zxbp/analysis.hpp"
#include "zxbp/evaluate.hpp"
#include "zxbp/integrate.hpp"
#include "zxbp/oracle.hpp"
#include "zxbp/vartn.hpp"

using namespace zxbp;
using json = nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerifyFailed = 4;
constexpr const char* kSchemaVersion = "v1";
constexpr const char* kOutputDirEnv = "ZXBP_OUTPUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string ansatz;
  std::string circuit;
  std::string hamiltonian;
  std::string param;
  std::string method = "auto";
  std::string n_range;
  std::string layers = "1";
  int n = 0;
  int j = -1;
  int lemma = 0;
  bool mc = false;
  bool exact = false;
  std::uint64_t seed = 7;
  long samples = 200000;
  std::string out;
  std::string format = "csv";

  json to_json() const {
    json j_cfg = {{"command", command}, {"format", format}};
    if (!ansatz.empty()) j_cfg["ansatz"] = ansatz;
    if (!circuit.empty()) j_cfg["circuit"] = circuit;
    if (!hamiltonian.empty()) j_cfg["H"] = hamiltonian;
    if (command == "analyze") {
      j_cfg["param"] = param;
      j_cfg["method"] = method;
      j_cfg["exact"] = exact;
      if (n > 0) j_cfg["n"] = n;
      j_cfg["L"] = layers;
    }
    if (command == "scan") {
      j_cfg["n"] = n_range;
      j_cfg["L"] = layers;
      j_cfg["j"] = j;
    }
    if (command == "verify") {
      j_cfg["lemma"] = lemma;
      j_cfg["mc"] = mc;
      j_cfg["seed"] = seed;
      j_cfg["samples"] = samples;
    }
    if (command == "eigen") j_cfg["n"] = n;
    return j_cfg;
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string csv_header(const std::string& command) {
  return std::string("# zxbp ") + command + " csv " + kSchemaVersion + "\n";
}

void emit(const RunConfig& cfg, const std::string& content) {
  std::string path = cfg.out;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      path = (std::filesystem::path(dir) / (cfg.command + "." + cfg.format)).string();
    }
  }
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << content;
  std::cerr << "wrote " << path << "\n";
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::vector<int> parse_range(const std::string& text, const std::string& family) {
  std::vector<int> ns;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad qubit count '" + s + "'");
    }
  };
  bool pow2 = family == "ttn" || family == "qcnn";
  if (auto dots = text.find(".."); dots != std::string::npos) {
    int lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (lo < 1 || hi < lo) throw UsageError("bad range '" + text + "'");
    for (int n = lo; n <= hi; ++n) {
      if (!pow2 || (n >= 2 && (n & (n - 1)) == 0)) ns.push_back(n);
    }
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      int n = number(part);
      if (n < 1) throw UsageError("qubit counts must be positive");
      ns.push_back(n);
    }
  }
  return ns;
}

int parse_layers(const std::string& text, int n) {
  if (text == "n") return n;
  try {
    int l = std::stoi(text);
    if (l >= 1) return l;
  } catch (const std::exception&) {
  }
  throw UsageError("--L must be a positive integer or 'n'");
}

int resolve_param(const Circuit& c, const std::string& spec) {
  if (spec.empty()) {
    if (c.num_params() == 0) throw UsageError("circuit has no parameters");
    return 0;
  }
  const auto& ps = c.params();
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (ps[k] == spec) return static_cast<int>(k);
  }
  if (!spec.empty() && std::all_of(spec.begin(), spec.end(), ::isdigit)) {
    int j = std::stoi(spec);
    if (j < c.num_params()) return j;
  }
  throw UsageError("unknown parameter '" + spec + "'");
}

// ---- analyze ----

struct AnalyzeResult {
  double value = 0.0;
  std::string exact;
  std::string method;
  json breakdown = json::object();
};

AnalyzeResult analyze_network(const Circuit& c, const Hamiltonian& h, int j, bool exact) {
  VarianceNetwork net = build_network(c, h, j);
  AnalyzeResult r;
  VarianceValue v = contract(net, exact && net.exact);
  r.value = v.value;
  if (v.is_exact) r.exact = v.exact.str();
  r.method = "network";
  r.breakdown = {{"prefactor", net.prefactor.str()},
                 {"pair_terms", net.terms.size()},
                 {"variables", net.vars.size()},
                 {"nodes", net.nodes.size()}};
  return r;
}

AnalyzeResult analyze_bruteforce(const Circuit& c, const Hamiltonian& h, int j, bool exact) {
  if (c.num_params() > kBruteForceMaxParams) {
    throw Infeasible("brute force limited to " + std::to_string(kBruteForceMaxParams) + " parameters");
  }
  VarianceValue v = variance_bruteforce(c, h, j, exact);
  AnalyzeResult r;
  r.value = v.value;
  if (v.is_exact) r.exact = v.exact.str();
  r.method = "brute-force";
  r.breakdown = {{"terms", std::pow(2.0, 2 * c.num_params())}};
  return r;
}

bool family_supports(const std::string& family, int n, const Hamiltonian& h, int j) {
  if (family == "he") return n <= kLayerApplyLimit;
  if (family == "ttn" || family == "qcnn") return h.min_qubits() <= 1;
  if (family == "mps") {
    if (j != 0) return false;
    try {
      mps_variance(n, h);
      return true;
    } catch (const AnalysisError&) {
      return false;
    }
  }
  return false;
}

AnalyzeResult analyze_family(const std::string& family, int n, int layers, const Circuit& c, const Hamiltonian& h,
                             int j) {
  AnalyzeResult r;
  r.method = "family";
  if (family == "he") {
    if (n > kLayerApplyLimit) throw Infeasible("layer transfer limited to " + std::to_string(kLayerApplyLimit) + " qubits");
    r.value = he_variance(n, layers, h, j);
    r.breakdown = {{"transfer_dimension", std::pow(3.0, n)},
                   {"limit_formula", to_string(he_variance_limit(n, h))}};
  } else if (family == "ttn" || family == "qcnn") {
    bool tree = family == "ttn";
    r.value = tree ? ttn_variance(n, h, j) : qcnn_variance(n, h, j);
    LowerBound b = tree ? ttn_lower_bound(n, h) : qcnn_lower_bound(n, h);
    r.breakdown = {{"lower_bound", b.to_json(c)}};
  } else if (family == "mps") {
    Rational v = mps_variance(n, h);
    r.value = v.get_d();
    r.exact = to_string(v);
    r.breakdown = {{"v2_coefficient", to_string(mps_v2_coefficient(n))}};
  } else {
    throw UsageError("no closed form for family " + family);
  }
  return r;
}

int cmd_analyze(const RunConfig& cfg) {
  if (cfg.ansatz.empty() == cfg.circuit.empty()) throw UsageError("give exactly one of --ansatz or --circuit");
  if (cfg.hamiltonian.empty()) throw UsageError("--H is required");
  Circuit c(1);
  int n = cfg.n;
  int layers = 1;
  if (!cfg.ansatz.empty()) {
    if (n < 1) throw UsageError("--n is required with --ansatz");
    layers = parse_layers(cfg.layers, n);
    c = ansatz(cfg.ansatz, n, layers);
  } else {
    c = load_circuit(cfg.circuit);
    n = c.n_qubits();
  }
  Hamiltonian h = resolve_hamiltonian(cfg.hamiltonian, n);
  int j = resolve_param(c, cfg.param);

  std::string method = cfg.method;
  if (method == "auto") {
    if (!cfg.ansatz.empty() && family_supports(cfg.ansatz, n, h, j)) {
      method = "family";
    } else {
      method = "network";
    }
  }
  AnalyzeResult r;
  if (method == "family") {
    if (cfg.ansatz.empty()) throw UsageError("--method family needs --ansatz");
    r = analyze_family(cfg.ansatz, n, layers, c, h, j);
  } else if (method == "network") {
    try {
      r = analyze_network(c, h, j, cfg.exact || cfg.method == "auto");
    } catch (const VartnError& e) {
      if (cfg.method != "auto" || std::string(e.what()).find("infeasible") == std::string::npos) throw;
      r = analyze_bruteforce(c, h, j, cfg.exact);
    }
  } else if (method == "brute-force") {
    r = analyze_bruteforce(c, h, j, cfg.exact);
  } else {
    throw UsageError("unknown method " + method);
  }

  if (cfg.format == "json") {
    json out = {{"schema", std::string("zxbp.analyze.") + kSchemaVersion},
                {"config", cfg.to_json()},
                {"n", n},
                {"L", layers},
                {"parameter", c.params()[j]},
                {"j", j},
                {"H", h.str()},
                {"variance", r.value},
                {"method", r.method},
                {"breakdown", r.breakdown}};
    if (!r.exact.empty()) out["exact"] = r.exact;
    emit(cfg, dump_json(out));
  } else {
    std::ostringstream os;
    os << csv_header("analyze") << "source,n,L,parameter,j,H,method,variance,exact\n";
    os << (cfg.ansatz.empty() ? cfg.circuit : cfg.ansatz) << ',' << n << ',' << layers << ',' << c.params()[j] << ','
       << j << ",\"" << h.str() << "\"," << r.method << ',' << fmt(r.value) << ',' << r.exact << '\n';
    emit(cfg, os.str());
  }
  return 0;
}

// ---- verify ----

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return std::isfinite(residual) && residual <= tolerance; }
};

void tensor_checks(std::vector<Check>& out, const std::string& label, const Reconstruction& r,
                   const SmallTensor& ref) {
  auto exact = ref.to_double();
  for (std::size_t k = 0; k < exact.size(); ++k) {
    std::string idx;
    std::size_t rest = k;
    std::vector<int> digits(ref.shape.size());
    for (std::size_t d = ref.shape.size(); d-- > 0;) {
      digits[d] = static_cast<int>(rest % ref.shape[d]) + 1;
      rest /= ref.shape[d];
    }
    for (int d : digits) idx += std::to_string(d);
    out.push_back({label + "[" + idx + "]", std::abs(r.values.at(k) - exact[k]), 1e-10});
  }
}

void lemma_checks(std::vector<Check>& out, int lemma) {
  if (lemma == 0 || lemma == 3) tensor_checks(out, "M", quadrature_m(), m_matrix());
  if (lemma == 0 || lemma == 4) tensor_checks(out, "ET", quadrature_et(), et_tensor());
  if (lemma == 0 || lemma == 5) tensor_checks(out, "T_TTN", quadrature_ttn(), ttn_tensor());
  if (lemma == 0 || lemma == 6) tensor_checks(out, "EM", quadrature_em(), em_matrix());
}

void example_checks(std::vector<Check>& out) {
  Circuit c = two_qubit_example();
  Hamiltonian xx = parse_hamiltonian("XX");
  const double target = 3.0 / 64;
  VarianceValue bf = variance_bruteforce(c, xx, 0, true);
  out.push_back({"example_bruteforce_exact", bf.exact == ExactScalar(Rational(3, 64)) ? 0.0 : 1.0, 0.0});
  VarianceValue net = contract(build_network(c, xx, 0), true);
  out.push_back({"example_network_exact", net.exact == ExactScalar(Rational(3, 64)) ? 0.0 : 1.0, 0.0});
  out.push_back({"example_network_float", std::abs(contract(build_network(c, xx, 0)).value - target), 1e-12});
}

void cross_stack_checks(std::vector<Check>& out) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  double expect_err = 0, grad_err = 0, shift_err = 0;
  for (int t = 0; t < 10; ++t) {
    Circuit c = ansatz(t % 2 ? "he" : "mps", 2 + t % 2);
    Hamiltonian h = resolve_hamiltonian("Z0", c.n_qubits());
    std::vector<double> th(c.num_params());
    for (double& x : th) x = angle(rng);
    Assignment a;
    for (std::size_t k = 0; k < th.size(); ++k) a[static_cast<int>(k)] = th[k];
    double oracle = expectation(c, th, h);
    double zx = 0, gzx = 0;
    int j = t % c.num_params();
    for (const auto& d : expectation_terms(c, h)) {
      zx += evaluate_scalar(d, a).real();
      gzx += evaluate_scalar(gradient_diagram(d, j), a).real();
    }
    expect_err = std::max(expect_err, std::abs(zx - oracle));
    grad_err = std::max(grad_err, std::abs(gzx - gradient_fd(c, th, h, j)));
    shift_err = std::max(shift_err, std::abs(gzx - gradient_ps(c, th, h, j)));
  }
  out.push_back({"expectation_zx_vs_statevector", expect_err, 1e-9});
  out.push_back({"gradient_zx_vs_finite_difference", grad_err, 1e-6});
  out.push_back({"gradient_zx_vs_parameter_shift", shift_err, 1e-10});
}

void spectrum_checks(std::vector<Check>& out) {
  Spectrum em = em_spectrum();
  out.push_back({"em_unit_count", std::abs(em.unit_count - 4.0), 0.0});
  out.push_back({"em_eigenspace", em.eigenspace_distance, 1e-9});
  for (int n = 3; n <= 4; ++n) {
    Spectrum lt = he_layer_spectrum(n);
    out.push_back({"lt" + std::to_string(n) + "_unit_count", std::abs(lt.unit_count - 2.0), 0.0});
    out.push_back({"lt" + std::to_string(n) + "_eigenspace", lt.eigenspace_distance, 1e-9});
  }
}

void mc_checks(std::vector<Check>& out, std::uint64_t seed, long samples) {
  McEstimate e = mc_grad_stats(two_qubit_example(), parse_hamiltonian("XX"), 0, samples, seed);
  out.push_back({"example_mc_mean", std::abs(e.mean), 4 * e.stderr_mean});
  out.push_back({"example_mc_variance", std::abs(e.variance - 3.0 / 64), 4 * e.stderr_variance});
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.lemma != 0 && (cfg.lemma < 3 || cfg.lemma > 6)) throw UsageError("--lemma must be 3, 4, 5 or 6");
  if (cfg.samples < 2) throw UsageError("--samples must be at least 2");
  std::vector<Check> checks;
  bool suite = cfg.lemma == 0 && !cfg.mc;
  if (cfg.lemma != 0 || suite) lemma_checks(checks, cfg.lemma);
  if (suite) {
    example_checks(checks);
    cross_stack_checks(checks);
    spectrum_checks(checks);
  }
  if (cfg.mc) mc_checks(checks, cfg.seed, cfg.samples);

  bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& c : checks) {
      rows.push_back({{"check", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
    }
    emit(cfg, dump_json({{"schema", std::string("zxbp.verify.") + kSchemaVersion},
                         {"config", cfg.to_json()},
                         {"checks", rows},
                         {"pass", all}}));
  } else {
    std::ostringstream os;
    os << csv_header("verify") << "check,residual,tolerance,status\n";
    for (const auto& c : checks) {
      os << c.name << ',' << fmt(c.residual) << ',' << fmt(c.tolerance) << ',' << (c.pass() ? "PASS" : "FAIL") << '\n';
    }
    emit(cfg, os.str());
  }
  return all ? 0 : kExitVerifyFailed;
}

// ---- scan ----

int cmd_scan(const RunConfig& cfg) {
  if (cfg.ansatz.empty()) throw UsageError("--ansatz is required");
  if (cfg.n_range.empty()) throw UsageError("--n is required");
  ScanConfig sc;
  sc.family = cfg.ansatz;
  sc.ns = parse_range(cfg.n_range, cfg.ansatz);
  sc.layers = cfg.layers == "n" ? 0 : parse_layers(cfg.layers, 1);
  sc.hamiltonian = cfg.hamiltonian;
  sc.j = cfg.j;
  if (sc.family == "he") {
    for (int n : sc.ns) {
      if (n > kLayerApplyLimit) throw Infeasible("layer transfer limited to " + std::to_string(kLayerApplyLimit) + " qubits");
    }
  }
  ScalingReport r = scaling_scan(sc);
  if (cfg.format == "json") {
    json out = r.to_json();
    out["schema"] = std::string("zxbp.scan.") + kSchemaVersion;
    out["config"] = cfg.to_json();
    emit(cfg, dump_json(out));
  } else {
    emit(cfg, csv_header("scan") + "# H=" + r.hamiltonian + "\n" + r.to_csv());
  }
  return 0;
}

// ---- eigen / dump-tensors ----

json spectrum_json(const Spectrum& s) {
  json ev = json::array();
  for (const auto& l : s.eigenvalues) ev.push_back({l.real(), l.imag()});
  return {{"unit_count", s.unit_count},
          {"max_subunit", s.max_subunit},
          {"eigenspace_distance", s.eigenspace_distance},
          {"eigenvalues", ev}};
}

int cmd_eigen(const RunConfig& cfg) {
  if (cfg.n < 2) throw UsageError("--n must be at least 2");
  if (cfg.n > kDenseLayerLimit) {
    throw Infeasible("dense layer operator limited to " + std::to_string(kDenseLayerLimit) + " qubits");
  }
  Spectrum em = em_spectrum();
  Spectrum lt = he_layer_spectrum(cfg.n);
  if (cfg.format == "json") {
    emit(cfg, dump_json({{"schema", std::string("zxbp.eigen.") + kSchemaVersion},
                         {"config", cfg.to_json()},
                         {"EM", spectrum_json(em)},
                         {"LT", spectrum_json(lt)}}));
    return 0;
  }
  std::ostringstream os;
  os << csv_header("eigen");
  os << "# EM unit_count=" << em.unit_count << " max_subunit=" << fmt(em.max_subunit)
     << " eigenspace_distance=" << fmt(em.eigenspace_distance) << "\n";
  os << "# LT n=" << cfg.n << " unit_count=" << lt.unit_count << " max_subunit=" << fmt(lt.max_subunit)
     << " eigenspace_distance=" << fmt(lt.eigenspace_distance) << "\n";
  os << "operator,index,re,im,abs\n";
  auto rows = [&](const char* name, const Spectrum& s) {
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
      const auto& l = s.eigenvalues[k];
      os << name << ',' << k << ',' << fmt(l.real()) << ',' << fmt(l.imag()) << ',' << fmt(std::abs(l)) << '\n';
    }
  };
  rows("LT", lt);
  rows("EM", em);
  emit(cfg, os.str());
  return 0;
}

int cmd_dump_tensors(const RunConfig& cfg) {
  std::vector<SmallTensor> ts = {m_matrix(), et_tensor(), ttn_tensor(), em_matrix()};
  if (cfg.format == "json") {
    json out = {{"schema", std::string("zxbp.tensors.") + kSchemaVersion}};
    for (const auto& t : ts) out[t.name] = t.to_json();
    emit(cfg, dump_json(out));
    return 0;
  }
  std::ostringstream os;
  os << csv_header("dump-tensors") << "tensor,index,value\n";
  for (const auto& t : ts) {
    for (std::size_t k = 0; k < t.data.size(); ++k) {
      std::string idx;
      std::size_t rest = k;
      std::vector<int> digits(t.shape.size());
      for (std::size_t d = t.shape.size(); d-- > 0;) {
        digits[d] = static_cast<int>(rest % t.shape[d]) + 1;
        rest /= t.shape[d];
      }
      for (int d : digits) idx += std::to_string(d);
      os << t.name << ',' << idx << ',' << to_string(t.data[k]) << '\n';
    }
  }
  emit(cfg, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-variance analysis of parameterized circuits through ZX diagrams"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::string> families = {"he", "ttn", "qcnn", "mps"};

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--out", cfg.out, std::string("Output file; defaults to $") + kOutputDirEnv +
                                             "/<command>.<format> when set, else stdout");
  };

  auto* analyze = app.add_subcommand("analyze", "Variance of one gradient component");
  analyze->add_option("--ansatz", cfg.ansatz, "Built-in family")->check(CLI::IsMember(families));
  analyze->add_option("--circuit", cfg.circuit, "Circuit file (text or JSON)");
  analyze->add_option("--n", cfg.n, "Qubits for --ansatz");
  analyze->add_option("--L", cfg.layers, "Layers for he: an integer or 'n'");
  analyze->add_option("--H", cfg.hamiltonian, "Observable: Z0, X3, lastX, or a Pauli sum such as 'XX + 0.5 ZI'");
  analyze->add_option("--param", cfg.param, "Parameter name or 0-based index (default: the first)");
  analyze->add_option("--method", cfg.method, "Evaluation method")
      ->check(CLI::IsMember({"auto", "family", "network", "brute-force"}));
  analyze->add_flag("--exact", cfg.exact, "Exact arithmetic where the method allows it");
  add_format(analyze);

  auto* verify = app.add_subcommand("verify", "Cross-check the closed forms against the oracle");
  verify->add_option("--lemma", cfg.lemma, "Only the quadrature checks of one tensor: 3 = M, 4 = ET, 5 = T_TTN, 6 = EM");
  verify->add_flag("--mc", cfg.mc, "Monte-Carlo check of the two-qubit example");
  verify->add_option("--seed", cfg.seed, "Monte-Carlo seed");
  verify->add_option("--samples", cfg.samples, "Monte-Carlo samples");
  add_format(verify);

  auto* scan = app.add_subcommand("scan", "Variance against qubit count with a scaling verdict");
  scan->add_option("--ansatz", cfg.ansatz, "Family")->check(CLI::IsMember(families));
  scan->add_option("--n", cfg.n_range, "Range lo..hi or a comma list; ttn/qcnn keep powers of two");
  scan->add_option("--L", cfg.layers, "Layers for he: an integer or 'n'");
  scan->add_option("--H", cfg.hamiltonian, "Observable (default Z0, lastX for mps)");
  scan->add_option("--j", cfg.j, "0-based parameter index (default 1 for he, 0 otherwise)");
  add_format(scan);

  auto* eigen = app.add_subcommand("eigen", "Spectra of EM and of the layer operator LT");
  eigen->add_option("--n", cfg.n, "Qubits of LT")->required();
  add_format(eigen);

  auto* dump = app.add_subcommand("dump-tensors", "Exact M, ET, T_TTN and EM");
  add_format(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      cfg.command = "analyze";
      return cmd_analyze(cfg);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
    if (scan->parsed()) {
      cfg.command = "scan";
      return cmd_scan(cfg);
    }
    if (eigen->parsed()) {
      cfg.command = "eigen";
      return cmd_eigen(cfg);
    }
    cfg.command = "dump-tensors";
    return cmd_dump_tensors(cfg);
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::length_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const VartnError& e) {
    std::string what = e.what();
    bool size = what.find("infeasible") != std::string::npos || what.find("limited to") != std::string::npos;
    std::cerr << (size ? "infeasible: " : "error: ") << what << "\n";
    return size ? kExitInfeasible : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
