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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace zxbp {

using nlohmann::json;

std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::RX:
      return "RX";
    case GateKind::RZ:
      return "RZ";
    case GateKind::RY:
      return "RY";
    case GateKind::H:
      return "H";
    case GateKind::CNOT:
      return "CNOT";
  }
  return "?";
}

namespace {

GateKind gate_kind_from(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  if (u == "RX") return GateKind::RX;
  if (u == "RZ") return GateKind::RZ;
  if (u == "RY") return GateKind::RY;
  if (u == "H") return GateKind::H;
  if (u == "CNOT" || u == "CX") return GateKind::CNOT;
  throw CircuitError("unsupported gate " + s);
}

bool is_rotation(GateKind k) { return k == GateKind::RX || k == GateKind::RZ || k == GateKind::RY; }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
  static const std::regex re("[A-Za-z_][A-Za-z0-9_]*");
  return std::regex_match(s, re) && s != "pi";
}

// Constant angle as a multiple of pi.
Rational parse_angle_constant(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  }
  auto p = s.find("pi");
  if (p == std::string::npos) {
    Rational q = parse_rational(s);
    if (q != 0) throw CircuitError("constant angle '" + text + "' must be a multiple of pi");
    return q;
  }
  std::string pre = s.substr(0, p), post = s.substr(p + 2);
  if (!pre.empty() && pre.back() == '*') pre.pop_back();
  Rational q;
  if (pre.empty() || pre == "+") {
    q = 1;
  } else if (pre == "-") {
    q = -1;
  } else {
    q = parse_rational(pre);
  }
  if (!post.empty()) {
    if (post[0] != '/') throw CircuitError("malformed angle '" + text + "'");
    Rational d = parse_rational(post.substr(1));
    if (d == 0) throw CircuitError("malformed angle '" + text + "'");
    q /= d;
  }
  return q;
}

std::string angle_text(const Phase& p, const std::vector<std::string>& names) {
  if (p.param()) return names.at(p.param()->id);
  const Rational& c = p.constant();
  if (c == 0) return "0";
  std::string s;
  if (c.get_num() != 1) s += c.get_num().get_str() + "*";
  s += "pi";
  if (c.get_den() != 1) s += "/" + c.get_den().get_str();
  return s;
}

int parse_qubit(const std::string& s) {
  std::string t = s;
  if (!t.empty() && (t[0] == 'q' || t[0] == 'Q')) t = t.substr(1);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw CircuitError("malformed qubit '" + s + "'");
  }
  return std::stoi(t);
}

struct RawGate {
  GateKind kind;
  std::vector<int> qubits;
  std::string angle;
};

Circuit assemble(int n, const std::vector<RawGate>& raw) {
  if (n < 0) {
    n = 0;
    for (const auto& g : raw) {
      for (int q : g.qubits) n = std::max(n, q + 1);
    }
    n = std::max(n, 1);
  }
  Circuit c(n);
  for (const auto& g : raw) {
    if (g.kind == GateKind::H) {
      c.add_h(g.qubits.at(0));
    } else if (g.kind == GateKind::CNOT) {
      c.add_cnot(g.qubits.at(0), g.qubits.at(1));
    } else if (is_identifier(g.angle)) {
      c.add_param_rotation(g.kind, g.qubits.at(0), g.angle);
    } else {
      c.add_rotation(g.kind, g.qubits.at(0), Phase(parse_angle_constant(g.angle)));
    }
  }
  return c;
}

Eigen::Matrix2cd pauli_matrix(char p) {
  using cd = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (p) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, cd(0, -1), cd(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw CircuitError(std::string("unknown Pauli ") + p);
  }
  return m;
}

ZxDiagram zero_states(int n) {
  ZxDiagram d;
  std::vector<int> outs;
  for (int q = 0; q < n; ++q) {
    int x = d.add_vertex(VertexKind::X);
    int b = d.add_vertex(VertexKind::Boundary);
    d.add_edge(x, b);
    outs.push_back(b);
  }
  d.set_outputs(outs);
  d.set_scalar(ExactScalar::sqrt2_pow(-n));
  return d;
}

bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

void block_ry(Circuit& c, int a, int b, const std::string& prefix) {
  c.add_param_rotation(GateKind::RY, a, prefix + "q" + std::to_string(a));
  c.add_param_rotation(GateKind::RY, b, prefix + "q" + std::to_string(b));
  c.add_cnot(a, b);
}

}  // namespace

Circuit::Circuit(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1) throw CircuitError("a circuit needs at least one qubit");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw CircuitError("qubit index " + std::to_string(q) + " out of range");
}

int Circuit::param_index(const std::string& name) const {
  auto it = std::find(params_.begin(), params_.end(), name);
  if (it == params_.end()) throw CircuitError("unknown parameter " + name);
  return static_cast<int>(it - params_.begin());
}

void Circuit::add_rotation(GateKind kind, int qubit, const Phase& angle) {
  if (!is_rotation(kind)) throw CircuitError(to_string(kind) + " is not a rotation");
  if (angle.has_param()) throw CircuitError("use add_param_rotation for parameterized gates");
  check_qubit(qubit);
  gates_.push_back({kind, {qubit}, angle});
}

int Circuit::add_param_rotation(GateKind kind, int qubit, const std::string& name) {
  if (!is_rotation(kind)) throw CircuitError(to_string(kind) + " is not a rotation");
  check_qubit(qubit);
  if (!is_identifier(name)) throw CircuitError("invalid parameter name '" + name + "'");
  if (std::find(params_.begin(), params_.end(), name) != params_.end()) {
    throw CircuitError("parameter " + name + " used by more than one gate");
  }
  int id = num_params();
  params_.push_back(name);
  gates_.push_back({kind, {qubit}, Phase::param(id)});
  return id;
}

void Circuit::add_h(int qubit) {
  check_qubit(qubit);
  gates_.push_back({GateKind::H, {qubit}, {}});
}

void Circuit::add_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw CircuitError("CNOT control equals target");
  gates_.push_back({GateKind::CNOT, {control, target}, {}});
}

Hamiltonian Hamiltonian::pauli_sum(std::vector<PauliTerm> terms) {
  if (terms.empty()) throw CircuitError("empty Hamiltonian");
  std::size_t n = terms[0].ops.size();
  for (auto& t : terms) {
    if (t.ops.empty() || t.ops.size() != n) throw CircuitError("Pauli strings differ in length");
    for (char& ch : t.ops) {
      ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      if (std::string("IXYZ").find(ch) == std::string::npos) {
        throw CircuitError(std::string("unknown Pauli ") + ch);
      }
    }
  }
  Hamiltonian h;
  h.kind_ = Kind::PauliSum;
  h.terms_ = std::move(terms);
  return h;
}

Hamiltonian Hamiltonian::single_qubit(int target, std::array<Rational, 4> k) {
  if (target < 0) throw CircuitError("negative target qubit");
  Hamiltonian h;
  h.kind_ = Kind::SingleQubit;
  h.target_ = target;
  h.k_ = std::move(k);
  return h;
}

int Hamiltonian::min_qubits() const {
  if (kind_ == Kind::SingleQubit) return target_ + 1;
  return static_cast<int>(terms_.at(0).ops.size());
}

std::vector<PauliTerm> Hamiltonian::terms(int n) const {
  std::vector<PauliTerm> raw;
  if (kind_ == Kind::SingleQubit) {
    if (target_ >= n) throw CircuitError("Hamiltonian target outside the register");
    const char* names = "IXYZ";
    for (int a = 0; a < 4; ++a) {
      std::string ops(n, 'I');
      ops[target_] = names[a];
      raw.push_back({k_[a], ops});
    }
  } else {
    if (static_cast<int>(terms_.at(0).ops.size()) != n) {
      throw CircuitError("Hamiltonian acts on " + std::to_string(terms_[0].ops.size()) +
                         " qubits, circuit has " + std::to_string(n));
    }
    raw = terms_;
  }
  std::vector<PauliTerm> out;
  std::map<std::string, std::size_t> pos;
  for (const auto& t : raw) {
    auto it = pos.find(t.ops);
    if (it == pos.end()) {
      pos[t.ops] = out.size();
      out.push_back(t);
    } else {
      out[it->second].coeff += t.coeff;
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const PauliTerm& t) { return t.coeff == 0; }),
            out.end());
  return out;
}

Eigen::MatrixXcd Hamiltonian::matrix(int n) const {
  Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms(n)) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Ones(1, 1);
    for (char ch : t.ops) {
      Eigen::Matrix2cd s = pauli_matrix(ch);
      Eigen::MatrixXcd k(p.rows() * 2, p.cols() * 2);
      for (Eigen::Index i = 0; i < p.rows(); ++i)
        for (Eigen::Index j = 0; j < p.cols(); ++j) k.block(2 * i, 2 * j, 2, 2) = p(i, j) * s;
      p = k;
    }
    m += t.coeff.get_d() * p;
  }
  return m;
}

Rational Hamiltonian::trace_square(int n) const {
  Rational s = 0;
  for (const auto& t : terms(n)) s += t.coeff * t.coeff;
  return s * Rational(mpz_class(1) << n);
}

std::string Hamiltonian::str() const {
  if (kind_ == Kind::SingleQubit) {
    std::string s = "single q" + std::to_string(target_);
    for (const auto& k : k_) s += " " + k.get_str();
    return s;
  }
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    s += t.coeff.get_str() + "*" + t.ops;
  }
  return s;
}

Rational parse_rational(const std::string& text) {
  static const std::regex frac(R"(\s*([+-]?\d+)\s*/\s*(\d+)\s*)");
  static const std::regex dec(R"(\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, frac)) {
    mpz_class den(m[2].str(), 10);
    if (den == 0) throw CircuitError("zero denominator in '" + text + "'");
    std::string num = m[1].str();
    if (!num.empty() && num[0] == '+') num = num.substr(1);
    Rational q(mpz_class(num, 10), den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(text, m, dec) && (m[2].length() > 0 || m[3].length() > 0)) {
    std::string digits = m[2].str() + m[3].str();
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
    mpz_class mant(digits.empty() ? "0" : digits, 10);
    long exp10 = -static_cast<long>(m[3].length());
    if (m[4].matched) {
      if (m[4].length() > 6) throw CircuitError("exponent out of range in '" + text + "'");
      exp10 += std::stol(m[4].str());
    }
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational q = exp10 >= 0 ? Rational(mant * p) : Rational(mant, p);
    q.canonicalize();
    return m[1].str() == "-" ? Rational(-q) : q;
  }
  throw CircuitError("malformed number '" + text + "'");
}

Hamiltonian parse_hamiltonian(const std::string& input) {
  std::string text = trim(input);
  if (text.empty()) throw CircuitError("empty Hamiltonian");
  std::istringstream words(text);
  std::string first;
  words >> first;
  if (first == "single") {
    std::string q;
    std::array<std::string, 4> ks;
    if (!(words >> q >> ks[0] >> ks[1] >> ks[2] >> ks[3])) {
      throw CircuitError("expected 'single q<t> k0 k1 k2 k3'");
    }
    std::string rest;
    if (words >> rest) throw CircuitError("trailing text in Hamiltonian");
    return Hamiltonian::single_qubit(
        parse_qubit(q), {parse_rational(ks[0]), parse_rational(ks[1]), parse_rational(ks[2]), parse_rational(ks[3])});
  }
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E' && s[i - 1] != '*') {
      pieces.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  pieces.push_back(s.substr(start));
  static const std::regex term(R"(([+-]?[0-9./eE+-]*?)\*?([IXYZ]+))");
  std::vector<PauliTerm> terms;
  for (const auto& p : pieces) {
    std::smatch m;
    if (!std::regex_match(p, m, term)) throw CircuitError("malformed Hamiltonian term '" + p + "'");
    std::string c = m[1].str();
    Rational coeff = 1;
    if (c == "-") {
      coeff = -1;
    } else if (!c.empty() && c != "+") {
      coeff = parse_rational(c);
    }
    terms.push_back({coeff, m[2].str()});
  }
  return Hamiltonian::pauli_sum(terms);
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<RawGate> raw;
  int n = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ws(line);
    std::vector<std::string> tok;
    for (std::string t; ws >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
    try {
      if (tok[0] == "qubits") {
        if (tok.size() != 2) throw CircuitError("expected 'qubits N'");
        n = std::stoi(tok[1]);
        continue;
      }
      GateKind k = gate_kind_from(tok[0]);
      if (k == GateKind::H) {
        if (tok.size() != 2) throw CircuitError("H takes one qubit");
        raw.push_back({k, {parse_qubit(tok[1])}, ""});
      } else if (k == GateKind::CNOT) {
        if (tok.size() != 3) throw CircuitError("CNOT takes two qubits");
        raw.push_back({k, {parse_qubit(tok[1]), parse_qubit(tok[2])}, ""});
      } else {
        if (tok.size() < 3) throw CircuitError(tok[0] + " takes a qubit and an angle");
        std::string angle;
        for (std::size_t i = 2; i < tok.size(); ++i) angle += tok[i];
        raw.push_back({k, {parse_qubit(tok[1])}, angle});
      }
    } catch (const CircuitError& e) {
      throw CircuitError(e.what() + where());
    } catch (const std::exception& e) {
      throw CircuitError(std::string("parse error: ") + e.what() + where());
    }
  }
  return assemble(n, raw);
}

Circuit circuit_from_json(const json& j) {
  try {
    std::vector<RawGate> raw;
    for (const auto& g : j.at("gates")) {
      GateKind k = gate_kind_from(g.at("gate").get<std::string>());
      std::vector<int> qs = g.at("qubits").get<std::vector<int>>();
      std::string angle = is_rotation(k) ? g.at("angle").get<std::string>() : "";
      std::size_t want = k == GateKind::CNOT ? 2 : 1;
      if (qs.size() != want) throw CircuitError("wrong number of qubits for " + to_string(k));
      raw.push_back({k, qs, angle});
    }
    return assemble(j.contains("n_qubits") ? j["n_qubits"].get<int>() : -1, raw);
  } catch (const json::exception& e) {
    throw CircuitError(std::string("malformed circuit json: ") + e.what());
  }
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates()) {
    json e = {{"gate", to_string(g.kind)}, {"qubits", g.qubits}};
    if (is_rotation(g.kind)) e["angle"] = angle_text(g.angle, c.params());
    gates.push_back(e);
  }
  return {{"n_qubits", c.n_qubits()}, {"gates", gates}};
}

std::string circuit_to_text(const Circuit& c) {
  std::string s = "qubits " + std::to_string(c.n_qubits()) + "\n";
  for (const auto& g : c.gates()) {
    s += to_string(g.kind);
    for (int q : g.qubits) s += " q" + std::to_string(q);
    if (is_rotation(g.kind)) s += " " + angle_text(g.angle, c.params());
    s += "\n";
  }
  return s;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CircuitError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string text = ss.str();
  if (trim(text).rfind('{', 0) == 0) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw CircuitError(std::string("malformed circuit json: ") + e.what());
    }
    return circuit_from_json(j);
  }
  return parse_circuit(text);
}

Circuit decompose_ry(const Circuit& c) {
  Circuit out(c.n_qubits());
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::H:
        out.add_h(g.qubits[0]);
        break;
      case GateKind::CNOT:
        out.add_cnot(g.qubits[0], g.qubits[1]);
        break;
      case GateKind::RY:
        out.add_rotation(GateKind::RZ, g.qubits[0], Phase(-1, 2));
        if (g.angle.param()) {
          out.add_param_rotation(GateKind::RX, g.qubits[0], c.params()[g.angle.param()->id]);
        } else {
          out.add_rotation(GateKind::RX, g.qubits[0], g.angle);
        }
        out.add_rotation(GateKind::RZ, g.qubits[0], Phase(1, 2));
        break;
      default:
        if (g.angle.param()) {
          out.add_param_rotation(g.kind, g.qubits[0], c.params()[g.angle.param()->id]);
        } else {
          out.add_rotation(g.kind, g.qubits[0], g.angle);
        }
    }
  }
  return out;
}

Circuit hardware_efficient(int n, int layers) {
  if (n < 2) throw CircuitError("hardware-efficient ansatz needs n >= 2");
  if (layers < 1) throw CircuitError("hardware-efficient ansatz needs at least one layer");
  Circuit c(n);
  int k = 0;
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) {
      c.add_param_rotation(GateKind::RZ, q, "theta" + std::to_string(++k));
      c.add_param_rotation(GateKind::RX, q, "theta" + std::to_string(++k));
      c.add_param_rotation(GateKind::RZ, q, "theta" + std::to_string(++k));
    }
    for (int q = 0; q < n; ++q) c.add_cnot(q, (q + 1) % n);
  }
  return c;
}

Circuit ttn(int n) {
  if (!power_of_two(n)) throw CircuitError("tree ansatz needs n = 2^k with k >= 1");
  Circuit c(n);
  std::vector<int> active(n);
  for (int q = 0; q < n; ++q) active[q] = q;
  for (int level = 1; active.size() > 1; ++level) {
    std::vector<int> next;
    for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
      block_ry(c, active[i], active[i + 1], "t" + std::to_string(level));
      next.push_back(active[i]);
    }
    active = next;
    if (active.size() == 1) c.add_param_rotation(GateKind::RY, 0, "t" + std::to_string(level + 1) + "q0");
  }
  return c;
}

Circuit qcnn(int n) {
  if (!power_of_two(n)) throw CircuitError("QCNN ansatz needs n = 2^k with k >= 1");
  Circuit c(n);
  std::vector<int> active(n);
  for (int q = 0; q < n; ++q) active[q] = q;
  for (int stage = 1; active.size() > 1; ++stage) {
    std::string s = std::to_string(stage);
    for (std::size_t i = 0; i + 1 < active.size(); i += 2) block_ry(c, active[i], active[i + 1], "c" + s + "e");
    for (std::size_t i = 1; i + 1 < active.size(); i += 2) block_ry(c, active[i], active[i + 1], "c" + s + "o");
    std::vector<int> next;
    for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
      block_ry(c, active[i], active[i + 1], "p" + s);
      next.push_back(active[i]);
    }
    active = next;
  }
  c.add_param_rotation(GateKind::RZ, 0, "fq0");
  return c;
}

Circuit mps(int n) {
  if (n < 2) throw CircuitError("MPS ansatz needs n >= 2");
  Circuit c(n);
  int k = 0;
  for (int q = 0; q < n; ++q) {
    c.add_param_rotation(GateKind::RX, q, "theta" + std::to_string(++k));
    c.add_param_rotation(GateKind::RZ, q, "theta" + std::to_string(++k));
    if (q + 1 < n) c.add_cnot(q, q + 1);
  }
  return c;
}

Circuit two_qubit_example() {
  return parse_circuit(
      "RX q0 theta1\nRZ q0 theta2\nRX q1 theta3\nRZ q1 theta4\nCNOT q1 q0\nRX q0 theta5\nRZ q0 theta6\n");
}

Circuit ansatz(const std::string& family, int n, int layers) {
  if (family == "he" || family == "hardware-efficient") return hardware_efficient(n, layers);
  if (family == "ttn") return ttn(n);
  if (family == "qcnn") return qcnn(n);
  if (family == "mps") return mps(n);
  throw CircuitError("unknown ansatz family " + family);
}

ZxDiagram circuit_to_zx(const Circuit& circuit) {
  Circuit c = decompose_ry(circuit);
  int n = c.n_qubits();
  ZxDiagram d;
  std::vector<int> ins, front(n);
  std::vector<EdgeKind> pending(n, EdgeKind::Plain);
  for (int q = 0; q < n; ++q) {
    ins.push_back(d.add_vertex(VertexKind::Boundary));
    front[q] = ins.back();
  }
  auto attach = [&](int q, VertexKind k, Phase p) {
    int v = d.add_vertex(k, std::move(p));
    d.add_edge(front[q], v, pending[q]);
    front[q] = v;
    pending[q] = EdgeKind::Plain;
    return v;
  };
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::RZ:
        attach(g.qubits[0], VertexKind::Z, g.angle);
        break;
      case GateKind::RX:
        attach(g.qubits[0], VertexKind::X, g.angle);
        break;
      case GateKind::H:
        pending[g.qubits[0]] = toggle(pending[g.qubits[0]]);
        break;
      case GateKind::CNOT: {
        int z = attach(g.qubits[0], VertexKind::Z, {});
        int x = attach(g.qubits[1], VertexKind::X, {});
        d.add_edge(z, x);
        d.multiply_scalar(ExactScalar::sqrt2_pow(1));
        break;
      }
      case GateKind::RY:
        throw CircuitError("RY survived decomposition");
    }
  }
  std::vector<int> outs;
  for (int q = 0; q < n; ++q) {
    int b = d.add_vertex(VertexKind::Boundary);
    d.add_edge(front[q], b, pending[q]);
    outs.push_back(b);
  }
  d.set_inputs(ins);
  d.set_outputs(outs);
  return d;
}

ZxDiagram pauli_diagram(const std::string& ops) {
  Circuit c(static_cast<int>(ops.size()));
  int ys = 0;
  for (std::size_t q = 0; q < ops.size(); ++q) {
    int qi = static_cast<int>(q);
    switch (ops[q]) {
      case 'I':
        break;
      case 'X':
        c.add_rotation(GateKind::RX, qi, Phase(1));
        break;
      case 'Z':
        c.add_rotation(GateKind::RZ, qi, Phase(1));
        break;
      case 'Y':
        c.add_rotation(GateKind::RZ, qi, Phase(1));
        c.add_rotation(GateKind::RX, qi, Phase(1));
        ++ys;
        break;
      default:
        throw CircuitError(std::string("unknown Pauli ") + ops[q]);
    }
  }
  ZxDiagram d = circuit_to_zx(c);
  d.multiply_scalar(ExactScalar::omega(2 * (ys % 4)));
  return d;
}

ZxDiagram expectation_diagram(const Circuit& c, const PauliTerm& term) {
  int n = c.n_qubits();
  if (static_cast<int>(term.ops.size()) != n) throw CircuitError("Pauli string length differs from qubit count");
  ZxDiagram u = circuit_to_zx(c);
  ZxDiagram psi = compose(zero_states(n), u);
  ZxDiagram d = compose(compose(psi, pauli_diagram(term.ops)), adjoint(psi));
  d.multiply_scalar(ExactScalar(term.coeff));
  return d;
}

ZxDiagram expectation_diagram(const Circuit& c, const Hamiltonian& h) {
  auto terms = h.terms(c.n_qubits());
  if (terms.size() > 1) {
    throw CircuitError("Hamiltonian has " + std::to_string(terms.size()) +
                       " Pauli terms; use expectation_terms");
  }
  if (terms.empty()) {
    PauliTerm zero{0, std::string(c.n_qubits(), 'I')};
    return expectation_diagram(c, zero);
  }
  return expectation_diagram(c, terms[0]);
}

std::vector<ZxDiagram> expectation_terms(const Circuit& c, const Hamiltonian& h) {
  std::vector<ZxDiagram> out;
  for (const auto& t : h.terms(c.n_qubits())) out.push_back(expectation_diagram(c, t));
  return out;
}

ZxDiagram gradient_diagram(const ZxDiagram& ed, int j) {
  auto plus = ed.spiders_with_param(j, 1);
  auto minus = ed.spiders_with_param(j, -1);
  if (plus.size() != 1 || minus.size() != 1) {
    throw DiagramError("parameter " + std::to_string(j) + " must appear once with each sign (found " +
                       std::to_string(plus.size()) + " and " + std::to_string(minus.size()) + ")");
  }
  ZxDiagram d = ed;
  int u = plus[0], v = minus[0];
  d.add_to_phase(u, Phase(1, 2));
  d.add_to_phase(v, Phase(-1, 2));
  int w = d.add_vertex(VertexKind::X, Phase(1));
  d.add_edge(u, w, d.kind(u) == VertexKind::Z ? EdgeKind::Plain : EdgeKind::Hadamard);
  d.add_edge(v, w, d.kind(v) == VertexKind::Z ? EdgeKind::Plain : EdgeKind::Hadamard);
  return d;
}

}  // namespace zxbp
