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

#include "zxbp/diagram_json.hpp"

namespace zxbp {

using nlohmann::json;

json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()), 10);
  if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
  throw DiagramError("expected an integer");
}

json rational_to_json(const Rational& q) {
  return {{"num", integer_to_json(q.get_num())}, {"den", integer_to_json(q.get_den())}};
}

Rational rational_from_json(const json& j) {
  Rational q(integer_from_json(j.at("num")), integer_from_json(j.at("den")));
  if (q.get_den() == 0) throw DiagramError("zero denominator");
  q.canonicalize();
  return q;
}

json scalar_to_json(const ExactScalar& s) {
  if (!s.is_exact()) {
    auto z = s.to_complex();
    return {{"float", {z.real(), z.imag()}}};
  }
  auto m = s.as_monomial();
  if (!m) throw DiagramError("scalar is not a monomial z*2^(k/2)");
  const auto& [z, k] = *m;
  return {{"re_num", integer_to_json(z.re.get_num())}, {"re_den", integer_to_json(z.re.get_den())},
          {"im_num", integer_to_json(z.im.get_num())}, {"im_den", integer_to_json(z.im.get_den())},
          {"half_exp", k}};
}

ExactScalar scalar_from_json(const json& j) {
  if (j.contains("float")) {
    return ExactScalar::floating({j["float"].at(0).get<double>(), j["float"].at(1).get<double>()});
  }
  Rational re(integer_from_json(j.at("re_num")), integer_from_json(j.at("re_den")));
  Rational im(integer_from_json(j.at("im_num")), integer_from_json(j.at("im_den")));
  if (re.get_den() == 0 || im.get_den() == 0) throw DiagramError("zero denominator");
  re.canonicalize();
  im.canonicalize();
  int k = j.at("half_exp").get<int>();
  return ExactScalar(GaussRational(re, im)) * ExactScalar::sqrt2_pow(k);
}

json to_json(const ZxDiagram& d) {
  json spiders = json::array();
  for (const auto& [id, vx] : d.vertices()) {
    json s = {{"id", id},
              {"kind", to_string(vx.kind)},
              {"phase_const_num", integer_to_json(vx.phase.constant().get_num())},
              {"phase_const_den", integer_to_json(vx.phase.constant().get_den())},
              {"param", nullptr},
              {"sign", 1}};
    if (vx.phase.param()) {
      s["param"] = vx.phase.param()->id;
      s["sign"] = vx.phase.param()->sign;
    }
    if (vx.phase.has_float()) s["phase_float"] = vx.phase.float_offset();
    spiders.push_back(s);
  }
  json edges = json::array();
  for (const auto& [eid, e] : d.edges()) edges.push_back({e.u, e.v, to_string(e.kind)});
  return {{"spiders", spiders},
          {"edges", edges},
          {"inputs", d.inputs()},
          {"outputs", d.outputs()},
          {"scalar", scalar_to_json(d.scalar())}};
}

ZxDiagram diagram_from_json(const json& j) {
  try {
    std::vector<SpiderSpec> spiders;
    for (const auto& s : j.at("spiders")) {
      SpiderSpec sp;
      sp.id = s.at("id").get<int>();
      std::string kind = s.at("kind").get<std::string>();
      if (kind == "Z") {
        sp.kind = VertexKind::Z;
      } else if (kind == "X") {
        sp.kind = VertexKind::X;
      } else if (kind == "B") {
        sp.kind = VertexKind::Boundary;
      } else {
        throw DiagramError("unknown spider kind " + kind);
      }
      Rational c(integer_from_json(s.value("phase_const_num", json(0))),
                 integer_from_json(s.value("phase_const_den", json(1))));
      if (c.get_den() == 0) throw DiagramError("zero denominator");
      c.canonicalize();
      if (s.contains("param") && !s["param"].is_null()) {
        sp.phase = Phase::param(s["param"].get<int>(), s.value("sign", 1), c);
      } else {
        sp.phase = Phase(c);
      }
      if (s.contains("phase_float")) {
        sp.phase = sp.phase + Phase::from_radians(s["phase_float"].get<double>());
      }
      spiders.push_back(sp);
    }
    std::vector<EdgeSpec> edges;
    for (const auto& e : j.at("edges")) {
      std::string k = e.at(2).get<std::string>();
      if (k != "plain" && k != "had") throw DiagramError("unknown edge kind " + k);
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                       k == "plain" ? EdgeKind::Plain : EdgeKind::Hadamard});
    }
    ExactScalar scalar = j.contains("scalar") ? scalar_from_json(j["scalar"]) : ExactScalar::one();
    return build(spiders, edges, j.at("inputs").get<std::vector<int>>(),
                 j.at("outputs").get<std::vector<int>>(), scalar);
  } catch (const json::exception& e) {
    throw DiagramError(std::string("malformed diagram json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DiagramError(std::string("malformed integer in diagram json: ") + e.what());
  }
}

}  // namespace zxbp
