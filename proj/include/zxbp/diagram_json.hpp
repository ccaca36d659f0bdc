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

#include <json.hpp>

#include "zxbp/diagram.hpp"

namespace zxbp {

nlohmann::json rational_to_json(const Rational& q);  // {"num", "den"}
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json integer_to_json(const mpz_class& z);
mpz_class integer_from_json(const nlohmann::json& j);

nlohmann::json scalar_to_json(const ExactScalar& s);
ExactScalar scalar_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ZxDiagram& d);
ZxDiagram diagram_from_json(const nlohmann::json& j);

}  // namespace zxbp
