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

#include <map>
#include <optional>
#include <string>

#include "zxbp/exact_scalar.hpp"

namespace zxbp {

// Parameter id -> angle in radians.
using Assignment = std::map<int, double>;

struct ParamRef {
  int id = 0;
  int sign = 1;
  bool operator==(const ParamRef& o) const { return id == o.id && sign == o.sign; }
};

// Angle const*pi + sign*theta_id (+ an optional float offset used only by
// numerical callers).  const is kept in [0, 2).
class Phase {
 public:
  Phase() = default;
  Phase(Rational c) : const_(std::move(c)) { normalize(); }
  Phase(int num, int den) : const_(num, den) {
    const_.canonicalize();
    normalize();
  }
  static Phase param(int id, int sign = 1, Rational c = 0);
  static Phase from_radians(double radians);

  const Rational& constant() const { return const_; }
  const std::optional<ParamRef>& param() const { return param_; }
  bool has_param() const { return param_.has_value(); }
  bool has_float() const { return float_ != 0.0; }
  double float_offset() const { return float_; }

  bool is_zero() const { return !param_ && !has_float() && const_ == 0; }
  bool is_pauli() const;     // 0 or pi, constant
  bool is_proper_clifford() const;  // +-pi/2, constant
  bool is_clifford() const;  // multiple of pi/2, constant
  bool is_exact() const { return !has_float() && ExactScalar::phase_is_exact(const_); }

  double value(const Assignment& a) const;
  Phase without_param() const;
  Phase with_constant(const Rational& c) const;

  // Adding two parametrized phases is only allowed when the parameters cancel.
  Phase operator+(const Phase& o) const;
  Phase operator-() const;
  Phase operator-(const Phase& o) const { return *this + (-o); }
  bool operator==(const Phase& o) const {
    return const_ == o.const_ && param_ == o.param_ && float_ == o.float_;
  }
  bool operator!=(const Phase& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void normalize();

  Rational const_ = 0;
  std::optional<ParamRef> param_;
  double float_ = 0.0;
};

}  // namespace zxbp
