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

#include "zxbp/phase.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zxbp {

Phase Phase::param(int id, int sign, Rational c) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("parameter sign must be +1 or -1");
  Phase p(std::move(c));
  p.param_ = ParamRef{id, sign};
  return p;
}

Phase Phase::from_radians(double radians) {
  Phase p;
  p.float_ = std::remainder(radians, 2.0 * std::numbers::pi);
  return p;
}

void Phase::normalize() {
  const_.canonicalize();
  mpz_class den = const_.get_den();
  mpz_class num = const_.get_num();
  mpz_class m = 2 * den;
  mpz_class r = num % m;
  if (r < 0) r += m;
  const_ = Rational(r, den);
  const_.canonicalize();
}

bool Phase::is_pauli() const {
  return !param_ && !has_float() && (const_ == 0 || const_ == 1);
}

bool Phase::is_proper_clifford() const {
  return !param_ && !has_float() && (const_ == Rational(1, 2) || const_ == Rational(3, 2));
}

bool Phase::is_clifford() const { return is_pauli() || is_proper_clifford(); }

double Phase::value(const Assignment& a) const {
  double v = const_.get_d() * std::numbers::pi + float_;
  if (param_) {
    auto it = a.find(param_->id);
    if (it == a.end()) {
      throw std::invalid_argument("unassigned parameter " + std::to_string(param_->id));
    }
    v += param_->sign * it->second;
  }
  return v;
}

Phase Phase::without_param() const {
  Phase p = *this;
  p.param_.reset();
  return p;
}

Phase Phase::with_constant(const Rational& c) const {
  Phase p = *this;
  p.const_ = c;
  p.normalize();
  return p;
}

Phase Phase::operator+(const Phase& o) const {
  Phase r(const_ + o.const_);
  r.float_ = float_ + o.float_;
  if (param_ && o.param_) {
    if (param_->id != o.param_->id || param_->sign == o.param_->sign) {
      throw std::logic_error("a phase can hold at most one symbolic parameter");
    }
  } else if (param_) {
    r.param_ = param_;
  } else if (o.param_) {
    r.param_ = o.param_;
  }
  return r;
}

Phase Phase::operator-() const {
  Phase r(-const_);
  r.float_ = -float_;
  if (param_) r.param_ = ParamRef{param_->id, -param_->sign};
  return r;
}

std::string Phase::str() const {
  std::ostringstream os;
  bool any = false;
  if (const_ != 0) {
    os << const_.get_str() << "pi";
    any = true;
  }
  if (param_) {
    if (param_->sign < 0) {
      os << "-";
    } else if (any) {
      os << "+";
    }
    os << "t" << param_->id;
    any = true;
  }
  if (has_float()) {
    if (any && float_ >= 0) os << "+";
    os << float_;
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

}  // namespace zxbp
