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

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <ostream>
#include <string>

namespace zxbp {

using Rational = mpq_class;

Rational rational_from_double(double x);
std::string to_string(const Rational& q);

struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(int r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRational conj() const { return {re, -im}; }
  GaussRational inverse() const;
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  GaussRational operator-() const { return {-re, -im}; }
  bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRational& o) const { return !(*this == o); }
};

// An element a + b*sqrt(2) of Q(i)[sqrt 2], or a floating-point complex
// number when explicitly requested.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(int v) : a_(v) {}
  ExactScalar(Rational v) : a_(std::move(v)) {}
  ExactScalar(GaussRational a, GaussRational b = {}) : a_(std::move(a)), b_(std::move(b)) {}

  static ExactScalar zero() { return {}; }
  static ExactScalar one() { return ExactScalar(1); }
  static ExactScalar i() { return ExactScalar(GaussRational(0, 1)); }
  // 2^{k/2}
  static ExactScalar sqrt2_pow(int k);
  // e^{i k pi / 4}
  static ExactScalar omega(int k);
  // e^{i pi q}; q must be a multiple of 1/4.
  static ExactScalar phase(const Rational& q);
  static bool phase_is_exact(const Rational& q);
  static ExactScalar from_double(double re, double im = 0.0);
  static ExactScalar floating(std::complex<double> z);

  bool is_exact() const { return !float_; }
  bool is_zero() const;
  bool is_real() const;
  std::complex<double> to_complex() const;
  double real_value() const { return to_complex().real(); }

  const GaussRational& rational_part() const { return a_; }
  const GaussRational& sqrt2_part() const { return b_; }

  ExactScalar conj() const;
  ExactScalar inverse() const;
  // |z|^2 as an exact value.
  ExactScalar abs2() const { return *this * conj(); }

  // z * 2^{k/2} with k in {0, 1}, when the value is of that form.
  std::optional<std::pair<GaussRational, int>> as_monomial() const;
  // Exact rational value when the scalar is a real rational.
  std::optional<Rational> as_rational() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  ExactScalar operator-() const;
  bool operator==(const ExactScalar& o) const;
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  GaussRational a_;
  GaussRational b_;
  bool float_ = false;
  std::complex<double> f_{};
};

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.str(); }

}  // namespace zxbp
