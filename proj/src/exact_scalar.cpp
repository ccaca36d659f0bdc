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

#include "zxbp/exact_scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zxbp {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  Rational q(x);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

GaussRational GaussRational::inverse() const {
  Rational n = re * re + im * im;
  if (n == 0) throw std::domain_error("division by zero");
  return {re / n, -im / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ExactScalar ExactScalar::sqrt2_pow(int k) {
  int h = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k / 2)
  Rational p = 1;
  if (h >= 0) {
    mpz_class z = 1;
    z <<= h;
    p = Rational(z);
  } else {
    mpz_class z = 1;
    z <<= -h;
    p = Rational(1) / Rational(z);
  }
  if (k - 2 * h == 0) return ExactScalar(p);
  return ExactScalar(GaussRational(), GaussRational(p));
}

ExactScalar ExactScalar::omega(int k) {
  k = ((k % 8) + 8) % 8;
  Rational half(1, 2);
  switch (k) {
    case 0:
      return ExactScalar(1);
    case 1:
      return ExactScalar(GaussRational(), GaussRational(half, half));
    case 2:
      return ExactScalar::i();
    case 3:
      return ExactScalar(GaussRational(), GaussRational(-half, half));
    case 4:
      return ExactScalar(-1);
    case 5:
      return ExactScalar(GaussRational(), GaussRational(-half, -half));
    case 6:
      return ExactScalar(GaussRational(0, -1));
    default:
      return ExactScalar(GaussRational(), GaussRational(half, -half));
  }
}

bool ExactScalar::phase_is_exact(const Rational& q) {
  Rational t = q * 4;
  return t.get_den() == 1;
}

ExactScalar ExactScalar::phase(const Rational& q) {
  Rational t = q * 4;
  if (t.get_den() != 1) throw std::domain_error("phase is not a multiple of pi/4");
  mpz_class k = t.get_num() % 8;
  return omega(static_cast<int>(k.get_si()));
}

ExactScalar ExactScalar::from_double(double re, double im) {
  return ExactScalar(GaussRational(rational_from_double(re), rational_from_double(im)));
}

ExactScalar ExactScalar::floating(std::complex<double> z) {
  ExactScalar s;
  s.float_ = true;
  s.f_ = z;
  return s;
}

bool ExactScalar::is_zero() const {
  if (float_) return f_ == std::complex<double>(0.0, 0.0);
  return a_.is_zero() && b_.is_zero();
}

bool ExactScalar::is_real() const {
  if (float_) return f_.imag() == 0.0;
  return a_.im == 0 && b_.im == 0;
}

std::complex<double> ExactScalar::to_complex() const {
  if (float_) return f_;
  return a_.to_complex() + std::sqrt(2.0) * b_.to_complex();
}

ExactScalar ExactScalar::conj() const {
  if (float_) return floating(std::conj(f_));
  return ExactScalar(a_.conj(), b_.conj());
}

ExactScalar ExactScalar::inverse() const {
  if (float_) return floating(1.0 / f_);
  // (a + b r)^{-1} = (a - b r) / (a^2 - 2 b^2) with r = sqrt 2.
  GaussRational den = a_ * a_ - GaussRational(2) * b_ * b_;
  if (den.is_zero()) throw std::domain_error("division by zero");
  GaussRational inv = den.inverse();
  return ExactScalar(a_ * inv, -(b_ * inv));
}

std::optional<std::pair<GaussRational, int>> ExactScalar::as_monomial() const {
  if (float_) return std::nullopt;
  if (b_.is_zero()) return std::make_pair(a_, 0);
  if (a_.is_zero()) return std::make_pair(b_, 1);
  return std::nullopt;
}

std::optional<Rational> ExactScalar::as_rational() const {
  if (float_ || !b_.is_zero() || a_.im != 0) return std::nullopt;
  return a_.re;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  if (float_ || o.float_) {
    *this = floating(to_complex() + o.to_complex());
    return *this;
  }
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  if (float_ || o.float_) {
    *this = floating(to_complex() - o.to_complex());
    return *this;
  }
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (float_ || o.float_) {
    *this = floating(to_complex() * o.to_complex());
    return *this;
  }
  if (b_.is_zero() && o.b_.is_zero()) {
    a_ *= o.a_;
    return *this;
  }
  GaussRational a = a_ * o.a_ + GaussRational(2) * b_ * o.b_;
  GaussRational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

ExactScalar ExactScalar::operator-() const {
  if (float_) return floating(-f_);
  return ExactScalar(-a_, -b_);
}

bool ExactScalar::operator==(const ExactScalar& o) const {
  if (float_ || o.float_) return to_complex() == o.to_complex();
  return a_ == o.a_ && b_ == o.b_;
}

namespace {

std::string gauss_str(const GaussRational& g) {
  std::ostringstream os;
  if (g.im == 0) {
    os << g.re.get_str();
  } else if (g.re == 0) {
    os << g.im.get_str() << "i";
  } else {
    os << "(" << g.re.get_str() << (g.im > 0 ? "+" : "") << g.im.get_str() << "i)";
  }
  return os.str();
}

}  // namespace

std::string ExactScalar::str() const {
  if (float_) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << f_.real() << "," << f_.imag() << ")";
    return os.str();
  }
  if (b_.is_zero()) return gauss_str(a_);
  if (a_.is_zero()) return gauss_str(b_) + "*sqrt2";
  return gauss_str(a_) + "+" + gauss_str(b_) + "*sqrt2";
}

}  // namespace zxbp
