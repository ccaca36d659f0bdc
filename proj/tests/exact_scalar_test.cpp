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
#include <random>

#include "gtest/gtest.h"
#include "zxbp/phase.hpp"

using namespace zxbp;

TEST(ExactScalar, SqrtTwoSquaredIsTwo) {
  ExactScalar r = ExactScalar::sqrt2_pow(1);
  EXPECT_EQ(r * r, ExactScalar(2));
  EXPECT_EQ(ExactScalar::sqrt2_pow(-1) * ExactScalar::sqrt2_pow(1), ExactScalar::one());
  EXPECT_EQ(ExactScalar::sqrt2_pow(-3) * ExactScalar::sqrt2_pow(3), ExactScalar::one());
  EXPECT_EQ(ExactScalar::sqrt2_pow(4), ExactScalar(4));
}

TEST(ExactScalar, EighthRootsOfUnity) {
  ExactScalar w = ExactScalar::omega(1);
  ExactScalar acc = ExactScalar::one();
  for (int k = 0; k < 8; ++k) {
    EXPECT_EQ(acc, ExactScalar::omega(k));
    acc *= w;
  }
  EXPECT_EQ(acc, ExactScalar::one());
  EXPECT_EQ(ExactScalar::phase(Rational(1, 2)), ExactScalar::i());
  EXPECT_EQ(ExactScalar::phase(Rational(-1, 4)), ExactScalar::omega(7));
  EXPECT_THROW(ExactScalar::phase(Rational(1, 3)), std::domain_error);
}

TEST(ExactScalar, SumsLeaveMonomials) {
  ExactScalar s = ExactScalar(1) + ExactScalar::sqrt2_pow(1);
  EXPECT_FALSE(s.as_monomial().has_value());
  EXPECT_NEAR(s.to_complex().real(), 1.0 + std::sqrt(2.0), 1e-15);
  ExactScalar inv = s.inverse();
  EXPECT_EQ(s * inv, ExactScalar::one());
  auto m = ExactScalar::sqrt2_pow(-3).as_monomial();
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->second, 1);
  EXPECT_EQ(m->first, GaussRational(Rational(1, 4)));
}

TEST(ExactScalar, FloatConversionAgrees) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> k(-6, 6);
  std::uniform_int_distribution<int> w(0, 7);
  for (int t = 0; t < 200; ++t) {
    ExactScalar a = ExactScalar::sqrt2_pow(k(rng)) * ExactScalar::omega(w(rng));
    ExactScalar b = ExactScalar::sqrt2_pow(k(rng)) * ExactScalar::omega(w(rng));
    std::complex<double> za = a.to_complex(), zb = b.to_complex();
    EXPECT_LT(std::abs((a * b).to_complex() - za * zb), 1e-15 * (1 + std::abs(za * zb)));
    EXPECT_LT(std::abs((a + b).to_complex() - (za + zb)), 1e-15 * (1 + std::abs(za + zb)));
    EXPECT_EQ(a * b == b * a, true);
    EXPECT_EQ((a - a).is_zero(), true);
  }
}

TEST(ExactScalar, FloatFallbackOnlyWhenRequested) {
  ExactScalar a = ExactScalar::from_double(0.375, -2.5);
  EXPECT_TRUE(a.is_exact());
  EXPECT_EQ(a.rational_part().re, Rational(3, 8));
  ExactScalar f = ExactScalar::floating({0.1, 0.0});
  EXPECT_FALSE(f.is_exact());
  EXPECT_FALSE((f * a).is_exact());
  EXPECT_TRUE((a * a).is_exact());
}

TEST(ExactScalar, Conjugation) {
  ExactScalar z = ExactScalar::omega(3) * ExactScalar(GaussRational(Rational(2, 3), Rational(-1, 5)));
  EXPECT_EQ(z.conj().conj(), z);
  auto n = z.abs2().as_rational();
  ASSERT_TRUE(n.has_value());
  EXPECT_EQ(*n, Rational(4, 9) + Rational(1, 25));
}

TEST(Phase, NormalizedModTwo) {
  EXPECT_EQ(Phase(5, 2).constant(), Rational(1, 2));
  EXPECT_EQ(Phase(-1, 2).constant(), Rational(3, 2));
  EXPECT_EQ((Phase(3, 2) + Phase(1, 2)).constant(), Rational(0));
  Phase p = Phase::param(4, 1, Rational(1, 2));
  Phase q = -p;
  EXPECT_EQ(q.constant(), Rational(3, 2));
  EXPECT_EQ(q.param()->sign, -1);
  EXPECT_THROW(p + p, std::logic_error);
  EXPECT_TRUE((p + q).is_zero());
  EXPECT_NEAR(p.value({{4, 0.25}}), M_PI / 2 + 0.25, 1e-15);
  EXPECT_THROW(p.value({}), std::invalid_argument);
}
