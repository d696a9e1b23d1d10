// Copyright 2026 The padic-hh Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padic_hh/error.hpp"
#include "padic_hh/padic.hpp"

using namespace padic_hh;

TEST_CASE("prime construction") {
  CHECK(Prime(2).value() == 2);
  CHECK(Prime(97).value() == 97);
  CHECK_THROWS_AS(Prime(1), Error);
  CHECK_THROWS_AS(Prime(91), Error);
}

TEST_CASE("padic_norm examples") {
  CHECK(padic_norm(Rational(24), Prime(2)) == PPowerSum(Rational(1, 8)));
  CHECK(padic_norm(Rational(0), Prime(5)).is_zero());
  // 5/6 = 3^{-1} * (5/2)
  CHECK(padic_norm(Rational(5, 6), Prime(3)) == PPowerSum(3));
  CHECK(valuation(Rational(-50, 7), Prime(5)) == 2);
}

TEST_CASE("haar_measure examples") {
  CHECK(haar_measure(3, Shape::Ball, Prime(2)) == PPowerSum(8));
  CHECK(haar_measure(0, Shape::Sphere, Prime(2)) == PPowerSum(Rational(1, 2)));
  for (long p : {2, 3, 5, 7}) CHECK(haar_measure(0, Shape::Ball, Prime(p)) == PPowerSum(1));
}

TEST_CASE("ultrametric_check examples") {
  const auto differ = ultrametric_check(Rational(2), Rational(4), Prime(2));
  CHECK(differ.inequality_holds);
  CHECK(differ.norms_differ);
  CHECK(differ.attains_max);
  CHECK(differ.sum_norm == PPowerSum(Rational(1, 2)));

  const auto cancel = ultrametric_check(Rational(1), Rational(1), Prime(2));
  CHECK(cancel.inequality_holds);
  CHECK_FALSE(cancel.attains_max);
  CHECK(cancel.sum_norm == PPowerSum(Rational(1, 2)));

  const auto zero = ultrametric_check(Rational(1), Rational(-1), Prime(3));
  CHECK(zero.inequality_holds);
  CHECK(zero.sum_norm.is_zero());
}

TEST_CASE("property: multiplicativity and ultrametric inequality") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const Prime p(std::vector<long>{2, 3, 5, 7}[rng() % 4]);
    Rational x(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 360));
    Rational y(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 360));
    x.canonicalize(), y.canonicalize();
    CHECK(padic_norm(x * y, p) == padic_norm(x, p) * padic_norm(y, p));
    const auto u = ultrametric_check(x, y, p);
    CHECK(u.inequality_holds);
    if (u.norms_differ) CHECK(u.attains_max);
  }
}

TEST_CASE("property: ball is the union of the spheres below it") {
  for (long p : {2, 3, 5}) {
    const Prime pr(p);
    for (long k = -5; k <= 5; ++k) {
      for (long n : {0L, 3L, 10L}) {
        PPowerSum spheres;
        for (long j = k - n; j <= k; ++j) spheres += haar_measure(j, Shape::Sphere, pr);
        // remainder is the ball just below the summed range
        CHECK(haar_measure(k, Shape::Ball, pr) - spheres == haar_measure(k - n - 1, Shape::Ball, pr));
      }
    }
  }
}
