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

#include "padic_hh/geo_sequence.hpp"
#include "padic_hh/interval.hpp"

using namespace padic_hh;

namespace {

PPowerSum pw(long base, const char* exp, const char* coef = "1") {
  return PPowerSum::power(Integer(base), parse_rational(exp), parse_rational(coef));
}

GeoSequence random_sequence(std::mt19937_64& rng, bool decaying) {
  GeoSequence s;
  const int n = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < n; ++t) {
    GeoSequence::Poly poly;
    const int deg = static_cast<int>(rng() % 3);
    for (int d = 0; d <= deg; ++d) {
      poly.push_back(PPowerSum(Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3))));
    }
    // ratios 2^(-e) with e in {1/4, ..., 2} when decaying
    Rational e(1 + static_cast<long>(rng() % 8), 4);
    if (!decaying && rng() % 2 == 0) e = -e;
    s += GeoSequence::term(poly, PPowerSum::power(Integer(2), -e));
  }
  return s;
}

}  // namespace

TEST_CASE("geometric evaluation and shifts") {
  const GeoSequence g = GeoSequence::geometric(PPowerSum(3), pw(2, "-1/2"));
  CHECK(g.at(0) == PPowerSum(3));
  CHECK(g.at(4) == PPowerSum(Rational(3, 4)));
  CHECK(g.at(-2) == PPowerSum(6));
  CHECK(g.shifted(3).at(1) == g.at(4));
}

TEST_CASE("closed-form tails match the geometric series") {
  // sum_{i>=1} 2^{-i/4} = x / (1 - x)
  const PPowerSum x = pw(2, "-1/4");
  const GeoSequence g = GeoSequence::geometric(PPowerSum(1), x);
  CHECK(g.sum_from(1, ErrorKind::DivergentIntegral) == x * inverse_one_minus(x));
  // sum_{i>=1} i x^i = x / (1-x)^2
  const GeoSequence lin = GeoSequence::term({PPowerSum(), PPowerSum(1)}, x);
  const PPowerSum inv = inverse_one_minus(x);
  CHECK(lin.sum_from(1, ErrorKind::DivergentIntegral) == x * inv * inv);
  CHECK_THROWS_AS(GeoSequence::geometric(PPowerSum(1), PPowerSum(1)).tail_sum(ErrorKind::DivergentNorm), Error);
}

TEST_CASE("property: tail sums agree with truncated brute force") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 60; ++it) {
    const GeoSequence s = random_sequence(rng, true);
    const long m = static_cast<long>(rng() % 7) - 3;
    const PPowerSum closed = s.sum_from(m, ErrorKind::DivergentIntegral);
    // truncation oracle: 400 terms; every ratio is <= 2^{-1/4}, degree <= 2
    Interval partial(200);
    for (long i = m; i < m + 400; ++i) partial = partial + enclose(s.at(i), 200);
    const double gap = to_double(closed) - partial.mid();
    CHECK(std::abs(gap) < 1e-9);
  }
}

TEST_CASE("property: prefix sums, shifts and products are exact") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    const GeoSequence s = random_sequence(rng, false);
    const GeoSequence t = random_sequence(rng, false);
    const long start = static_cast<long>(rng() % 5) - 2;
    const GeoSequence prefix = s.prefix_sum(start);
    PPowerSum running;
    for (long m = start; m < start + 8; ++m) {
      CHECK(prefix.at(m) == running);
      running += s.at(m);
    }
    const long off = static_cast<long>(rng() % 9) - 4;
    const GeoSequence prod = s * t;
    for (long i = -3; i <= 3; ++i) {
      CHECK(s.shifted(off).at(i) == s.at(i + off));
      CHECK(prod.at(i) == s.at(i) * t.at(i));
      CHECK(s.times_geometric(pw(3, "1/3")).at(i) == s.at(i) * pow_int(pw(3, "1/3"), i));
    }
  }
}

TEST_CASE("ratio-one indefinite sums raise the degree") {
  // sum_{0 <= i < m} i = m(m-1)/2
  const GeoSequence lin = GeoSequence::term({PPowerSum(), PPowerSum(1)}, PPowerSum(1));
  const GeoSequence prefix = lin.prefix_sum(0);
  CHECK(prefix.degree() == 2);
  for (long m = 0; m < 10; ++m) CHECK(prefix.at(m) == PPowerSum(Rational(m * (m - 1), 2)));
}
