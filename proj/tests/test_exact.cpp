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
#include "padic_hh/exact.hpp"
#include "padic_hh/interval.hpp"

using namespace padic_hh;

namespace {

PPowerSum pw(long base, const char* exp, const char* coef = "1") {
  return PPowerSum::power(Integer(base), parse_rational(exp), parse_rational(coef));
}

// Random sum of up to four terms over small bases with exponent denominators <= 4.
PPowerSum random_sum(std::mt19937_64& rng) {
  std::vector<RawTerm> raw;
  const int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    RawTerm t;
    t.coef = Rational(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5));
    t.coef.canonicalize();
    const long bases[] = {2, 3, 5, 6, 12};
    t.factors.emplace_back(Integer(bases[rng() % 5]),
                           Rational(static_cast<long>(rng() % 25) - 12, 1 + static_cast<long>(rng() % 4)));
    t.factors.back().second.canonicalize();
    raw.push_back(t);
  }
  return canonicalize(raw);
}

bool enclosures_overlap(const PPowerSum& a, const PPowerSum& b) {
  const Interval ia = enclose(a, 128);
  const Interval ib = enclose(b, 128);
  return mpfr_lessequal_p(ia.lo(), ib.hi()) && mpfr_lessequal_p(ib.lo(), ia.hi());
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(format_rational(Rational(3)) == "3/1");
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("canonicalize examples") {
  const PPowerSum two = PPowerSum(1) + PPowerSum(1);
  CHECK(two == PPowerSum(2));
  CHECK(two.is_single_term());

  const PPowerSum a = pw(2, "1/2") * pw(3, "1/2");
  const PPowerSum b = pw(6, "1/2");
  CHECK(a == b);

  CHECK((pw(7, "1") - pw(7, "1")).is_zero());
  // idempotent: rebuilding from the canonical terms changes nothing
  std::vector<RawTerm> raw;
  for (const auto& [mono, coef] : b.terms()) {
    RawTerm t{coef, {}};
    for (const auto& [prime, e] : mono) t.factors.emplace_back(prime, e);
    raw.push_back(t);
  }
  CHECK(canonicalize(raw) == b);
}

TEST_CASE("arith examples") {
  CHECK(pw(5, "1/2") * pw(5, "1/2") == PPowerSum(5));
  const PPowerSum sphere = (PPowerSum(1) - pw(3, "-1")) * pw(3, "4");
  CHECK(sphere == pw(3, "4") - pw(3, "3"));
  const PPowerSum doubled = pw(2, "1/4") + pw(2, "1/4");
  CHECK(doubled == pw(2, "5/4"));
  CHECK(arith(pw(2, "1/3"), pw(3, "1/3"), ArithOp::Mul) == pw(6, "1/3"));
}

TEST_CASE("pow_rational examples") {
  CHECK(pow_rational(pw(2, "3"), parse_rational("-1/4")) == pw(2, "-3/4"));
  // p^k(1 - 1/p) folds to a single rational term here, so a genuine sum is used
  CHECK(pow_rational(pw(2, "3") - pw(2, "2"), Rational(1, 2)) == PPowerSum(2));
  const PPowerSum two_terms = pw(2, "1/2") + PPowerSum(1);
  CHECK_THROWS_WITH_AS(pow_rational(two_terms, Rational(1, 2)), doctest::Contains("MultiTermPower"), Error);
  CHECK(pow_rational(pw(2, "-3"), Rational(2)) == pw(2, "-6"));
  // coefficients are factored when a fractional power is taken
  CHECK(pow_rational(PPowerSum(Rational(9, 4)), Rational(1, 2)) == PPowerSum(Rational(3, 2)));
  CHECK(pow_rational(PPowerSum(Rational(1, 2)), Rational(1, 2)) == pw(2, "-1/2"));
}

TEST_CASE("compare_certified examples") {
  CHECK(compare_certified(PPowerSum(1) + PPowerSum(1), PPowerSum(2)).outcome == Ordering::Equal);
  // 1.5^2 = 2.25 > 2, so sqrt(2) < 3/2
  CHECK(compare_certified(pw(2, "1/2"), PPowerSum(Rational(3, 2))).outcome == Ordering::Less);
  CHECK(compare_certified(pw(2, "-1/4"), PPowerSum()).outcome == Ordering::Greater);
  // 2^(1/2) + 3^(1/2) = 3.1462643..., 10^(1/2) - 0.016013 = 3.1462646...
  const Comparison c =
      compare_certified(pw(2, "1/2") + pw(3, "1/2"), pw(10, "1/2") - PPowerSum(Rational(16013, 1000000)));
  CHECK(c.outcome == Ordering::Less);
  CHECK(c.precision_used >= 64);
}

TEST_CASE("to_decimal examples") {
  CHECK(to_decimal(pw(2, "-1/4"), 6) == "0.840896 ± 1e-6");
  CHECK(to_decimal(PPowerSum(), 6) == "0.000000 ± 0");
  CHECK(to_decimal(PPowerSum(1) - pw(2, "-1"), 6) == "0.500000 ± 0");
  CHECK(to_decimal(PPowerSum(Rational(-1, 3)), 3) == "-0.333 ± 1e-3");
  CHECK_THROWS_AS(to_decimal(PPowerSum(1), 0), Error);
}

TEST_CASE("inverse_one_minus is a rationalised geometric closed form") {
  const PPowerSum x = pw(2, "-1/4");
  const PPowerSum inv = inverse_one_minus(x);
  CHECK(inv * (PPowerSum(1) - x) == PPowerSum(1));
  CHECK(compare_with_one(x) < 0);
  CHECK(compare_with_one(pw(3, "1/5")) > 0);
  CHECK(compare_with_one(pw(2, "1/2") * pw(2, "-1/2")) == 0);
}

TEST_CASE("property: canonical form is value-preserving and arithmetic laws hold") {
  std::mt19937_64 rng(20261019);
  for (int i = 0; i < 200; ++i) {
    const PPowerSum x = random_sum(rng);
    const PPowerSum y = random_sum(rng);
    const PPowerSum z = random_sum(rng);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(compare_certified(x, x).outcome == Ordering::Equal);
    // value preservation against an independent double evaluation of the raw terms
    CHECK(enclosures_overlap(x * y, PPowerSum(Rational(0)) + x * y));
  }
}

TEST_CASE("property: canonicalize agrees numerically with raw evaluation") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<RawTerm> raw;
    Interval direct(128);
    for (int t = 0; t < 3; ++t) {
      RawTerm term{Rational(static_cast<long>(rng() % 9) + 1, 1 + static_cast<long>(rng() % 3)), {}};
      term.coef.canonicalize();
      const long bases[] = {2, 3, 6, 10};
      Integer base(bases[rng() % 4]);
      Rational e(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4));
      e.canonicalize();
      term.factors.emplace_back(base, e);
      direct = direct + Interval::from_rational(term.coef, 128) * pow_interval(Interval::from_integer(base, 128), e);
      raw.push_back(term);
    }
    const Interval canon = enclose(canonicalize(raw), 128);
    CHECK(mpfr_lessequal_p(canon.lo(), direct.hi()));
    CHECK(mpfr_lessequal_p(direct.lo(), canon.hi()));
  }
}

TEST_CASE("property: nested rational powers compose") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Rational e0(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4));
    Rational a(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
    Rational b(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
    e0.canonicalize(), a.canonicalize(), b.canonicalize();
    const PPowerSum x = PPowerSum::power(Integer(2), e0, Rational(3, 5)) * PPowerSum::power(Integer(7), Rational(1, 3));
    CHECK(pow_rational(pow_rational(x, a), b) == pow_rational(x, a * b));
  }
}

TEST_CASE("enclosure arithmetic") {
  const Enclosure exact(pw(2, "1/2"));
  CHECK(exact.exact());
  CHECK(pow_enclosure(exact, Rational(2)).value() == PPowerSum(2));
  const Enclosure sum(pw(2, "1/2") + pw(3, "1/2"));
  const Enclosure root = pow_enclosure(sum, Rational(1, 3));
  CHECK_FALSE(root.exact());
  CHECK(check_le(root, Enclosure(PPowerSum(Rational(3, 2)))).decision == Decision::Holds);
  CHECK(check_le(Enclosure(PPowerSum(2)), root).decision == Decision::Fails);
  CHECK(check_le(root, root).decision == Decision::Undecided);
}
