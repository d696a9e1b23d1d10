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

#include <cmath>
#include <random>

#include "padic_hh/error.hpp"
#include "padic_hh/radial.hpp"

using namespace padic_hh;

namespace {

PPowerSum pw(long base, const char* exp, const char* coef = "1") {
  return PPowerSum::power(Integer(base), parse_rational(exp), parse_rational(coef));
}

bool certified_equal(const PPowerSum& a, const PPowerSum& b) {
  return compare_certified(a, b).outcome == Ordering::Equal;
}

bool encloses(const Enclosure& e, double v, double rel = 1e-9) {
  return to_double(e.lo) <= v * (1 + rel) && v * (1 - rel) <= to_double(e.hi);
}

// Brute-force oracle: sum of c_k^r |S^k| over a long index range in doubles.
double truncated_norm_pow(const RadialFunction& f, double r, long reach) {
  const double p = f.prime().value();
  double total = 0;
  for (long k = f.kmin() - reach; k <= f.kmax() + reach; ++k) {
    const double c = to_double(evaluate_at(f, k));
    if (c > 0) total += std::exp(r * std::log(c) + static_cast<double>(k) * std::log(p)) * (1 - 1 / p);
  }
  return total;
}

RadialFunction random_function(std::mt19937_64& rng, long p) {
  const Prime prime(p);
  const long kmin = static_cast<long>(rng() % 9) - 4;
  const long len = 1 + static_cast<long>(rng() % 4);
  std::vector<PPowerSum> c;
  for (long i = 0; i < len; ++i) {
    const long num = static_cast<long>(rng() % 9) - 4;
    c.push_back(rng() % 5 == 0 ? PPowerSum() : prime.power(Rational(num, 3), Rational(1 + static_cast<long>(rng() % 3))));
  }
  const char* inner_exps[] = {"-1/2", "0", "1/4", "1/3"};
  const char* outer_exps[] = {"-3/2", "-2", "-5/4"};
  TailSpec inner = rng() % 3 == 0 ? TailSpec::zero()
                                  : TailSpec::geometric(c.front(), prime.power(parse_rational(inner_exps[rng() % 4])));
  TailSpec outer = rng() % 3 == 0 ? TailSpec::zero()
                                  : TailSpec::geometric(c.back(), prime.power(parse_rational(outer_exps[rng() % 3])));
  return RadialFunction(prime, kmin, std::move(c), std::move(inner), std::move(outer));
}

}  // namespace

TEST_CASE("evaluate_at resolves window and tails") {
  const Prime two(2);
  const auto ball = RadialFunction::ball(two, 0);
  CHECK(evaluate_at(ball, -2) == PPowerSum(1));
  CHECK(evaluate_at(ball, 1) == PPowerSum());
  const auto f = RadialFunction::power_on_ball(two, Rational(-3, 8), 0);
  CHECK(evaluate_at(f, -2) == pw(2, "3/4"));
  CHECK(evaluate_at(f, 1) == PPowerSum());
  CHECK(f.inner().kind(f.coeffs().front()) == TailKind::Geometric);
}

TEST_CASE("integrate closed forms") {
  CHECK(integrate(RadialFunction::ball(Prime(2), 0)) == PPowerSum(1));
  CHECK(integrate(RadialFunction::ball(Prime(5), 0)) == PPowerSum(1));
  CHECK(integrate(RadialFunction::sphere(Prime(3), 1)) == PPowerSum(2));
  const auto f = RadialFunction::power_on_ball(Prime(2), Rational(-3, 8), 0);
  const PPowerSum exact = integrate(f);
  CHECK(certified_equal(exact, PPowerSum(Rational(1, 2)) * inverse_one_minus(pw(2, "-5/8"))));
  // 200-term truncation oracle with the geometric remainder bound
  double partial = 0;
  for (long k = 0; k > -200; --k) partial += std::pow(2.0, -3.0 * k / 8) * std::pow(2.0, k) / 2;
  CHECK(to_double(exact) == doctest::Approx(partial).epsilon(1e-12));
  CHECK(to_double(exact) >= partial);
}

TEST_CASE("integrate reports the divergent side") {
  const Prime two(2);
  const RadialFunction f(two, 0, {PPowerSum(1)}, TailSpec::zero(), TailSpec::geometric(PPowerSum(1), PPowerSum(1)));
  try {
    integrate(f);
    FAIL("expected DivergentIntegral");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivergentIntegral);
    CHECK(std::string(e.what()).find("outer") != std::string::npos);
  }
  const RadialFunction g(two, 0, {PPowerSum(1)}, TailSpec::geometric(PPowerSum(1), PPowerSum(2)));
  try {
    integrate(g);
    FAIL("expected DivergentIntegral");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivergentIntegral);
    CHECK(std::string(e.what()).find("inner") != std::string::npos);
  }
}

TEST_CASE("lr_norm_pow closed forms") {
  for (long p : {2L, 3L, 7L}) {
    for (const char* r : {"1", "3/2", "2", "7/3"}) {
      CHECK(lr_norm_pow(RadialFunction::ball(Prime(p), 0), parse_rational(r)).exact());
      CHECK(lr_norm_pow(RadialFunction::ball(Prime(p), 0), parse_rational(r)).lo == PPowerSum(1));
    }
  }
  const Enclosure s = lr_norm_pow(RadialFunction::sphere(Prime(2), 2, PPowerSum(2)), Rational(2));
  CHECK(s.exact());
  CHECK(s.lo == PPowerSum(8));

  const auto f = RadialFunction::power_on_ball(Prime(2), Rational(-3, 8), 0);
  const Enclosure n = lr_norm_pow(f, Rational(2));
  REQUIRE(n.exact());
  CHECK(certified_equal(n.lo, PPowerSum(Rational(1, 2)) * inverse_one_minus(pw(2, "-1/4"))));
  CHECK(to_double(n.lo) == doctest::Approx(3.1426).epsilon(1e-4));
  CHECK(to_double(n.lo) == doctest::Approx(truncated_norm_pow(f, 2.0, 600)).epsilon(1e-12));
}

TEST_CASE("lr_norm_pow divergence") {
  // |x|^{-1/2} on B^0 is not square integrable
  const auto f = RadialFunction::power_on_ball(Prime(3), Rational(-1, 2), 0);
  CHECK_THROWS_AS(lr_norm_pow(f, Rational(2)), Error);
  try {
    lr_norm_pow(f, Rational(2));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivergentNorm);
  }
  CHECK_NOTHROW(lr_norm_pow(f, Rational(3, 2)));
}

TEST_CASE("affine and mixture tails give certified enclosures") {
  const Prime two(2);
  const RadialFunction f(two, 0, {PPowerSum(1)},
                         TailSpec::affine_geometric(PPowerSum(1), PPowerSum(Rational(1, 3)), pw(2, "-1/4")));
  CHECK(f.inner().kind(f.coeffs().front()) == TailKind::AffineGeometric);
  for (const char* r : {"3/2", "5/3"}) {
    const Enclosure e = lr_norm_pow(f, parse_rational(r));
    CHECK(!e.exact());
    CHECK(encloses(e, truncated_norm_pow(f, to_double(PPowerSum(parse_rational(r))), 600)));
    CHECK(to_double(e.hi) - to_double(e.lo) < 1e-15);
  }
  // integer r stays exact
  CHECK(lr_norm_pow(f, Rational(2)).exact());
  CHECK(to_double(lr_norm_pow(f, Rational(2)).lo) == doctest::Approx(truncated_norm_pow(f, 2, 600)).epsilon(1e-12));

  GeoSequence mix = GeoSequence::geometric(PPowerSum(Rational(1, 2)), pw(2, "-1/3")) +
                    GeoSequence::geometric(PPowerSum(Rational(1, 2)), pw(2, "1/5"));
  const RadialFunction g(two, 0, {PPowerSum(1)}, TailSpec::sequence(mix));
  CHECK(g.inner().kind(g.coeffs().front()) == TailKind::Mixture);
  const Enclosure e = lr_norm_pow(g, Rational(3, 2));
  CHECK(encloses(e, truncated_norm_pow(g, 1.5, 600)));
}

TEST_CASE("envelope tails") {
  const Prime three(3);
  const RadialFunction f(three, 0, {PPowerSum(1)},
                         TailSpec::envelope(GeoSequence::geometric(PPowerSum(Rational(1, 2)), pw(3, "-1")),
                                            GeoSequence::geometric(PPowerSum(1), pw(3, "-1"))));
  CHECK(!f.is_exact());
  CHECK_THROWS_AS(evaluate_at(f, -1), Error);
  const Enclosure v = enclose_at(f, -2);
  CHECK(v.lo == PPowerSum(Rational(1, 18)));
  CHECK(v.hi == PPowerSum(Rational(1, 9)));
  const Enclosure i = integrate_enclosure(f);
  CHECK(compare_certified(i.lo, i.hi).outcome == Ordering::Less);
  // window mass 2/3, inner tail mass (2/3) sum c 3^{-2i}
  CHECK(certified_equal(i.hi, PPowerSum(Rational(2, 3)) + PPowerSum(Rational(2, 3)) * PPowerSum(Rational(1, 8))));
}

TEST_CASE("tails agree with the closed form at 50 offsets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_function(rng, trial % 2 ? 3 : 2);
    for (long i = 1; i <= 50; ++i) {
      const PPowerSum edge_lo = f.coeffs().front();
      const PPowerSum edge_hi = f.coeffs().back();
      if (!f.inner().is_zero()) {
        const PPowerSum x = f.inner().values().terms().begin()->first;
        CHECK(evaluate_at(f, f.kmin() - i) == edge_lo * pow_int(x, i));
      } else {
        CHECK(evaluate_at(f, f.kmin() - i).is_zero());
      }
      if (!f.outer().is_zero()) {
        const PPowerSum x = f.outer().values().terms().begin()->first;
        CHECK(evaluate_at(f, f.kmax() + i) == edge_hi * pow_int(x, i));
      } else {
        CHECK(evaluate_at(f, f.kmax() + i).is_zero());
      }
    }
  }
}

TEST_CASE("dilation") {
  const Prime two(2);
  const auto ball = RadialFunction::ball(two, 0);
  CHECK(dilate(ball, 0) == ball);
  CHECK(dilate(ball, 1) == RadialFunction::ball(two, -1));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const long p = trial % 3 == 0 ? 5 : (trial % 2 ? 3 : 2);
    const auto f = random_function(rng, p);
    const long s = static_cast<long>(rng() % 7) - 3;
    const long t = static_cast<long>(rng() % 7) - 3;
    CHECK(dilate(dilate(f, s), t) == dilate(f, s + t));
    for (long k = -6; k <= 6; ++k) CHECK(evaluate_at(dilate(f, t), k) == evaluate_at(f, k + t));
    const Rational r = trial % 2 ? Rational(3, 2) : Rational(2);
    const Enclosure a = lr_norm_pow(dilate(f, t), r);
    const Enclosure b = lr_norm_pow(f, r);
    REQUIRE(a.exact());
    CHECK(certified_equal(a.lo, Prime(p).power(-t) * b.lo));
  }
}

TEST_CASE("combine and multiply") {
  const Prime two(2);
  const auto ball = RadialFunction::ball(two, 0);
  const auto s1 = RadialFunction::sphere(two, 1);
  CHECK(combine(ball, RadialFunction::zero(two), PPowerSum(1), PPowerSum(1)) == ball.widened(0, 0));
  const auto step = combine(ball, s1, PPowerSum(1), PPowerSum(1));
  CHECK(step.kmax() == 1);
  for (long k = -5; k <= 3; ++k) CHECK(evaluate_at(step, k) == PPowerSum(k <= 1 ? 1 : 0));
  const auto twice = combine(ball, s1, PPowerSum(2), PPowerSum());
  for (long k = -5; k <= 3; ++k) CHECK(evaluate_at(twice, k) == PPowerSum(k <= 0 ? 2 : 0));
  CHECK_THROWS_AS(combine(ball, s1, PPowerSum(-1), PPowerSum(1)), Error);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_function(rng, 3);
    const auto g = random_function(rng, 3);
    const PPowerSum a = Prime(3).power(Rational(static_cast<long>(rng() % 5) - 2, 2));
    const PPowerSum b(Rational(1 + static_cast<long>(rng() % 4), 3));
    const auto h = combine(f, g, a, b);
    CHECK(certified_equal(integrate(h), a * integrate(f) + b * integrate(g)));
    const auto fg = multiply(f, g);
    for (long k = -8; k <= 8; ++k) {
      CHECK(evaluate_at(h, k) == a * evaluate_at(f, k) + b * evaluate_at(g, k));
      CHECK(evaluate_at(fg, k) == evaluate_at(f, k) * evaluate_at(g, k));
    }
  }
}

TEST_CASE("constructor validation and support") {
  const Prime two(2);
  CHECK_THROWS_AS(RadialFunction(two, 0, {}), Error);
  CHECK_THROWS_AS(RadialFunction(two, 0, {PPowerSum(-1)}), Error);
  CHECK_THROWS_AS(RadialFunction(two, 0, {pw(2, "1/2") - PPowerSum(2)}), Error);
  CHECK(RadialFunction::ball(two, 3).support_top() == 3);
  CHECK(RadialFunction(two, 0, {PPowerSum(1), PPowerSum()}).support_top() == 0);
  CHECK(!RadialFunction::zero(two).support_top());
  CHECK(RadialFunction::zero(two).is_zero());
  CHECK(RadialFunction::ball(two, 3).compactly_supported() == false);
  CHECK(RadialFunction::sphere(two, 3).compactly_supported());
}
