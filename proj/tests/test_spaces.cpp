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

#include "padic_hh/corpus.hpp"
#include "padic_hh/error.hpp"
#include "padic_hh/spaces.hpp"

using namespace padic_hh;

namespace {

PPowerSum pw(long base, const char* exp, const char* coef = "1") {
  return PPowerSum::power(Integer(base), parse_rational(exp), parse_rational(coef));
}

bool certified_equal(const PPowerSum& a, const PPowerSum& b) {
  return compare_certified(a, b).outcome == Ordering::Equal;
}

double to_d(const Rational& q) { return q.get_d(); }

// Brute-force Morrey oracle: max over k in [lo, hi] of p^{-k alpha r} int_{B^k} f^r,
// with the cumulative integral started far below the scan.
double morrey_scan(const RadialFunction& f, const SpaceParams& sp, long lo, long hi, long depth = 400) {
  const double p = static_cast<double>(f.prime().value());
  const double r = to_d(sp.r());
  const double ar = to_d(sp.alpha()) * r;
  double mass = 0;
  double best = 0;
  for (long k = lo - depth; k <= hi; ++k) {
    const double c = to_double(enclose_at(f, k).hi);
    if (c > 0) mass += std::exp(r * std::log(c) + static_cast<double>(k) * std::log(p)) * (1 - 1 / p);
    if (k >= lo) best = std::max(best, mass * std::pow(p, -static_cast<double>(k) * ar));
  }
  return best;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Parse;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("space parameters") {
  const SpaceParams sp(Rational(2), Rational(1, 4));
  CHECK(sp.r_conj() == 2);
  CHECK(sp.beta() == Rational(3, 4));
  CHECK(SpaceParams(Rational(3, 2), Rational(1, 8)).conjugate().r() == 3);
  CHECK_THROWS_AS(SpaceParams(Rational(1), Rational(1, 4)), Error);
  CHECK_THROWS_AS(SpaceParams(Rational(2), Rational(0)), Error);
}

TEST_CASE("Morrey norm examples") {
  const Prime two(2);
  const SpaceParams sp(Rational(2), Rational(1, 4));
  const Enclosure ball = morrey_norm_pow(RadialFunction::ball(two, 0), sp);
  REQUIRE(ball.exact());
  CHECK(ball.lo == PPowerSum(1));
  CHECK(morrey_scan(RadialFunction::ball(two, 0), sp, -60, 60) == doctest::Approx(1.0));
  CHECK(morrey_norm_pow(RadialFunction::zero(two), sp).lo.is_zero());

  // |x|^{(alpha-1)/r} on B^0: the ratio grows like 2^{-k/4} as k -> -inf
  const auto power = RadialFunction::power_on_ball(two, (sp.alpha() - 1) / sp.r(), 0);
  CHECK(kind_of([&] { morrey_norm_pow(power, sp); }) == ErrorKind::UnboundedSup);
  CHECK(morrey_scan(power, sp, -60, 0) > morrey_scan(power, sp, -30, 0));
  // ... while its L^r norm is the finite closed form
  CHECK(certified_equal(lr_norm_pow(power, sp.r()).value(), PPowerSum(Rational(1, 2)) * inverse_one_minus(pw(2, "-1/4"))));
}

TEST_CASE("Morrey norm of indicators matches the brute-force scan") {
  for (long p : {2L, 3L, 5L}) {
    for (const auto& [r, a] : {std::pair{"2", "1/4"}, {"3/2", "1/2"}, {"3", "1/4"}, {"2", "1/8"}}) {
      const SpaceParams sp(parse_rational(r), parse_rational(a));
      const Rational ar = sp.alpha() * sp.r();
      for (long m = -5; m <= 5; ++m) {
        const Enclosure got = morrey_norm_pow(RadialFunction::ball(Prime(p), m), sp);
        REQUIRE(got.exact());
        // sup_k p^{-k alpha r} min(p^k, p^m), attained at k = m when alpha r < 1
        CHECK(got.lo == Prime(p).power(m * (1 - ar)));
        double scan = 0;
        for (long k = -60; k <= 60; ++k) {
          scan = std::max(scan, std::pow(double(p), -double(k) * to_d(ar)) * std::pow(double(p), double(std::min(k, m))));
        }
        CHECK(to_double(got.lo) == doctest::Approx(scan).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("Morrey norm with outer tails") {
  const Prime three(3);
  // the constant function 1: ratio p^{k(1 - alpha r)}
  const RadialFunction one(three, 0, {PPowerSum(1)}, TailSpec::geometric(PPowerSum(1), PPowerSum(1)),
                           TailSpec::geometric(PPowerSum(1), PPowerSum(1)));
  CHECK(kind_of([&] { morrey_norm_pow(one, SpaceParams(Rational(2), Rational(1, 4))); }) == ErrorKind::UnboundedSup);
  const Enclosure critical = morrey_norm_pow(one, SpaceParams(Rational(2), Rational(1, 2)));
  REQUIRE(critical.exact());
  CHECK(critical.lo == PPowerSum(1));
  // |x|^{-1/2} everywhere is in M_{2,1/4}? ratio p^{k(1 - 1 - 1/2)} -> unbounded at -inf
  const RadialFunction slow(three, 0, {PPowerSum(1)}, TailSpec::geometric(PPowerSum(1), pw(3, "1/4")),
                            TailSpec::geometric(PPowerSum(1), pw(3, "-1/4")));
  const SpaceParams sp(Rational(2), Rational(1, 4));
  const Enclosure e = morrey_norm_pow(slow, sp);
  CHECK(to_double(e.lo) == doctest::Approx(morrey_scan(slow, sp, -80, 80)).epsilon(1e-9));
}

TEST_CASE("Morrey norm of generated functions matches the scan") {
  CorpusRng rng(mix_seed(7, "morrey"));
  CorpusOptions opts;
  opts.allow_affine = false;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Prime p(trial % 3 == 0 ? 2 : (trial % 3 == 1 ? 3 : 5));
    const SpaceParams sp(trial % 2 ? Rational(3, 2) : Rational(2), Rational(1, 2 + trial % 4));
    const auto f = random_function(rng, p, sp, opts);
    const Enclosure got = morrey_norm_pow(f, sp);
    const double scan = morrey_scan(f, sp, -150, 150);
    CHECK(to_double(got.hi) >= scan * (1 - 1e-12));
    CHECK(to_double(got.lo) == doctest::Approx(scan).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("Morrey norm of affine tails with integer r") {
  const Prime two(2);
  const SpaceParams sp(Rational(2), Rational(1, 4));
  const RadialFunction f(two, 0, {PPowerSum(1)},
                         TailSpec::affine_geometric(PPowerSum(1), PPowerSum(Rational(1, 2)), pw(2, "-1/2")));
  const Enclosure e = morrey_norm_pow(f, sp);
  CHECK(to_double(e.lo) == doctest::Approx(morrey_scan(f, sp, -100, 40)).epsilon(1e-9));
  CHECK(kind_of([&] { morrey_norm_pow(f, SpaceParams(Rational(3, 2), Rational(1, 4))); }) == ErrorKind::NotCertified);
}

TEST_CASE("sequence supremum") {
  // 1 - 2^{-i} increases to 1 without attaining it
  const GeoSequence up = GeoSequence::geometric(PPowerSum(1), PPowerSum(1)) +
                         GeoSequence::geometric(PPowerSum(-1), PPowerSum(Rational(1, 2)));
  CHECK(sequence_sup(up, 1) == Enclosure(PPowerSum(1)));
  // i 2^{-i} peaks at i = 1, 2 with value 1/2
  const GeoSequence bump = GeoSequence::term({PPowerSum(), PPowerSum(1)}, PPowerSum(Rational(1, 2)));
  CHECK(sequence_sup(bump, 1) == Enclosure(PPowerSum(Rational(1, 2))));
  CHECK(kind_of([&] { sequence_sup(GeoSequence::geometric(PPowerSum(1), PPowerSum(2)), 1); }) ==
        ErrorKind::UnboundedSup);
  CHECK(kind_of([&] { sequence_sup(GeoSequence::term({PPowerSum(1), PPowerSum(1)}, PPowerSum(1)), 1); }) ==
        ErrorKind::UnboundedSup);
}

TEST_CASE("certify_block") {
  const Prime two(2);
  const SpaceParams sp(Rational(2), Rational(1, 4));
  const Block b = certify_block(RadialFunction::ball(two, 0), 0, sp);
  CHECK(b.certificate.outcome == Ordering::Equal);
  CHECK(kind_of([&] { certify_block(RadialFunction::ball(two, 0).scaled(PPowerSum(2)), 0, sp); }) ==
        ErrorKind::NormTooLarge);
  CHECK(kind_of([&] { certify_block(RadialFunction::ball(two, 1), 0, sp); }) == ErrorKind::NotSupported);
  CHECK(kind_of([&] { certify_block(RadialFunction::sphere(two, 3), 2, sp); }) == ErrorKind::NotSupported);
  CHECK(sphere_block(Prime(5), -3, sp).certificate.outcome == Ordering::Equal);

  // p^{t beta} D_tau a is a block on B^{n-t}
  CorpusRng rng(mix_seed(1, "blocks"));
  for (int trial = 0; trial < 30; ++trial) {
    const Prime p(trial % 2 ? 3 : 2);
    const SpaceParams params(Rational(3 + trial % 3, 2), Rational(1, 3 + trial % 2));
    const Block a = random_block(rng, p, params);
    const long t = rng.uniform(-5, 5);
    const Block moved = certify_block(dilate(a.fn, t).scaled(p.power(params.beta() * t)), a.support_n - t, params);
    CHECK(moved.certificate.outcome == a.certificate.outcome);
  }
}

TEST_CASE("block_norm_upper examples") {
  const Prime two(2);
  const SpaceParams sp(Rational(2), Rational(1, 4));
  const auto ball = block_norm_upper(RadialFunction::ball(two, 0), sp);
  CHECK(ball.mass == PPowerSum(1));
  CHECK(ball.pieces.size() == 1);
  CHECK(ball.tails.empty());

  // Phi_{S^0} + Phi_{S^1}: per-sphere lambdas (c^r |S^k|)^{1/r} p^{k alpha}
  const RadialFunction two_spheres(two, 0, {PPowerSum(1), PPowerSum(1)});
  const auto per = block_decomposition_per_sphere(two_spheres, sp);
  REQUIRE(per.pieces.size() == 2);
  CHECK(certified_equal(per.pieces[0].lambda, pw(2, "-1/2")));
  CHECK(certified_equal(per.pieces[1].lambda, pw(2, "1/4")));
  CHECK(certified_equal(per.mass, pw(2, "-1/2") + pw(2, "1/4")));
  const auto best = block_norm_upper(two_spheres, sp);
  CHECK(certified_le(best.mass, per.mass));

  // |x|^{(alpha-1)/r} on B^0: geometric lambda series in closed form
  const auto power = RadialFunction::power_on_ball(two, (sp.alpha() - 1) / sp.r(), 0);
  const auto series = block_decomposition_per_sphere(power, sp);
  double truncated = 0;
  for (long k = 0; k > -200; --k) truncated += std::pow(2.0, -3.0 * k / 8) * std::sqrt(0.5) * std::pow(2.0, 0.75 * k);
  CHECK(to_double(series.mass) == doctest::Approx(truncated).epsilon(1e-12));
  CHECK(series.tails.size() == 1);
  CHECK(certified_le(block_norm_upper(power, sp).mass, series.mass));
}

TEST_CASE("block decompositions certify and are dilation covariant") {
  CorpusRng rng(mix_seed(2, "upper"));
  for (int trial = 0; trial < 40; ++trial) {
    const Prime p(trial % 3 == 0 ? 5 : (trial % 2 ? 3 : 2));
    const SpaceParams sp(trial % 2 ? Rational(3, 2) : Rational(3), Rational(1, 2 + trial % 3));
    const auto f = random_function(rng, p, sp);
    const auto d = block_norm_upper(f, sp);
    PPowerSum total;
    for (const auto& piece : d.pieces) {
      total += piece.lambda;
      CHECK(piece.block.certificate.outcome != Ordering::Greater);
    }
    for (const auto& tail : d.tails) {
      total += tail.mass;
      CHECK(sphere_block(p, tail.sphere(1), sp).certificate.outcome == Ordering::Equal);
    }
    CHECK(total == d.mass);
    const long t = rng.uniform(-5, 5);
    const auto moved = block_norm_upper(dilate(f, t), sp);
    CHECK(certified_equal(moved.mass, p.power(-sp.beta() * t) * d.mass));
  }
}

TEST_CASE("blocks have self-decompositions of mass at most one") {
  CorpusRng rng(mix_seed(3, "self"));
  for (int trial = 0; trial < 30; ++trial) {
    const Prime p(trial % 2 ? 2 : 7);
    const SpaceParams sp(Rational(2), Rational(1, 3));
    const Block a = random_block(rng, p, sp);
    CHECK(certified_le(block_norm_upper(a.fn, sp).mass, PPowerSum(1)));
    CHECK(certified_le(block_norm_lower(a.fn, sp).lo, PPowerSum(1)));
  }
}

TEST_CASE("bracket collapses on the unit ball indicator") {
  for (long p : {2L, 3L, 7L}) {
    const SpaceParams sp(Rational(2), Rational(1, 4));
    const auto ball = RadialFunction::ball(Prime(p), 0);
    const Enclosure lb = block_norm_lower_dual(ball, ball, sp);
    CHECK(lb == Enclosure(PPowerSum(1)));
    const CertifiedBound bracket = block_norm_bracket(ball, sp);
    CHECK(bracket.collapsed());
    CHECK(bracket.upper == PPowerSum(1));
  }
  CHECK_THROWS_AS(block_norm_lower_dual(RadialFunction::ball(Prime(2), 0), RadialFunction::zero(Prime(2)),
                                        SpaceParams(Rational(2), Rational(1, 4))),
                  Error);
}

TEST_CASE("bracket consistency and Minkowski subadditivity") {
  CorpusRng rng(mix_seed(4, "bracket"));
  CorpusOptions opts;
  opts.allow_affine = false;
  for (int trial = 0; trial < 20; ++trial) {
    const Prime p(trial % 2 ? 3 : 2);
    const SpaceParams sp(Rational(2), Rational(1, 4 + trial % 3));
    const auto f1 = random_function(rng, p, sp, opts);
    const auto f2 = random_function(rng, p, sp, opts);
    const PPowerSum w1 = p.power(Rational(rng.uniform(-2, 2), 2));
    const PPowerSum w2(Rational(rng.uniform(1, 3), rng.uniform(1, 3)));
    const auto sum = combine(f1, f2, w1, w2);
    const PPowerSum rhs = w1 * block_norm_upper(f1, sp).mass + w2 * block_norm_upper(f2, sp).mass;
    const PPowerSum ub = block_norm_upper(sum, sp).mass;
    for (const auto& g : default_witnesses(p, sp)) {
      Enclosure lb;
      try {
        lb = block_norm_lower_dual(sum, g, sp);
      } catch (const Error&) {
        continue;
      }
      CHECK(certified_le(lb.lo, ub));
      CHECK(certified_le(lb.lo, rhs));
    }
  }
}

TEST_CASE("Hoelder pairing") {
  const Prime two(2);
  const SpaceParams sp(Rational(2), Rational(1, 4));
  const auto ball = RadialFunction::ball(two, 0);
  const auto rec = holder_pairing_check(ball, ball, sp);
  CHECK(rec.outcome == Outcome::Pass);
  CHECK(rec.lhs == Enclosure(PPowerSum(1)));
  CHECK(rec.rhs == Enclosure(PPowerSum(1)));
  CHECK(holder_pairing_check(RadialFunction::zero(two), ball, sp).outcome == Outcome::Pass);

  CorpusRng rng(mix_seed(5, "holder"));
  CorpusOptions opts;
  opts.allow_affine = false;
  int pass = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Prime p(trial % 3 == 0 ? 2 : (trial % 3 == 1 ? 3 : 5));
    const SpaceParams params(trial % 2 ? Rational(3, 2) : Rational(2), Rational(1, 3 + trial % 4));
    const auto f = random_function(rng, p, params, opts);
    const auto g = random_function(rng, p, params.conjugate(), opts);
    if (holder_pairing_check(f, g, params).outcome == Outcome::Pass) ++pass;
  }
  CHECK(pass == 100);
}
