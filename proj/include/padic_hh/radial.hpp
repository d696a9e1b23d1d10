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

#pragma once

#include <optional>
#include <vector>

#include "padic_hh/exact.hpp"
#include "padic_hh/geo_sequence.hpp"
#include "padic_hh/padic.hpp"

namespace padic_hh {

enum class TailKind { Zero, Geometric, AffineGeometric, Mixture, Envelope };

/// Values of a radial function beyond one edge of its window, indexed by the
/// offset i >= 1 from that edge (inner tails step towards 0, outer tails
/// towards infinity).
///
/// Exact tails are a GeoSequence. Envelope tails only carry certified lower
/// and upper sequences; they appear in images of kernels whose weights are not
/// pure powers.
class TailSpec {
 public:
  static TailSpec zero() { return TailSpec(); }
  // value(i) = base * ratio^i, with base the coefficient on the window edge
  static TailSpec geometric(const PPowerSum& base, const PPowerSum& ratio);
  // value(i) = (base + slope * i) * ratio^i
  static TailSpec affine_geometric(const PPowerSum& base, const PPowerSum& slope, const PPowerSum& ratio);
  static TailSpec sequence(GeoSequence values);
  static TailSpec envelope(GeoSequence lower, GeoSequence upper);

  bool is_zero() const { return !envelope_ && exact_.is_zero(); }
  bool is_exact() const { return !envelope_.has_value(); }
  // Classification relative to the edge coefficient.
  TailKind kind(const PPowerSum& edge) const;

  const GeoSequence& values() const;  // throws NotExact for envelopes
  const GeoSequence& lower() const { return envelope_ ? envelope_->first : exact_; }
  const GeoSequence& upper() const { return envelope_ ? envelope_->second : exact_; }

  TailSpec scaled(const PPowerSum& w) const;
  friend bool operator==(const TailSpec& a, const TailSpec& b);

 private:
  GeoSequence exact_;
  std::optional<std::pair<GeoSequence, GeoSequence>> envelope_;
};

/// Nonnegative radial function on Q_p^*: explicit values on spheres
/// S^kmin..S^kmax plus an inner and an outer tail.
class RadialFunction {
 public:
  RadialFunction(Prime p, long kmin, std::vector<PPowerSum> coeffs, TailSpec inner = TailSpec::zero(),
                 TailSpec outer = TailSpec::zero());

  static RadialFunction zero(Prime p);
  // indicator of S^k scaled by coef
  static RadialFunction sphere(Prime p, long k, const PPowerSum& coef = PPowerSum(1));
  // indicator of the ball B^n
  static RadialFunction ball(Prime p, long n);
  // |x|_p^exponent restricted to B^top
  static RadialFunction power_on_ball(Prime p, const Rational& exponent, long top);

  const Prime& prime() const { return p_; }
  long kmin() const { return kmin_; }
  long kmax() const { return kmin_ + static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<PPowerSum>& coeffs() const { return coeffs_; }
  const TailSpec& inner() const { return inner_; }
  const TailSpec& outer() const { return outer_; }

  bool is_exact() const { return inner_.is_exact() && outer_.is_exact(); }
  bool is_zero() const;
  bool compactly_supported() const { return inner_.is_zero() && outer_.is_zero(); }
  // Largest k with f(S^k) != 0 when the outer tail vanishes.
  std::optional<long> support_top() const;

  // Same function with its window widened to [lo, hi] (never narrowed).
  RadialFunction widened(long lo, long hi) const;
  RadialFunction scaled(const PPowerSum& w) const;

  friend bool operator==(const RadialFunction& a, const RadialFunction& b);

 private:
  Prime p_;
  long kmin_;
  std::vector<PPowerSum> coeffs_;
  TailSpec inner_;
  TailSpec outer_;
};

PPowerSum evaluate_at(const RadialFunction& f, long k);
Enclosure enclose_at(const RadialFunction& f, long k);

// Integral over Q_p as sum_k f(S^k) |S^k|.
PPowerSum integrate(const RadialFunction& f);
Enclosure integrate_enclosure(const RadialFunction& f);

// ||f||_r^r; exact when every power can be taken exactly.
Enclosure lr_norm_pow(const RadialFunction& f, const Rational& r);

// g(S^k) = f(S^{k+t}), i.e. f(tau x) with |tau|_p = p^t.
// Same window, tails replaced by their upper envelopes (identity when exact).
RadialFunction upper_majorant(const RadialFunction& f);

// s^r as a sequence when that is exact: r a nonnegative integer or s a single
// geometric term with single-term base.
std::optional<GeoSequence> exact_sequence_power(const GeoSequence& s, const Rational& r);

RadialFunction dilate(const RadialFunction& f, long t);

// w1 f + w2 g for nonnegative single-term weights.
RadialFunction combine(const RadialFunction& f, const RadialFunction& g, const PPowerSum& w1, const PPowerSum& w2);

// Pointwise product f g.
RadialFunction multiply(const RadialFunction& f, const RadialFunction& g);

// sum_{i >= start} s(i)^r w^i for a nonnegative sequence s, exact when s^r is
// representable, otherwise a certified enclosure.
Enclosure power_series_sum(const GeoSequence& s, const Rational& r, const PPowerSum& w, long start,
                           ErrorKind on_divergence);

}  // namespace padic_hh
