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

#include "padic_hh/radial.hpp"

#include <algorithm>

#include "padic_hh/error.hpp"
#include "padic_hh/interval.hpp"

namespace padic_hh {

// ---------------------------------------------------------------------------
// TailSpec

TailSpec TailSpec::geometric(const PPowerSum& base, const PPowerSum& ratio) {
  return sequence(GeoSequence::geometric(base, ratio));
}

TailSpec TailSpec::affine_geometric(const PPowerSum& base, const PPowerSum& slope, const PPowerSum& ratio) {
  return sequence(GeoSequence::term({base, slope}, ratio));
}

TailSpec TailSpec::sequence(GeoSequence values) {
  TailSpec t;
  t.exact_ = std::move(values);
  return t;
}

TailSpec TailSpec::envelope(GeoSequence lower, GeoSequence upper) {
  if (lower == upper) return sequence(std::move(lower));
  TailSpec t;
  t.envelope_.emplace(std::move(lower), std::move(upper));
  return t;
}

TailKind TailSpec::kind(const PPowerSum& edge) const {
  if (envelope_) return TailKind::Envelope;
  if (exact_.is_zero()) return TailKind::Zero;
  if (exact_.terms().size() == 1) {
    const auto& poly = exact_.terms().begin()->second;
    if (poly[0] == edge && poly.size() == 1) return TailKind::Geometric;
    if (poly[0] == edge && poly.size() == 2) return TailKind::AffineGeometric;
  }
  return TailKind::Mixture;
}

const GeoSequence& TailSpec::values() const {
  if (envelope_) throw Error(ErrorKind::NotExact, "tail is only known through an envelope");
  return exact_;
}

TailSpec TailSpec::scaled(const PPowerSum& w) const {
  if (envelope_) return envelope(envelope_->first.scaled(w), envelope_->second.scaled(w));
  return sequence(exact_.scaled(w));
}

bool operator==(const TailSpec& a, const TailSpec& b) {
  if (a.envelope_.has_value() != b.envelope_.has_value()) return false;
  if (a.envelope_) return a.envelope_->first == b.envelope_->first && a.envelope_->second == b.envelope_->second;
  return a.exact_ == b.exact_;
}

// ---------------------------------------------------------------------------
// RadialFunction

namespace {

void require_nonnegative(const PPowerSum& c) {
  if (auto s = c.uniform_sign()) {
    if (*s < 0) throw Error(ErrorKind::InvalidArgument, "radial coefficients must be nonnegative");
    return;
  }
  if (compare_certified(c, PPowerSum()).outcome == Ordering::Less) {
    throw Error(ErrorKind::InvalidArgument, "radial coefficients must be nonnegative");
  }
}

}  // namespace

RadialFunction::RadialFunction(Prime p, long kmin, std::vector<PPowerSum> coeffs, TailSpec inner, TailSpec outer)
    : p_(p), kmin_(kmin), coeffs_(std::move(coeffs)), inner_(std::move(inner)), outer_(std::move(outer)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "radial function window must be nonempty");
  for (const auto& c : coeffs_) require_nonnegative(c);
}

RadialFunction RadialFunction::zero(Prime p) { return RadialFunction(p, 0, {PPowerSum()}); }

RadialFunction RadialFunction::sphere(Prime p, long k, const PPowerSum& coef) {
  return RadialFunction(p, k, {coef});
}

RadialFunction RadialFunction::ball(Prime p, long n) {
  return RadialFunction(p, n, {PPowerSum(1)}, TailSpec::geometric(PPowerSum(1), PPowerSum(1)));
}

RadialFunction RadialFunction::power_on_ball(Prime p, const Rational& exponent, long top) {
  const PPowerSum edge = p.power(exponent * top);
  return RadialFunction(p, top, {edge}, TailSpec::geometric(edge, p.power(-exponent)));
}

bool RadialFunction::is_zero() const {
  return inner_.is_zero() && outer_.is_zero() &&
         std::all_of(coeffs_.begin(), coeffs_.end(), [](const PPowerSum& c) { return c.is_zero(); });
}

std::optional<long> RadialFunction::support_top() const {
  if (!outer_.is_zero()) return std::nullopt;
  for (long k = kmax(); k >= kmin_; --k) {
    if (!coeffs_[static_cast<std::size_t>(k - kmin_)].is_zero()) return k;
  }
  if (!inner_.is_zero()) return kmin_ - 1;
  return std::nullopt;
}

RadialFunction RadialFunction::widened(long lo, long hi) const {
  lo = std::min(lo, kmin_);
  hi = std::max(hi, kmax());
  if (lo == kmin_ && hi == kmax()) return *this;
  std::vector<PPowerSum> c;
  c.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long k = lo; k <= hi; ++k) c.push_back(evaluate_at(*this, k));
  auto rebase = [](const TailSpec& t, long by) {
    if (t.is_exact()) return TailSpec::sequence(t.values().shifted(by));
    return TailSpec::envelope(t.lower().shifted(by), t.upper().shifted(by));
  };
  return RadialFunction(p_, lo, std::move(c), rebase(inner_, kmin_ - lo), rebase(outer_, hi - kmax()));
}

RadialFunction RadialFunction::scaled(const PPowerSum& w) const {
  std::vector<PPowerSum> c;
  for (const auto& x : coeffs_) c.push_back(x * w);
  return RadialFunction(p_, kmin_, std::move(c), inner_.scaled(w), outer_.scaled(w));
}

bool operator==(const RadialFunction& a, const RadialFunction& b) {
  return a.p_ == b.p_ && a.kmin_ == b.kmin_ && a.coeffs_ == b.coeffs_ && a.inner_ == b.inner_ &&
         a.outer_ == b.outer_;
}

PPowerSum evaluate_at(const RadialFunction& f, long k) {
  if (k < f.kmin()) return f.inner().values().at(f.kmin() - k);
  if (k > f.kmax()) return f.outer().values().at(k - f.kmax());
  return f.coeffs()[static_cast<std::size_t>(k - f.kmin())];
}

Enclosure enclose_at(const RadialFunction& f, long k) {
  if (k < f.kmin()) {
    const long i = f.kmin() - k;
    return {f.inner().lower().at(i), f.inner().upper().at(i)};
  }
  if (k > f.kmax()) {
    const long i = k - f.kmax();
    return {f.outer().lower().at(i), f.outer().upper().at(i)};
  }
  return Enclosure(f.coeffs()[static_cast<std::size_t>(k - f.kmin())]);
}

// ---------------------------------------------------------------------------
// Integration and norms

namespace {

PPowerSum sphere_measure(const Prime& p, long k) { return haar_measure(k, Shape::Sphere, p); }

PPowerSum integrate_sequences(const RadialFunction& f, const GeoSequence& inner, const GeoSequence& outer) {
  const Prime& p = f.prime();
  PPowerSum total;
  for (long k = f.kmin(); k <= f.kmax(); ++k) total += evaluate_at(f, k) * sphere_measure(p, k);
  // inner: sum_i I(i) |S^{kmin-i}| = |S^kmin| sum_i I(i) p^{-i}
  if (!inner.is_zero()) {
    try {
      total += sphere_measure(p, f.kmin()) * inner.times_geometric(p.power(-1)).sum_from(1, ErrorKind::DivergentIntegral);
    } catch (const Error& e) {
      throw Error(ErrorKind::DivergentIntegral, std::string("inner tail: ") + e.what());
    }
  }
  if (!outer.is_zero()) {
    try {
      total += sphere_measure(p, f.kmax()) * outer.times_geometric(p.power(1)).sum_from(1, ErrorKind::DivergentIntegral);
    } catch (const Error& e) {
      throw Error(ErrorKind::DivergentIntegral, std::string("outer tail: ") + e.what());
    }
  }
  return total;
}

}  // namespace

PPowerSum integrate(const RadialFunction& f) {
  return integrate_sequences(f, f.inner().values(), f.outer().values());
}

Enclosure integrate_enclosure(const RadialFunction& f) {
  if (f.is_exact()) return Enclosure(integrate(f));
  PPowerSum window;
  for (long k = f.kmin(); k <= f.kmax(); ++k) window += evaluate_at(f, k) * sphere_measure(f.prime(), k);
  const RadialFunction core(f.prime(), f.kmin(), f.coeffs());
  return {integrate_sequences(core, f.inner().lower(), f.outer().lower()),
          integrate_sequences(core, f.inner().upper(), f.outer().upper())};
}

namespace {

Interval abs_upper(const PPowerSum& c, mpfr_prec_t prec) {
  Interval iv = enclose(c, prec);
  Interval out(prec);
  mpfr_abs(out.lo(), iv.lo(), MPFR_RNDD);
  mpfr_abs(out.hi(), iv.hi(), MPFR_RNDU);
  mpfr_max(out.hi(), out.hi(), out.lo(), MPFR_RNDU);
  mpfr_set(out.lo(), out.hi(), MPFR_RNDU);
  return out;
}

Interval clamp_nonnegative(Interval x) {
  if (mpfr_sgn(x.lo()) < 0) mpfr_set_zero(x.lo(), 1);
  if (mpfr_sgn(x.hi()) < 0) mpfr_set_zero(x.hi(), 1);
  return x;
}

constexpr mpfr_prec_t kNumericPrec = 256;
constexpr long kMaxTerms = 1L << 14;

Enclosure numeric_power_sum(const GeoSequence& s, const Rational& r, const PPowerSum& w, long start) {
  const mpfr_prec_t prec = kNumericPrec;
  const Interval w_iv = enclose(w, prec);
  Interval partial(prec);
  long next = start;
  for (long m = std::max(start + 8, 16L);; m *= 2) {
    for (; next < m; ++next) {
      const Interval v = clamp_nonnegative(enclose(s.at(next), prec));
      partial = partial + pow_interval(v, r) * enclose(pow_int(w, next), prec);
    }
    // For i >= m every term is bounded by B * theta^(i-m) with
    // B = sum_t |P_t|(m) x_t^m and theta = max_t x_t (1 + 1/m)^deg_t.
    Interval bound(prec);
    Interval theta(prec);
    const Interval growth = Interval::from_rational(Rational(m + 1, m), prec);
    for (const auto& [x, poly] : s.terms()) {
      Interval pm(prec);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        pm = pm + abs_upper(poly[d], prec) * pow_interval(Interval::from_integer(Integer(m), prec), Rational(static_cast<long>(d)));
      }
      bound = bound + pm * enclose(pow_int(x, m), prec);
      const Interval th = enclose(x, prec) * pow_interval(growth, Rational(static_cast<long>(poly.size() - 1)));
      theta = theta.max_with(th);
    }
    const Interval q = pow_interval(theta, r) * w_iv;
    const bool last = m >= kMaxTerms;
    if (mpfr_cmp_ui(q.hi(), 1) < 0) {
      const Interval one = Interval::from_integer(Integer(1), prec);
      Interval tail = pow_interval(clamp_nonnegative(bound), r) * enclose(pow_int(w, m), prec) / (one - q);
      // accept once the tail is below 2^-64 of the partial sum
      Interval scaled_partial = partial * Interval::from_rational(Rational(1, Integer(1) << 64), prec);
      if (last || mpfr_lessequal_p(tail.hi(), scaled_partial.lo()) || mpfr_zero_p(tail.hi())) {
        Interval lo_hi = partial;
        mpfr_add(lo_hi.hi(), partial.hi(), tail.hi(), MPFR_RNDU);
        return to_enclosure(lo_hi);
      }
    } else if (last) {
      throw Error(ErrorKind::NotCertified, "no geometric majorant found for a tail power sum");
    }
  }
}

}  // namespace

std::optional<GeoSequence> exact_sequence_power(const GeoSequence& s, const Rational& r) {
  if (s.is_zero()) return s;
  if (is_integer(r) && r >= 0) {
    GeoSequence out = GeoSequence::geometric(PPowerSum(1), PPowerSum(1));
    for (long i = 0; i < r.get_num().get_si(); ++i) out = out * s;
    return out;
  }
  if (s.terms().size() != 1) return std::nullopt;
  const auto& [x, poly] = *s.terms().begin();
  if (poly.size() != 1 || !poly[0].is_single_term()) return std::nullopt;
  try {
    return GeoSequence::geometric(pow_rational(poly[0], r), pow_rational(x, r));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnfactorableCoefficient) throw;
    return std::nullopt;
  }
}

Enclosure power_series_sum(const GeoSequence& s, const Rational& r, const PPowerSum& w, long start,
                           ErrorKind on_divergence) {
  if (s.is_zero()) return Enclosure(PPowerSum());
  for (const auto& [x, poly] : s.terms()) {
    if (compare_with_one(pow_rational(x, r) * w) >= 0) {
      throw Error(on_divergence, "power series with ratio " + to_string(pow_rational(x, r) * w) + " >= 1");
    }
  }
  if (auto exact = exact_sequence_power(s, r)) return Enclosure(exact->times_geometric(w).sum_from(start, on_divergence));
  return numeric_power_sum(s, r, w, start);
}

Enclosure lr_norm_pow(const RadialFunction& f, const Rational& r) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "lr_norm_pow needs r >= 1");
  const Prime& p = f.prime();
  Enclosure total(PPowerSum{});
  for (long k = f.kmin(); k <= f.kmax(); ++k) {
    total = total + pow_enclosure(Enclosure(evaluate_at(f, k)), r) * Enclosure(sphere_measure(p, k));
  }
  auto tail = [&](const TailSpec& t, long edge, const PPowerSum& step, const char* side) {
    if (t.is_zero()) return Enclosure(PPowerSum{});
    try {
      const Enclosure lo = power_series_sum(t.lower(), r, step, 1, ErrorKind::DivergentNorm);
      const Enclosure hi = t.is_exact() ? lo : power_series_sum(t.upper(), r, step, 1, ErrorKind::DivergentNorm);
      return Enclosure(lo.lo, hi.hi) * Enclosure(sphere_measure(p, edge));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivergentNorm) throw;
      throw Error(ErrorKind::DivergentNorm, std::string(side) + " tail: " + e.what());
    }
  };
  total = total + tail(f.inner(), f.kmin(), p.power(-1), "inner");
  total = total + tail(f.outer(), f.kmax(), p.power(1), "outer");
  return total;
}

// ---------------------------------------------------------------------------
// Structural operations

RadialFunction upper_majorant(const RadialFunction& f) {
  if (f.is_exact()) return f;
  return RadialFunction(f.prime(), f.kmin(), f.coeffs(), TailSpec::sequence(f.inner().upper()),
                        TailSpec::sequence(f.outer().upper()));
}

RadialFunction dilate(const RadialFunction& f, long t) {
  return RadialFunction(f.prime(), f.kmin() - t, f.coeffs(), f.inner(), f.outer());
}

namespace {

void require_weight(const PPowerSum& w) {
  if (w.is_zero()) return;
  if (!w.is_single_term() || w.terms().begin()->second < 0) {
    throw Error(ErrorKind::InvalidArgument, "combine weights must be nonnegative single terms");
  }
}

template <class Op>
TailSpec merge_tails(const TailSpec& a, const TailSpec& b, Op op) {
  if (a.is_exact() && b.is_exact()) return TailSpec::sequence(op(a.values(), b.values()));
  return TailSpec::envelope(op(a.lower(), b.lower()), op(a.upper(), b.upper()));
}

}  // namespace

RadialFunction combine(const RadialFunction& f, const RadialFunction& g, const PPowerSum& w1, const PPowerSum& w2) {
  if (!(f.prime() == g.prime())) throw Error(ErrorKind::InvalidArgument, "combine needs a common prime");
  require_weight(w1);
  require_weight(w2);
  const long lo = std::min(f.kmin(), g.kmin());
  const long hi = std::max(f.kmax(), g.kmax());
  const RadialFunction a = f.widened(lo, hi).scaled(w1);
  const RadialFunction b = g.widened(lo, hi).scaled(w2);
  std::vector<PPowerSum> c;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c.push_back(a.coeffs()[i] + b.coeffs()[i]);
  auto add = [](const GeoSequence& x, const GeoSequence& y) { return x + y; };
  return RadialFunction(f.prime(), lo, std::move(c), merge_tails(a.inner(), b.inner(), add),
                        merge_tails(a.outer(), b.outer(), add));
}

RadialFunction multiply(const RadialFunction& f, const RadialFunction& g) {
  if (!(f.prime() == g.prime())) throw Error(ErrorKind::InvalidArgument, "multiply needs a common prime");
  const long lo = std::min(f.kmin(), g.kmin());
  const long hi = std::max(f.kmax(), g.kmax());
  const RadialFunction a = f.widened(lo, hi);
  const RadialFunction b = g.widened(lo, hi);
  std::vector<PPowerSum> c;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c.push_back(a.coeffs()[i] * b.coeffs()[i]);
  auto mul = [](const GeoSequence& x, const GeoSequence& y) { return x * y; };
  return RadialFunction(f.prime(), lo, std::move(c), merge_tails(a.inner(), b.inner(), mul),
                        merge_tails(a.outer(), b.outer(), mul));
}

}  // namespace padic_hh
