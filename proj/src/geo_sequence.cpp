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

#include "padic_hh/geo_sequence.hpp"

#include <algorithm>

#include "padic_hh/interval.hpp"

namespace padic_hh {

namespace {

Rational binomial(std::size_t n, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

void trim(GeoSequence::Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

PPowerSum eval_poly(const GeoSequence::Poly& p, long i) {
  PPowerSum acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc.scaled(Rational(i)) + *it;
  return acc;
}

// P(i + s) expanded in powers of i.
GeoSequence::Poly shift_poly(const GeoSequence::Poly& p, long s) {
  GeoSequence::Poly out(p.size());
  for (std::size_t d = 0; d < p.size(); ++d) {
    for (std::size_t e = d + 1; e-- > 0;) {
      // coefficient of i^e in (i+s)^d is C(d,e) s^(d-e)
      const Rational c = binomial(d, e) * rational_power(Rational(s), static_cast<long>(d - e));
      out[e] += p[d].scaled(c);
    }
  }
  trim(out);
  return out;
}

bool is_one(const PPowerSum& x) { return x == PPowerSum(1); }

}  // namespace

GeoSequence::Poly indefinite_sum_poly(const GeoSequence::Poly& p, const PPowerSum& x) {
  const std::size_t deg = p.size();
  if (deg == 0) return {};
  if (is_one(x)) {
    // Q(i) - Q(i+1) = P(i): solve q_{e+1} top-down with q_0 = 0.
    GeoSequence::Poly q(deg + 1);
    for (std::size_t e = deg; e-- > 0;) {
      PPowerSum acc = p[e];
      for (std::size_t d = e + 2; d <= deg; ++d) acc += q[d].scaled(binomial(d, e));
      q[e + 1] = acc.scaled(Rational(-1, static_cast<long>(e + 1)));
    }
    trim(q);
    return q;
  }
  // q_e (1 - x) - x sum_{d>e} C(d,e) q_d = p_e
  const PPowerSum inv = inverse_one_minus(x);
  GeoSequence::Poly q(deg);
  for (std::size_t e = deg; e-- > 0;) {
    PPowerSum acc;
    for (std::size_t d = e + 1; d < deg; ++d) acc += q[d].scaled(binomial(d, e));
    q[e] = (p[e] + x * acc) * inv;
  }
  trim(q);
  return q;
}

GeoSequence GeoSequence::geometric(const PPowerSum& coef, const PPowerSum& ratio) {
  return term({coef}, ratio);
}

GeoSequence GeoSequence::term(Poly poly, const PPowerSum& ratio) {
  if (!ratio.is_single_term() || ratio.terms().begin()->second <= 0) {
    throw Error(ErrorKind::InvalidArgument, "sequence ratio must be a single positive term");
  }
  GeoSequence s;
  s.add(ratio, poly);
  return s;
}

std::size_t GeoSequence::degree() const {
  std::size_t d = 0;
  for (const auto& [x, p] : terms_) d = std::max(d, p.size() - 1);
  return d;
}

void GeoSequence::add(const PPowerSum& ratio, const Poly& poly) {
  Poly& dst = terms_[ratio];
  if (dst.size() < poly.size()) dst.resize(poly.size());
  for (std::size_t d = 0; d < poly.size(); ++d) dst[d] += poly[d];
  trim(dst);
  if (dst.empty()) terms_.erase(ratio);
}

PPowerSum GeoSequence::at(long i) const {
  PPowerSum total;
  for (const auto& [x, p] : terms_) total += eval_poly(p, i) * pow_int(x, i);
  return total;
}

GeoSequence& GeoSequence::operator+=(const GeoSequence& o) {
  for (const auto& [x, p] : o.terms_) add(x, p);
  return *this;
}

GeoSequence operator*(const GeoSequence& a, const GeoSequence& b) {
  GeoSequence out;
  for (const auto& [xa, pa] : a.terms_) {
    for (const auto& [xb, pb] : b.terms_) {
      GeoSequence::Poly prod(pa.size() + pb.size() - 1);
      for (std::size_t i = 0; i < pa.size(); ++i) {
        for (std::size_t j = 0; j < pb.size(); ++j) prod[i + j] += pa[i] * pb[j];
      }
      out.add(xa * xb, prod);
    }
  }
  return out;
}

bool operator==(const GeoSequence& a, const GeoSequence& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != ib->second) return false;
  }
  return true;
}

GeoSequence GeoSequence::scaled(const PPowerSum& c) const {
  GeoSequence out;
  for (const auto& [x, p] : terms_) {
    Poly q;
    for (const auto& coef : p) q.push_back(coef * c);
    out.add(x, q);
  }
  return out;
}

GeoSequence GeoSequence::shifted(long offset) const {
  GeoSequence out;
  for (const auto& [x, p] : terms_) {
    Poly q = shift_poly(p, offset);
    const PPowerSum xs = pow_int(x, offset);
    for (auto& c : q) c *= xs;
    out.add(x, q);
  }
  return out;
}

GeoSequence GeoSequence::times_geometric(const PPowerSum& y) const {
  GeoSequence out;
  if (y.is_zero()) return out;
  for (const auto& [x, p] : terms_) out.add(x * y, p);
  return out;
}

std::optional<PPowerSum> GeoSequence::divergence_witness() const {
  for (const auto& [x, p] : terms_) {
    if (compare_with_one(x) >= 0) return x;
  }
  return std::nullopt;
}

GeoSequence GeoSequence::tail_sum(ErrorKind on_divergence) const {
  if (auto w = divergence_witness()) {
    throw Error(on_divergence, "series with ratio " + to_string(*w) + " >= 1 does not converge");
  }
  GeoSequence out;
  for (const auto& [x, p] : terms_) out.add(x, indefinite_sum_poly(p, x));
  return out;
}

GeoSequence GeoSequence::prefix_sum(long start) const {
  GeoSequence out;
  for (const auto& [x, p] : terms_) {
    const Poly q = indefinite_sum_poly(p, x);
    out.add(PPowerSum(1), {eval_poly(q, start) * pow_int(x, start)});
    Poly neg;
    for (const auto& c : q) neg.push_back(-c);
    out.add(x, neg);
  }
  return out;
}

std::optional<PPowerSum> abs_sup_bound(const GeoSequence& s, long from) {
  if (from < 1) throw Error(ErrorKind::InvalidArgument, "abs_sup_bound needs from >= 1");
  if (s.is_zero()) return PPowerSum();
  constexpr mpfr_prec_t prec = 128;
  // |P(i)| x^i <= |P|(J) x^J theta^(i-J) for i >= J with theta = x (1 + 1/J)^deg,
  // because (i/J)^deg <= (1 + 1/J)^(deg (i-J)).
  const Interval growth = Interval::from_rational(Rational(from + 1, from), prec);
  const Interval at = Interval::from_integer(Integer(from), prec);
  Interval bound(prec);
  for (const auto& [x, poly] : s.terms()) {
    if (compare_with_one(x) >= 0) return std::nullopt;
    const Interval theta = enclose(x, prec) * pow_interval(growth, Rational(static_cast<long>(poly.size() - 1)));
    if (mpfr_cmp_ui(theta.hi(), 1) >= 0) return std::nullopt;
    Interval pm(prec);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      const Interval c = enclose(poly[d], prec);
      Interval mag(prec);
      mpfr_abs(mag.lo(), c.lo(), MPFR_RNDU);
      mpfr_abs(mag.hi(), c.hi(), MPFR_RNDU);
      mpfr_max(mag.hi(), mag.hi(), mag.lo(), MPFR_RNDU);
      mpfr_set(mag.lo(), mag.hi(), MPFR_RNDU);
      pm = pm + mag * pow_interval(at, Rational(static_cast<long>(d)));
    }
    bound = bound + pm * enclose(pow_int(x, from), prec);
  }
  return PPowerSum(bound.hi_rational());
}

}  // namespace padic_hh
