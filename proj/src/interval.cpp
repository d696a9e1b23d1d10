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

#include "padic_hh/interval.hpp"

#include <algorithm>
#include <utility>

#include "padic_hh/error.hpp"

namespace padic_hh {

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.prec());
  mpfr_init2(hi_, o.prec());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, o.prec());
  mpfr_init2(hi_, o.prec());
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.prec());
    mpfr_set_prec(hi_, o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_integer(const Integer& n, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
  return r;
}

Rational Interval::lo_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational Interval::hi_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double Interval::mid() const {
  return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

static mpfr_prec_t joint_prec(const Interval& a, const Interval& b) {
  return std::max(a.prec(), b.prec());
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = joint_prec(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (!b.positive() && !b.negative()) {
    throw Error(ErrorKind::InvalidArgument, "interval division by an interval containing zero");
  }
  const mpfr_prec_t prec = joint_prec(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::hull(const Interval& o) const {
  Interval r(joint_prec(*this, o));
  mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::max_with(const Interval& o) const {
  Interval r(joint_prec(*this, o));
  mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

namespace {

// x^(num/den) for a nonnegative scalar x with the given rounding direction.
// Monotone in x for the sign of num, so rounding each step in `rnd` bounds the
// exact result from that side.
void pow_scalar(mpfr_ptr out, mpfr_srcptr x, const Rational& e, mpfr_rnd_t rnd) {
  const Integer& num = e.get_num();
  const Integer& den = e.get_den();
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(out));
  if (sgn(num) >= 0) {
    mpfr_pow_z(t, x, num.get_mpz_t(), rnd);
    mpfr_rootn_ui(out, t, den.get_ui(), rnd);
  } else {
    const mpfr_rnd_t inner = rnd == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD;
    Integer mag = -num;
    mpfr_pow_z(t, x, mag.get_mpz_t(), inner);
    mpfr_rootn_ui(t, t, den.get_ui(), inner);
    mpfr_ui_div(out, 1, t, rnd);
  }
  mpfr_clear(t);
}

}  // namespace

Interval pow_interval(const Interval& x, const Rational& e) {
  if (!x.nonnegative()) {
    throw Error(ErrorKind::InvalidArgument, "pow_interval needs a nonnegative base");
  }
  Interval r(x.prec());
  if (sgn(e) >= 0) {
    pow_scalar(r.lo(), x.lo(), e, MPFR_RNDD);
    pow_scalar(r.hi(), x.hi(), e, MPFR_RNDU);
  } else {
    if (!x.positive()) throw Error(ErrorKind::InvalidArgument, "negative power of an interval touching zero");
    pow_scalar(r.lo(), x.hi(), e, MPFR_RNDD);
    pow_scalar(r.hi(), x.lo(), e, MPFR_RNDU);
  }
  return r;
}

Interval enclose(const PPowerSum& x, mpfr_prec_t prec) {
  Interval total(prec);
  for (const auto& [mono, coef] : x.terms()) {
    Interval term = Interval::from_rational(coef, prec);
    for (const auto& [prime, exp] : mono) {
      term = term * pow_interval(Interval::from_integer(prime, prec), exp);
    }
    total = total + term;
  }
  return total;
}

Enclosure to_enclosure(const Interval& x) {
  return Enclosure(PPowerSum(x.lo_rational()), PPowerSum(x.hi_rational()));
}

}  // namespace padic_hh
