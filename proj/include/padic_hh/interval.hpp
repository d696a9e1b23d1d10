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

#include <mpfr.h>

#include "padic_hh/exact.hpp"

namespace padic_hh {

/// Closed interval of MPFR floats with outward rounding on every operation.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_rational(const Rational& q, mpfr_prec_t prec);
  static Interval from_integer(const Integer& n, mpfr_prec_t prec);

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }
  bool nonnegative() const { return mpfr_sgn(lo_) >= 0; }

  Rational lo_rational() const;
  Rational hi_rational() const;
  double mid() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  // Requires b to exclude zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  // Hull of both intervals.
  Interval hull(const Interval& o) const;
  Interval max_with(const Interval& o) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

// Nonnegative interval to a rational power.
Interval pow_interval(const Interval& x, const Rational& e);
Interval enclose(const PPowerSum& x, mpfr_prec_t prec);
Enclosure to_enclosure(const Interval& x);

}  // namespace padic_hh
