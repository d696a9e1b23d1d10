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

#include "padic_hh/exact.hpp"

namespace padic_hh {

// A prime p >= 2, checked by trial division at construction.
class Prime {
 public:
  explicit Prime(long p);

  long value() const { return p_; }
  Integer integer() const { return Integer(p_); }

  // coef * p^e
  PPowerSum power(const Rational& e, const Rational& coef = 1) const;
  PPowerSum power(long e) const { return power(Rational(e)); }
  // 1 - 1/p
  Rational sphere_factor() const { return Rational(p_ - 1, p_); }

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

 private:
  long p_;
};

// Exponent of p in x; x must be nonzero.
long valuation(const Rational& x, const Prime& p);

// |x|_p = p^{-valuation}, and 0 for x = 0.
PPowerSum padic_norm(const Rational& x, const Prime& p);

enum class Shape { Ball, Sphere };

// |B^k| = p^k, |S^k| = p^k (1 - 1/p)
PPowerSum haar_measure(long k, Shape shape, const Prime& p);

struct UltrametricResult {
  PPowerSum sum_norm;
  PPowerSum max_norm;
  bool inequality_holds = false;
  bool norms_differ = false;
  // |a+b| == max(|a|,|b|); guaranteed whenever norms_differ
  bool attains_max = false;
};

UltrametricResult ultrametric_check(const Rational& a, const Rational& b, const Prime& p);

}  // namespace padic_hh
