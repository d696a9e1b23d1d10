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

#include "padic_hh/padic.hpp"

#include "padic_hh/error.hpp"

namespace padic_hh {

Prime::Prime(long p) : p_(p) {
  bool prime = p >= 2;
  for (long d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
  if (!prime) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not a prime");
}

PPowerSum Prime::power(const Rational& e, const Rational& coef) const {
  return PPowerSum::from_prime_exponents(coef, {{Integer(p_), e}});
}

namespace {

long count_factor(Integer n, long p) {
  long v = 0;
  if (n < 0) n = -n;
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

}  // namespace

long valuation(const Rational& x, const Prime& p) {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  return count_factor(x.get_num(), p.value()) - count_factor(x.get_den(), p.value());
}

PPowerSum padic_norm(const Rational& x, const Prime& p) {
  if (x == 0) return PPowerSum();
  return p.power(-valuation(x, p));
}

PPowerSum haar_measure(long k, Shape shape, const Prime& p) {
  if (shape == Shape::Ball) return p.power(k);
  return p.power(Rational(k), p.sphere_factor());
}

UltrametricResult ultrametric_check(const Rational& a, const Rational& b, const Prime& p) {
  UltrametricResult r;
  const PPowerSum na = padic_norm(a, p);
  const PPowerSum nb = padic_norm(b, p);
  r.sum_norm = padic_norm(a + b, p);
  r.max_norm = compare_certified(na, nb).outcome == Ordering::Less ? nb : na;
  r.norms_differ = na != nb;
  r.inequality_holds = compare_certified(r.sum_norm, r.max_norm).outcome != Ordering::Greater;
  r.attains_max = r.sum_norm == r.max_norm;
  return r;
}

}  // namespace padic_hh
