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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace padic_hh {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "n", "-n" and "n/d"; the result is canonical.
Rational parse_rational(std::string_view text);
// Always "num/den", also for integers ("3/1").
std::string format_rational(const Rational& q);

bool is_integer(const Rational& q);
Integer floor_of(const Rational& q);
// q^e for integral e (q != 0 when e < 0).
Rational rational_power(const Rational& q, long e);

// Prime factorisation of a positive integer. Trial division is followed by a
// strong probable-prime test on the remaining cofactor; throws
// UnfactorableCoefficient when a composite cofactor survives.
std::map<Integer, long> factorize(const Integer& n);

struct IntegerLess {
  bool operator()(const Integer& a, const Integer& b) const { return cmp(a, b) < 0; }
};

// Product of primes raised to exponents strictly inside (0, 1).
using Monomial = std::map<Integer, Rational, IntegerLess>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Uncanonicalised term: coef * prod base^exp with arbitrary bases >= 2.
struct RawTerm {
  Rational coef;
  std::vector<std::pair<Integer, Rational>> factors;
};

/// Finite signed sum of rational multiples of rational powers of primes.
///
/// The representation is kept canonical at all times: each term is
/// `coef * prod q^e` with `0 < e < 1`, integral parts of exponents folded
/// into the rational coefficient, no zero coefficients and no two terms with
/// the same monomial. Two values are therefore equal exactly when their term
/// maps are equal.
class PPowerSum {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialLess>;

  PPowerSum() = default;
  explicit PPowerSum(const Rational& q);
  explicit PPowerSum(long n) : PPowerSum(Rational(n)) {}

  static PPowerSum from_terms(const std::vector<RawTerm>& terms);
  // coef * base^exp
  static PPowerSum power(const Integer& base, const Rational& exp, const Rational& coef = 1);
  // coef * exp(mono) with prime keys and a raw (not yet folded) exponent map.
  static PPowerSum from_prime_exponents(const Rational& coef, const std::map<Integer, Rational, IntegerLess>& exps);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_single_term() const { return terms_.size() == 1; }
  std::optional<Rational> to_rational() const;
  // +1 / -1 when all coefficients share a sign, 0 for zero, nullopt otherwise.
  std::optional<int> uniform_sign() const;

  PPowerSum& operator+=(const PPowerSum& o);
  PPowerSum& operator-=(const PPowerSum& o);
  PPowerSum& operator*=(const PPowerSum& o);
  PPowerSum operator-() const;

  friend PPowerSum operator+(PPowerSum a, const PPowerSum& b) { return a += b; }
  friend PPowerSum operator-(PPowerSum a, const PPowerSum& b) { return a -= b; }
  friend PPowerSum operator*(PPowerSum a, const PPowerSum& b) { return a *= b; }
  friend bool operator==(const PPowerSum& a, const PPowerSum& b);
  friend bool operator!=(const PPowerSum& a, const PPowerSum& b) { return !(a == b); }

  PPowerSum scaled(const Rational& q) const;

  // Total order on canonical forms (structural, not numeric).
  friend bool structural_less(const PPowerSum& a, const PPowerSum& b);

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

enum class ArithOp { Add, Sub, Mul };

PPowerSum canonicalize(const std::vector<RawTerm>& terms);
PPowerSum arith(const PPowerSum& x, const PPowerSum& y, ArithOp op);

// Single nonnegative term raised to a rational power. Throws MultiTermPower
// for genuine sums.
PPowerSum pow_rational(const PPowerSum& x, const Rational& e);
PPowerSum pow_int(const PPowerSum& x, long e);
PPowerSum reciprocal(const PPowerSum& x);
// 1/(1-x) for a single positive term x != 1, rationalised through x^D.
PPowerSum inverse_one_minus(const PPowerSum& x);
// Exact three-way comparison of a single positive term with 1.
int compare_with_one(const PPowerSum& x);

enum class Ordering { Less, Equal, Greater };
std::string_view to_string(Ordering o);

struct Comparison {
  Ordering outcome = Ordering::Equal;
  int precision_used = 0;
};

inline constexpr int kDefaultMaxBits = 4096;
inline constexpr int kDefaultDigits = 12;

Comparison compare_certified(const PPowerSum& x, const PPowerSum& y, int max_bits = kDefaultMaxBits);
inline bool certified_le(const PPowerSum& x, const PPowerSum& y) {
  return compare_certified(x, y).outcome != Ordering::Greater;
}

// "mid ± rad" with |x - mid| <= rad < 10^-digits.
std::string to_decimal(const PPowerSum& x, int digits = kDefaultDigits);
// The same digits without the " ± radius" suffix, for report columns.
std::string to_decimal_digits(const PPowerSum& x, int digits = kDefaultDigits);
double to_double(const PPowerSum& x);
std::string to_string(const PPowerSum& x);

/// Two-sided certified bound lo <= value <= hi. Exact values have lo == hi.
struct Enclosure {
  PPowerSum lo;
  PPowerSum hi;

  Enclosure() = default;
  explicit Enclosure(PPowerSum exact_value) : lo(exact_value), hi(std::move(exact_value)) {}
  Enclosure(PPowerSum l, PPowerSum h) : lo(std::move(l)), hi(std::move(h)) {}

  bool exact() const { return lo == hi; }
  const PPowerSum& value() const;  // throws NotExact unless exact()

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  // Both operands nonnegative.
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend bool operator==(const Enclosure& a, const Enclosure& b) { return a.lo == b.lo && a.hi == b.hi; }
};

// Nonnegative enclosure raised to a rational power; exact when the input is
// an exact single term.
Enclosure pow_enclosure(const Enclosure& x, const Rational& e);
// a / b for nonnegative a and positive b.
Enclosure divide_enclosure(const Enclosure& a, const Enclosure& b);
// Tightest dyadic enclosure of an exact value at the given precision.
Enclosure numeric_enclosure(const PPowerSum& x, int bits = 256);

enum class Decision { Holds, Fails, Undecided };
std::string_view to_string(Decision d);

struct BoundCheck {
  Decision decision = Decision::Undecided;
  int precision_used = 0;
};

// Decides lhs <= rhs: Holds when lhs.hi <= rhs.lo, Fails when lhs.lo > rhs.hi.
BoundCheck check_le(const Enclosure& lhs, const Enclosure& rhs, int max_bits = kDefaultMaxBits);

}  // namespace padic_hh
