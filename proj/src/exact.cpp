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

#include "padic_hh/exact.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "padic_hh/error.hpp"
#include "padic_hh/interval.hpp"

namespace padic_hh {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MultiTermPower: return "MultiTermPower";
    case ErrorKind::UnfactorableCoefficient: return "UnfactorableCoefficient";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::DivergentNorm: return "DivergentNorm";
    case ErrorKind::DivergentMass: return "DivergentMass";
    case ErrorKind::DivergentOperator: return "DivergentOperator";
    case ErrorKind::UnboundedSup: return "UnboundedSup";
    case ErrorKind::NotCertified: return "NotCertified";
    case ErrorKind::NotSupported: return "NotSupported";
    case ErrorKind::NormTooLarge: return "NormTooLarge";
    case ErrorKind::NoClosedForm: return "NoClosedForm";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Rationals

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw Error(ErrorKind::Parse, "not a rational: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Integer d{std::string(den)};
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(n), d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational rational_power(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0) {
    if (e < 0) throw Error(ErrorKind::InvalidArgument, "zero to a negative power");
    return Rational(0);
  }
  const unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), m);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), m);
  Rational r = e > 0 ? Rational(n, d) : Rational(d, n);
  r.canonicalize();
  return r;
}

std::map<Integer, long> factorize(const Integer& n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "factorize needs a positive integer");
  std::map<Integer, long> out;
  Integer rem = n;
  auto strip = [&](unsigned long d) {
    long count = 0;
    while (mpz_divisible_ui_p(rem.get_mpz_t(), d)) {
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), d);
      ++count;
    }
    if (count > 0) out[Integer(d)] += count;
  };
  auto prime_rest = [&] { return rem > 1 && mpz_probab_prime_p(rem.get_mpz_t(), 40) != 0; };
  strip(2);
  constexpr unsigned long kTrialLimit = 1ul << 20;
  bool rest_is_prime = prime_rest();
  for (unsigned long d = 3; d < kTrialLimit && rem > 1 && !rest_is_prime; d += 2) {
    if (mpz_cmp_ui(rem.get_mpz_t(), d * d) < 0) break;
    if (!mpz_divisible_ui_p(rem.get_mpz_t(), d)) continue;
    strip(d);
    rest_is_prime = prime_rest();
  }
  if (rem > 1) {
    if (mpz_probab_prime_p(rem.get_mpz_t(), 40) == 0) {
      throw Error(ErrorKind::UnfactorableCoefficient, "cannot factor " + rem.get_str());
    }
    out[rem] += 1;
  }
  return out;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (int c = cmp(ia->first, ib->first); c != 0) return c < 0;
    if (int c = cmp(ia->second, ib->second); c != 0) return c < 0;
  }
  return ia == a.end() && ib != b.end();
}

// ---------------------------------------------------------------------------
// PPowerSum

namespace {

// Folds integral parts of prime exponents into the coefficient.
std::pair<Monomial, Rational> normalize_term(Rational coef, const std::map<Integer, Rational, IntegerLess>& exps) {
  Monomial mono;
  for (const auto& [prime, raw_e] : exps) {
    Rational e = raw_e;
    e.canonicalize();
    const Integer fl = floor_of(e);
    const Rational frac = e - Rational(fl);
    if (fl != 0) coef *= rational_power(Rational(prime), fl.get_si());
    if (frac != 0) mono.emplace(prime, frac);
  }
  return {std::move(mono), std::move(coef)};
}

}  // namespace

PPowerSum::PPowerSum(const Rational& q) { add_term(Monomial{}, q); }

void PPowerSum::add_term(const Monomial& m, const Rational& coef) {
  if (coef == 0) return;
  Rational c = coef;
  c.canonicalize();
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PPowerSum PPowerSum::from_terms(const std::vector<RawTerm>& terms) {
  PPowerSum out;
  for (const RawTerm& t : terms) {
    if (t.coef == 0) continue;
    std::map<Integer, Rational, IntegerLess> exps;
    for (const auto& [base, e] : t.factors) {
      if (base < 2) throw Error(ErrorKind::InvalidArgument, "power base must be >= 2");
      for (const auto& [prime, mult] : factorize(base)) exps[prime] += e * mult;
    }
    auto [mono, coef] = normalize_term(t.coef, exps);
    out.add_term(mono, coef);
  }
  return out;
}

PPowerSum PPowerSum::from_prime_exponents(const Rational& coef,
                                           const std::map<Integer, Rational, IntegerLess>& exps) {
  PPowerSum out;
  auto [mono, c] = normalize_term(coef, exps);
  out.add_term(mono, c);
  return out;
}

PPowerSum PPowerSum::power(const Integer& base, const Rational& exp, const Rational& coef) {
  return from_terms({RawTerm{coef, {{base, exp}}}});
}

std::optional<Rational> PPowerSum::to_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

std::optional<int> PPowerSum::uniform_sign() const {
  if (terms_.empty()) return 0;
  const int s = sgn(terms_.begin()->second);
  for (const auto& [m, c] : terms_) {
    if (sgn(c) != s) return std::nullopt;
  }
  return s;
}

PPowerSum& PPowerSum::operator+=(const PPowerSum& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PPowerSum& PPowerSum::operator-=(const PPowerSum& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PPowerSum& PPowerSum::operator*=(const PPowerSum& o) {
  PPowerSum out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      std::map<Integer, Rational, IntegerLess> exps(ma.begin(), ma.end());
      for (const auto& [prime, e] : mb) exps[prime] += e;
      auto [mono, coef] = normalize_term(ca * cb, exps);
      out.add_term(mono, coef);
    }
  }
  *this = std::move(out);
  return *this;
}

PPowerSum PPowerSum::operator-() const {
  PPowerSum out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const PPowerSum& a, const PPowerSum& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
    MonomialLess less;
    if (less(ia->first, ib->first) || less(ib->first, ia->first)) return false;
    if (ia->second != ib->second) return false;
  }
  return true;
}

bool structural_less(const PPowerSum& a, const PPowerSum& b) {
  MonomialLess less;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (less(ia->first, ib->first)) return true;
    if (less(ib->first, ia->first)) return false;
    if (int c = cmp(ia->second, ib->second); c != 0) return c < 0;
  }
  return ia == a.terms_.end() && ib != b.terms_.end();
}

PPowerSum PPowerSum::scaled(const Rational& q) const {
  if (q == 0) return PPowerSum();
  PPowerSum out(*this);
  for (auto& [m, c] : out.terms_) c *= q;
  return out;
}

PPowerSum canonicalize(const std::vector<RawTerm>& terms) { return PPowerSum::from_terms(terms); }

PPowerSum arith(const PPowerSum& x, const PPowerSum& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
  }
  return {};
}

PPowerSum pow_int(const PPowerSum& x, long e) {
  if (e == 0) return PPowerSum(1);
  if (x.is_single_term()) {
    const auto& [mono, coef] = *x.terms().begin();
    std::map<Integer, Rational, IntegerLess> exps;
    for (const auto& [prime, pe] : mono) exps[prime] = pe * e;
    return PPowerSum::from_prime_exponents(rational_power(coef, e), exps);
  }
  if (x.is_zero()) {
    if (e < 0) throw Error(ErrorKind::InvalidArgument, "zero to a negative power");
    return PPowerSum();
  }
  if (e < 0) throw Error(ErrorKind::MultiTermPower, "negative power of a multi-term sum");
  PPowerSum out(1);
  for (long i = 0; i < e; ++i) out *= x;
  return out;
}

PPowerSum pow_rational(const PPowerSum& x, const Rational& e) {
  if (x.is_zero()) {
    if (e > 0) return PPowerSum();
    throw Error(ErrorKind::InvalidArgument, "zero to a non-positive power");
  }
  if (!x.is_single_term()) throw Error(ErrorKind::MultiTermPower, "fractional power of a multi-term sum");
  const auto& [mono, coef] = *x.terms().begin();
  if (coef < 0) throw Error(ErrorKind::InvalidArgument, "fractional power of a negative term");
  if (is_integer(e)) return pow_int(x, e.get_num().get_si());
  std::map<Integer, Rational, IntegerLess> exps;
  for (const auto& [prime, m] : factorize(coef.get_num())) exps[prime] += Rational(m);
  for (const auto& [prime, m] : factorize(coef.get_den())) exps[prime] -= Rational(m);
  for (const auto& [prime, pe] : mono) exps[prime] += pe;
  for (auto& [prime, pe] : exps) pe *= e;
  return PPowerSum::from_prime_exponents(Rational(1), exps);
}

PPowerSum reciprocal(const PPowerSum& x) {
  if (!x.is_single_term()) throw Error(ErrorKind::MultiTermPower, "reciprocal of a multi-term sum");
  return pow_int(x, -1);
}

namespace {

long exponent_lcm(const PPowerSum& x) {
  long d = 1;
  for (const auto& [prime, e] : x.terms().begin()->first) d = std::lcm(d, e.get_den().get_si());
  return d;
}

void require_positive_single(const PPowerSum& x, const char* what) {
  if (!x.is_single_term() || x.terms().begin()->second <= 0) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs a single positive term");
  }
}

}  // namespace

int compare_with_one(const PPowerSum& x) {
  require_positive_single(x, "compare_with_one");
  const long d = exponent_lcm(x);
  const Rational xd = *pow_int(x, d).to_rational();
  return cmp(xd, Rational(1));
}

PPowerSum inverse_one_minus(const PPowerSum& x) {
  require_positive_single(x, "inverse_one_minus");
  const long d = exponent_lcm(x);
  const Rational xd = *pow_int(x, d).to_rational();
  if (xd == 1) throw Error(ErrorKind::InvalidArgument, "1/(1-x) at x = 1");
  PPowerSum num;
  PPowerSum xi(1);
  for (long i = 0; i < d; ++i) {
    num += xi;
    xi *= x;
  }
  return num.scaled(1 / (1 - xd));
}

// ---------------------------------------------------------------------------
// Comparison and rendering

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

Comparison compare_certified(const PPowerSum& x, const PPowerSum& y, int max_bits) {
  const PPowerSum d = x - y;
  if (auto s = d.uniform_sign()) {
    if (*s == 0) return {Ordering::Equal, 0};
    return {*s > 0 ? Ordering::Greater : Ordering::Less, 0};
  }
  for (int bits = 64; bits <= max_bits; bits *= 2) {
    const Interval iv = enclose(d, bits);
    if (iv.positive()) return {Ordering::Greater, bits};
    if (iv.negative()) return {Ordering::Less, bits};
  }
  throw Error(ErrorKind::PrecisionExhausted,
              "sign of " + to_string(d) + " undetermined at " + std::to_string(max_bits) + " bits");
}

namespace {

// Nearest integer to q * 10^digits (ties away from zero) rendered as a
// fixed-point decimal.
std::string fixed_point(const Rational& q, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(q) * Rational(scale);
  Integer n = floor_of(scaled + Rational(1, 2));
  std::string s = n.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  if (digits == 0) s.pop_back();
  if (q < 0 && n != 0) s.insert(0, "-");
  return s;
}

}  // namespace

std::string to_decimal(const PPowerSum& x, int digits) {
  if (digits < 1) throw Error(ErrorKind::InvalidArgument, "to_decimal needs digits >= 1");
  const std::string radius = "1e-" + std::to_string(digits);
  if (auto q = x.to_rational()) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const bool exact = is_integer(*q * Rational(scale));
    return fixed_point(*q, digits) + " ± " + (exact ? "0" : radius);
  }
  Rational bound(1, 4);
  for (int i = 0; i < digits; ++i) bound /= 10;
  for (int bits = 4 * digits + 64;; bits *= 2) {
    const Interval iv = enclose(x, bits);
    const Rational lo = iv.lo_rational();
    const Rational hi = iv.hi_rational();
    if (hi - lo < bound) return fixed_point((lo + hi) / 2, digits) + " ± " + radius;
  }
}

std::string to_decimal_digits(const PPowerSum& x, int digits) {
  const std::string full = to_decimal(x, digits);
  return full.substr(0, full.find(' '));
}

double to_double(const PPowerSum& x) { return enclose(x, 128).mid(); }

std::string to_string(const PPowerSum& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coef] : x.terms()) {
    if (!first) os << (coef < 0 ? " - " : " + ");
    else if (coef < 0) os << "-";
    first = false;
    const Rational mag = abs(coef);
    if (mono.empty() || mag != 1) {
      os << mag.get_str();
      if (!mono.empty()) os << "*";
    }
    bool first_factor = true;
    for (const auto& [prime, e] : mono) {
      if (!first_factor) os << "*";
      first_factor = false;
      os << prime.get_str() << "^(" << e.get_str() << ")";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Enclosures

const PPowerSum& Enclosure::value() const {
  if (!exact()) throw Error(ErrorKind::NotExact, "enclosure has positive width");
  return lo;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) { return {a.lo * b.lo, a.hi * b.hi}; }

namespace {

constexpr int kEnclosureBits = 320;

Interval hull_of(const Enclosure& x, int bits) {
  Interval lo = enclose(x.lo, bits);
  Interval hi = enclose(x.hi, bits);
  Interval r(bits);
  mpfr_set(r.lo(), lo.lo(), MPFR_RNDD);
  mpfr_set(r.hi(), hi.hi(), MPFR_RNDU);
  if (mpfr_sgn(r.lo()) < 0 && x.lo.uniform_sign().value_or(-1) >= 0) mpfr_set_zero(r.lo(), 1);
  return r;
}

}  // namespace

Enclosure pow_enclosure(const Enclosure& x, const Rational& e) {
  if (x.exact()) {
    if (x.lo.is_zero() || x.lo.is_single_term()) {
      try {
        return Enclosure(pow_rational(x.lo, e));
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::UnfactorableCoefficient) throw;
      }
    }
    if (is_integer(e) && e >= 0) return Enclosure(pow_int(x.lo, e.get_num().get_si()));
  }
  return to_enclosure(pow_interval(hull_of(x, kEnclosureBits), e));
}

Enclosure divide_enclosure(const Enclosure& a, const Enclosure& b) {
  if (b.exact() && b.lo.is_single_term()) {
    const PPowerSum inv = reciprocal(b.lo);
    return {a.lo * inv, a.hi * inv};
  }
  return to_enclosure(hull_of(a, kEnclosureBits) / hull_of(b, kEnclosureBits));
}

Enclosure numeric_enclosure(const PPowerSum& x, int bits) { return to_enclosure(enclose(x, bits)); }

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Holds: return "Holds";
    case Decision::Fails: return "Fails";
    case Decision::Undecided: return "Undecided";
  }
  return "?";
}

BoundCheck check_le(const Enclosure& lhs, const Enclosure& rhs, int max_bits) {
  try {
    const Comparison upper = compare_certified(lhs.hi, rhs.lo, max_bits);
    if (upper.outcome != Ordering::Greater) return {Decision::Holds, upper.precision_used};
    const Comparison lower = compare_certified(lhs.lo, rhs.hi, max_bits);
    if (lower.outcome == Ordering::Greater) return {Decision::Fails, lower.precision_used};
    return {Decision::Undecided, std::max(upper.precision_used, lower.precision_used)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PrecisionExhausted) throw;
    return {Decision::Undecided, max_bits};
  }
}

}  // namespace padic_hh
