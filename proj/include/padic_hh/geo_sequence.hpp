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

#include <map>
#include <optional>
#include <vector>

#include "padic_hh/error.hpp"
#include "padic_hh/exact.hpp"

namespace padic_hh {

struct StructuralLess {
  bool operator()(const PPowerSum& a, const PPowerSum& b) const { return structural_less(a, b); }
};

/// Polynomial-times-geometric sequence s(i) = sum_t P_t(i) * x_t^i.
///
/// Ratios x_t are single positive terms; polynomial coefficients are exact
/// sums. Closed under addition, products, index shifts and indefinite
/// summation, which is all the tail algebra of radial functions needs.
class GeoSequence {
 public:
  using Poly = std::vector<PPowerSum>;  // coefficient of i^d at index d
  using TermMap = std::map<PPowerSum, Poly, StructuralLess>;

  GeoSequence() = default;
  static GeoSequence geometric(const PPowerSum& coef, const PPowerSum& ratio);
  static GeoSequence term(Poly poly, const PPowerSum& ratio);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;

  PPowerSum at(long i) const;

  GeoSequence& operator+=(const GeoSequence& o);
  friend GeoSequence operator+(GeoSequence a, const GeoSequence& b) { return a += b; }
  friend GeoSequence operator*(const GeoSequence& a, const GeoSequence& b);
  friend bool operator==(const GeoSequence& a, const GeoSequence& b);
  friend bool operator!=(const GeoSequence& a, const GeoSequence& b) { return !(a == b); }

  GeoSequence scaled(const PPowerSum& c) const;
  // i -> s(i + offset)
  GeoSequence shifted(long offset) const;
  // i -> s(i) * y^i
  GeoSequence times_geometric(const PPowerSum& y) const;

  // First ratio >= 1 carrying a nonzero polynomial, if any.
  std::optional<PPowerSum> divergence_witness() const;
  bool summable() const { return !divergence_witness().has_value(); }

  // T(m) = sum_{i >= m} s(i); throws `on_divergence` when not summable.
  GeoSequence tail_sum(ErrorKind on_divergence) const;
  PPowerSum sum_from(long m, ErrorKind on_divergence) const { return tail_sum(on_divergence).at(m); }
  // S(m) = sum_{start <= i < m} s(i), valid for m >= start.
  GeoSequence prefix_sum(long start) const;

 private:
  void add(const PPowerSum& ratio, const Poly& poly);

  TermMap terms_;
};

// Dyadic upper bound on sup_{i >= from} |s(i)| (from >= 1), or nullopt when
// some ratio is >= 1 or the majorant built at `from` does not yet contract.
std::optional<PPowerSum> abs_sup_bound(const GeoSequence& s, long from);

// Q with Q(i) - x Q(i+1) = P(i); degree grows by one when x == 1.
GeoSequence::Poly indefinite_sum_poly(const GeoSequence::Poly& p, const PPowerSum& x);

}  // namespace padic_hh
