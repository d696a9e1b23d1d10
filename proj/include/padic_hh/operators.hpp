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
#include <string>
#include <string_view>

#include "padic_hh/spaces.hpp"

namespace padic_hh {

enum class KernelKind { Hilbert, Hardy, HLP, Dp, Custom };

/// Kernel of a Hardy-Hilbert-type operator, homogeneous of degree -1.
class KernelSpec {
 public:
  static KernelSpec hilbert() { return KernelSpec(KernelKind::Hilbert); }
  static KernelSpec hardy() { return KernelSpec(KernelKind::Hardy); }
  static KernelSpec hlp() { return KernelSpec(KernelKind::HLP); }
  static KernelSpec dp(const Rational& lambda);
  // K(1, p^k) = coeffs[k] on a finite support, 0 elsewhere.
  static KernelSpec custom(std::map<long, PPowerSum> coeffs);
  // "hilbert" | "hardy" | "hlp" | "dp:<num/den>"
  static KernelSpec parse(std::string_view text);

  KernelKind kind() const { return kind_; }
  // lambda of the D^p family; HLP reports 0 and Hardy/Hilbert throw.
  const Rational& lambda() const;
  const std::map<long, PPowerSum>& custom_coeffs() const { return custom_; }
  bool has_closed_form() const { return kind_ == KernelKind::Hardy || kind_ == KernelKind::HLP || kind_ == KernelKind::Dp; }
  std::string to_string() const;

  friend bool operator==(const KernelSpec& a, const KernelSpec& b) {
    return a.kind_ == b.kind_ && a.lambda_ == b.lambda_ && a.custom_ == b.custom_;
  }

 private:
  explicit KernelSpec(KernelKind kind) : kind_(kind) {}
  KernelKind kind_;
  Rational lambda_;
  std::map<long, PPowerSum> custom_;
};

// K(1, p^k).
PPowerSum kernel_coefficient(const KernelSpec& K, long k, const Prime& p);

// K(x, y) from the two-argument formula, for positive rationals x, y
// (Custom kernels are extended from K(1, .) by homogeneity).
PPowerSum kernel_value(const KernelSpec& K, const Rational& x, const Rational& y, const Prime& p);

struct ApplyOptions {
  long margin = 16;  // extra exact spheres on each side for Hilbert output
};

// (T f)(S^m) = sum_k K(1, p^k) |S^k| f(S^{m+k}).
RadialFunction apply_operator(const KernelSpec& K, const RadialFunction& f, const ApplyOptions& opts = {});

/// Admissibility of (K, beta) against the kernel's convergence window.
struct Admissibility {
  bool admissible = true;
  std::string window;                           // e.g. "0 < 1/r + alpha < 1"
  std::optional<PPowerSum> divergence_witness;  // geometric ratio >= 1 of a non-decaying side
};

Admissibility classify_admissibility(const KernelSpec& K, const Rational& beta, const Prime& p);

enum class ConstantForm { ClosedForm, TruncatedSeries };

struct ConstantResult {
  Enclosure value;
  ConstantForm form = ConstantForm::ClosedForm;
  long terms_used = 0;
  PPowerSum tail_bound;
  Admissibility admissibility;
  bool admissible() const { return admissibility.admissible; }
};

// 2 (1 - 1/p) sum_k K(1, p^k) p^{-k (1/r + alpha - 1)} by geometric closed forms.
ConstantResult constant_closed_form(const KernelSpec& K, const SpaceParams& params, const Prime& p);

inline const Rational kDefaultTolerance{1, 1000000000000L};

// Certified truncation of the same series with rigorous tail majorants.
ConstantResult constant_series(const KernelSpec& K, const SpaceParams& params, const Prime& p,
                               const Rational& tol = kDefaultTolerance);

// T a = sum_k lambda_k b_k with b_k = p^{k beta} D_{p^k} a a block on B^{n-k}
// and lambda_k = (1 - 1/p) K(1, p^k) p^{k (1 - beta)}.
BlockDecomposition transport_decompose(const KernelSpec& K, const Block& a, const Rational& tol = kDefaultTolerance);

}  // namespace padic_hh
