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

#include "padic_hh/operators.hpp"

#include <algorithm>
#include <cmath>

#include "padic_hh/error.hpp"

namespace padic_hh {

// ---------------------------------------------------------------------------
// Kernels


KernelSpec KernelSpec::dp(const Rational& lambda) {
  if (lambda < 0) throw Error(ErrorKind::InvalidArgument, "D^p kernels need lambda >= 0");
  KernelSpec k(KernelKind::Dp);
  k.lambda_ = lambda;
  k.lambda_.canonicalize();
  return k;
}

KernelSpec KernelSpec::custom(std::map<long, PPowerSum> coeffs) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (it->second.is_zero()) {
      it = coeffs.erase(it);
      continue;
    }
    if (compare_certified(it->second, PPowerSum()).outcome == Ordering::Less) {
      throw Error(ErrorKind::InvalidArgument, "custom kernel coefficients must be nonnegative");
    }
    ++it;
  }
  KernelSpec k(KernelKind::Custom);
  k.custom_ = std::move(coeffs);
  return k;
}

KernelSpec KernelSpec::parse(std::string_view text) {
  if (text == "hilbert") return hilbert();
  if (text == "hardy") return hardy();
  if (text == "hlp") return hlp();
  if (text.substr(0, 3) == "dp:") {
    try {
      return dp(parse_rational(text.substr(3)));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, "bad kernel '" + std::string(text) + "': " + e.what());
    }
  }
  throw Error(ErrorKind::Parse, "unknown kernel '" + std::string(text) + "' (hilbert|hardy|hlp|dp:<num/den>)");
}

const Rational& KernelSpec::lambda() const {
  if (kind_ != KernelKind::Dp && kind_ != KernelKind::HLP) {
    throw Error(ErrorKind::InvalidArgument, "kernel " + to_string() + " has no lambda");
  }
  return lambda_;
}

std::string KernelSpec::to_string() const {
  switch (kind_) {
    case KernelKind::Hilbert: return "hilbert";
    case KernelKind::Hardy: return "hardy";
    case KernelKind::HLP: return "hlp";
    case KernelKind::Dp: return "dp:" + lambda_.get_str();
    case KernelKind::Custom: return "custom";
  }
  return "?";
}

PPowerSum kernel_coefficient(const KernelSpec& K, long k, const Prime& p) {
  switch (K.kind()) {
    case KernelKind::Hilbert: {
      Rational w = 1 / (1 + rational_power(Rational(p.integer()), k));
      w.canonicalize();
      return PPowerSum(w);
    }
    case KernelKind::Hardy: return PPowerSum(k <= 0 ? 1 : 0);
    case KernelKind::HLP:
    case KernelKind::Dp: {
      const Rational half = K.lambda() / 2;
      return k <= 0 ? p.power(half * k) : p.power(-(half + 1) * k);
    }
    case KernelKind::Custom: {
      const auto it = K.custom_coeffs().find(k);
      return it == K.custom_coeffs().end() ? PPowerSum() : it->second;
    }
  }
  return PPowerSum();
}

PPowerSum kernel_value(const KernelSpec& K, const Rational& x, const Rational& y, const Prime& p) {
  if (x <= 0 || y <= 0) throw Error(ErrorKind::InvalidArgument, "kernel arguments must be positive");
  switch (K.kind()) {
    case KernelKind::Hilbert: {
      Rational w = 1 / (x + y);
      w.canonicalize();
      return PPowerSum(w);
    }
    case KernelKind::Hardy: {
      Rational w = y <= x ? 1 / x : Rational(0);
      w.canonicalize();
      return PPowerSum(w);
    }
    case KernelKind::HLP:
    case KernelKind::Dp: {
      // (x y)^{lambda/2} / max(x, y)^{lambda + 1}
      const Rational& lambda = K.lambda();
      Rational xy = x * y;
      xy.canonicalize();
      const Rational mx = std::max(x, y);
      return pow_rational(PPowerSum(xy), lambda / 2) * pow_rational(PPowerSum(mx), -(lambda + 1));
    }
    case KernelKind::Custom: {
      Rational ratio = y / x;
      ratio.canonicalize();
      const long k = valuation(ratio, p);
      if (ratio != rational_power(Rational(p.integer()), k)) {
        throw Error(ErrorKind::InvalidArgument, "custom kernels are only defined on powers of p");
      }
      return kernel_coefficient(K, k, p) * reciprocal(PPowerSum(x));
    }
  }
  return PPowerSum();
}

// ---------------------------------------------------------------------------
// Admissibility and constants

Admissibility classify_admissibility(const KernelSpec& K, const Rational& beta, const Prime& p) {
  Admissibility out;
  switch (K.kind()) {
    case KernelKind::Hilbert:
    case KernelKind::Hardy:
      out.window = "0 < 1/r + alpha < 1";
      out.admissible = beta > 0 && beta < 1;
      if (beta >= 1) {
        out.divergence_witness = p.power(beta - 1);  // k -> -inf terms, K(1, p^k) -> 1
      } else if (beta <= 0 && K.kind() == KernelKind::Hilbert) {
        out.divergence_witness = p.power(-beta);  // k -> +inf terms ~ p^{-k beta}
      }
      break;
    case KernelKind::HLP:
    case KernelKind::Dp: {
      const Rational half = K.lambda() / 2;
      out.window = "-lambda/2 < 1/r + alpha < lambda/2 + 1";
      out.admissible = -half < beta && beta < half + 1;
      if (beta >= half + 1) {
        out.divergence_witness = p.power(beta - 1 - half);
      } else if (beta <= -half) {
        out.divergence_witness = p.power(-(beta + half));
      }
      break;
    }
    case KernelKind::Custom:
      out.window = "finitely supported kernel";
      break;
  }
  return out;
}

namespace {

PPowerSum unit(const Prime& p) { return PPowerSum(p.sphere_factor()); }

[[noreturn]] void throw_inadmissible(const KernelSpec& K, const Rational& beta, const Admissibility& adm) {
  std::string msg = "kernel " + K.to_string() + " needs " + adm.window + ", got 1/r + alpha = " + format_rational(beta);
  if (adm.divergence_witness) msg += "; divergent geometric ratio " + to_string(*adm.divergence_witness);
  throw Error(ErrorKind::Inadmissible, msg);
}

// Terms t_k = K(1, p^k) p^{-k (beta - 1)} summed outward from k = 0, with
// bounds on everything omitted. Tail bounds are exact remainders for the
// closed-form kernels and geometric majorants for Hilbert.
struct SeriesPlan {
  std::vector<std::pair<long, PPowerSum>> terms;
  PPowerSum left_tail;
  PPowerSum right_tail;
  long left_n = 0;
  long right_n = 0;
};

SeriesPlan plan_series(const KernelSpec& K, const Rational& beta, const Prime& p, const Rational& tol) {
  SeriesPlan plan;
  auto term = [&](long k) { return kernel_coefficient(K, k, p) * p.power(-(beta - 1) * k); };
  if (K.kind() == KernelKind::Custom) {
    for (const auto& [k, c] : K.custom_coeffs()) plan.terms.emplace_back(k, term(k));
    return plan;
  }
  // geometric ratios bounding |t_{-j}| <= x^j and |t_k| <= y^k
  std::optional<PPowerSum> x;
  std::optional<PPowerSum> y;
  switch (K.kind()) {
    case KernelKind::Hilbert:
      x = p.power(beta - 1);
      y = p.power(-beta);
      break;
    case KernelKind::Hardy:
      x = p.power(beta - 1);
      break;
    default: {
      const Rational half = K.lambda() / 2;
      x = p.power(beta - 1 - half);
      y = p.power(-(beta + half));
      break;
    }
  }
  auto tail_after = [](const PPowerSum& ratio, long n) { return pow_int(ratio, n + 1) * inverse_one_minus(ratio); };
  const double rel = tol.get_d();
  PPowerSum sum = term(0);
  plan.terms.emplace_back(0, sum);
  for (long n = 1;; ++n) {
    const PPowerSum left = term(-n);
    plan.terms.emplace_back(-n, left);
    sum += left;
    plan.left_n = n;
    if (y) {
      const PPowerSum right = term(n);
      plan.terms.emplace_back(n, right);
      sum += right;
      plan.right_n = n;
    }
    plan.left_tail = tail_after(*x, n);
    plan.right_tail = y ? tail_after(*y, n) : PPowerSum();
    const double s = to_double(sum);
    if (to_double(plan.left_tail) + to_double(plan.right_tail) <= 0.5 * rel * s) break;
    if (n > 1000000) throw Error(ErrorKind::NotCertified, "series truncation did not reach the tolerance");
  }
  std::sort(plan.terms.begin(), plan.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return plan;
}

}  // namespace

ConstantResult constant_closed_form(const KernelSpec& K, const SpaceParams& params, const Prime& p) {
  if (!K.has_closed_form()) throw Error(ErrorKind::NoClosedForm, "kernel " + K.to_string() + " has no closed form");
  const Rational beta = params.beta();
  ConstantResult out;
  out.admissibility = classify_admissibility(K, beta, p);
  if (!out.admissible()) throw_inadmissible(K, beta, out.admissibility);
  const PPowerSum two_u = PPowerSum(2) * unit(p);
  if (K.kind() == KernelKind::Hardy) {
    out.value = Enclosure(two_u * inverse_one_minus(p.power(beta - 1)));
  } else {
    const Rational half = K.lambda() / 2;
    const PPowerSum y = p.power(-(beta + half));
    out.value = Enclosure(two_u * (inverse_one_minus(p.power(beta - 1 - half)) + y * inverse_one_minus(y)));
  }
  out.form = ConstantForm::ClosedForm;
  return out;
}

ConstantResult constant_series(const KernelSpec& K, const SpaceParams& params, const Prime& p, const Rational& tol) {
  const Rational beta = params.beta();
  ConstantResult out;
  out.form = ConstantForm::TruncatedSeries;
  out.admissibility = classify_admissibility(K, beta, p);
  if (!out.admissible()) return out;
  const SeriesPlan plan = plan_series(K, beta, p, tol);
  PPowerSum sum;
  for (const auto& [k, t] : plan.terms) sum += t;
  const PPowerSum two_u = PPowerSum(2) * unit(p);
  out.tail_bound = two_u * (plan.left_tail + plan.right_tail);
  out.value = {two_u * sum, two_u * sum + out.tail_bound};
  out.terms_used = static_cast<long>(plan.terms.size());
  return out;
}

BlockDecomposition transport_decompose(const KernelSpec& K, const Block& a, const Rational& tol) {
  const SpaceParams& params = a.params;
  const Rational beta = params.beta();
  const Prime& p = a.fn.prime();
  const Admissibility adm = classify_admissibility(K, beta, p);
  if (!adm.admissible) throw_inadmissible(K, beta, adm);
  const SeriesPlan plan = plan_series(K, beta, p, tol);
  const PPowerSum u = unit(p);
  BlockDecomposition d;
  d.construction = "transport";
  for (const auto& [k, t] : plan.terms) {
    if (t.is_zero()) continue;
    const PPowerSum lambda = u * t;
    const RadialFunction moved = dilate(a.fn, k).scaled(p.power(beta * k));
    d.pieces.push_back({lambda, certify_block(moved, a.support_n - k, params)});
    d.mass += lambda;
  }
  d.residual_bound = u * (plan.left_tail + plan.right_tail);
  return d;
}

// ---------------------------------------------------------------------------
// Operator application

namespace {

RadialFunction apply_closed(const KernelSpec& K, const RadialFunction& f) {
  const Prime& p = f.prime();
  const PPowerSum u = unit(p);
  const Rational half = K.kind() == KernelKind::Hardy ? Rational(0) : K.lambda() / 2;
  // weights: w_{-d} = u ell^d (d >= 0), w_e = u rho^e (e >= 1, absent for Hardy)
  const PPowerSum ell = p.power(-(1 + half));
  const PPowerSum ell_inv = p.power(1 + half);
  const bool has_right = K.kind() != KernelKind::Hardy;
  const PPowerSum rho = p.power(-half);
  const PPowerSum rho_inv = p.power(half);
  const GeoSequence& in = f.inner().values();
  const GeoSequence& out = f.outer().values();
  const long a = f.kmin();
  const long b = f.kmax();

  auto tail_sum = [](const GeoSequence& s, const char* side) {
    try {
      return s.tail_sum(ErrorKind::DivergentOperator);
    } catch (const Error& e) {
      throw Error(ErrorKind::DivergentOperator, std::string(side) + ": " + e.what());
    }
  };
  const PPowerSum const_in = in.is_zero() ? PPowerSum() : tail_sum(in.times_geometric(ell), "inner tail").at(1);
  const PPowerSum const_out =
      has_right && !out.is_zero() ? tail_sum(out.times_geometric(rho), "outer tail").at(1) : PPowerSum();

  auto left = [&](long m) {
    PPowerSum s = pow_int(ell, m - a) * const_in;
    for (long j = a; j <= m; ++j) s += pow_int(ell, m - j) * evaluate_at(f, j);
    return u * s;
  };
  auto right = [&](long m) {
    if (!has_right) return PPowerSum();
    PPowerSum s = pow_int(rho, b - m) * const_out;
    for (long j = m + 1; j <= b; ++j) s += pow_int(rho, j - m) * evaluate_at(f, j);
    return u * s;
  };
  std::vector<PPowerSum> values;
  for (long m = a; m <= b; ++m) values.push_back(left(m) + right(m));

  // outer region m = b + i
  GeoSequence outer = GeoSequence::geometric(left(b), ell);
  if (!out.is_zero()) {
    outer += out.times_geometric(ell_inv).prefix_sum(1).shifted(1).times_geometric(ell).scaled(u);
    if (has_right) {
      outer += tail_sum(out.times_geometric(rho), "outer tail").shifted(1).times_geometric(rho_inv).scaled(u);
    }
  }
  // inner region m = a - i
  GeoSequence inner;
  if (!in.is_zero()) inner += tail_sum(in.times_geometric(ell), "inner tail").times_geometric(ell_inv).scaled(u);
  if (has_right) {
    if (!in.is_zero()) inner += in.times_geometric(rho_inv).prefix_sum(1).times_geometric(rho).scaled(u);
    inner += GeoSequence::geometric(right(a) + u * evaluate_at(f, a), rho);
  }
  return RadialFunction(p, a, std::move(values), TailSpec::sequence(std::move(inner)),
                        TailSpec::sequence(std::move(outer)));
}

PPowerSum weight(const KernelSpec& K, long k, const Prime& p) {
  return kernel_coefficient(K, k, p) * haar_measure(k, Shape::Sphere, p);
}

RadialFunction apply_custom(const KernelSpec& K, const RadialFunction& f) {
  const Prime& p = f.prime();
  const auto& cs = K.custom_coeffs();
  if (cs.empty()) return RadialFunction::zero(p);
  const long reach = std::max(std::labs(cs.begin()->first), std::labs(cs.rbegin()->first));
  const long lo = f.kmin() - reach;
  const long hi = f.kmax() + reach;
  std::vector<PPowerSum> values;
  for (long m = lo; m <= hi; ++m) {
    PPowerSum s;
    for (const auto& [k, c] : cs) s += weight(K, k, p) * evaluate_at(f, m + k);
    values.push_back(s);
  }
  // beyond the widened window every argument m + k lies in a tail of f
  GeoSequence inner;
  GeoSequence outer;
  for (const auto& [k, c] : cs) {
    const PPowerSum w = weight(K, k, p);
    inner += f.inner().values().shifted(reach - k).scaled(w);
    outer += f.outer().values().shifted(reach + k).scaled(w);
  }
  return RadialFunction(p, lo, std::move(values), TailSpec::sequence(std::move(inner)),
                        TailSpec::sequence(std::move(outer)));
}

RadialFunction apply_hilbert(const KernelSpec& K, const RadialFunction& f, long margin) {
  if (!f.compactly_supported()) {
    throw Error(ErrorKind::NotSupported, "the Hilbert operator is applied to compactly supported functions only");
  }
  if (margin < 1) throw Error(ErrorKind::InvalidArgument, "margin must be positive");
  const Prime& p = f.prime();
  const PPowerSum u = unit(p);
  const long lo = f.kmin() - margin;
  const long hi = f.kmax() + margin;
  std::vector<PPowerSum> values;
  for (long m = lo; m <= hi; ++m) {
    PPowerSum s;
    for (long j = f.kmin(); j <= f.kmax(); ++j) s += weight(K, j - m, p) * evaluate_at(f, j);
    values.push_back(s);
  }
  // Beyond the margin |k| >= margin + 1, so 1 / (1 + p^{-|k|}) lies in [shrink, 1].
  const Rational big = rational_power(Rational(p.integer()), margin + 1);
  Rational shrink = big / (big + 1);
  shrink.canonicalize();
  const PPowerSum s(shrink);
  PPowerSum mass;     // u sum_j f(j)
  PPowerSum moment;   // u sum_j p^{j - hi} f(j)
  for (long j = f.kmin(); j <= f.kmax(); ++j) {
    mass += u * evaluate_at(f, j);
    moment += u * p.power(j - hi) * evaluate_at(f, j);
  }
  const PPowerSum one(1);
  const PPowerSum inv_p = p.power(-1);
  TailSpec inner = TailSpec::envelope(GeoSequence::geometric(mass * s, one), GeoSequence::geometric(mass, one));
  TailSpec outer = TailSpec::envelope(GeoSequence::geometric(moment * s, inv_p), GeoSequence::geometric(moment, inv_p));
  return RadialFunction(p, lo, std::move(values), std::move(inner), std::move(outer));
}

}  // namespace

RadialFunction apply_operator(const KernelSpec& K, const RadialFunction& f, const ApplyOptions& opts) {
  if (f.is_zero()) return RadialFunction::zero(f.prime());
  if (!f.is_exact()) throw Error(ErrorKind::NotExact, "operators act on exactly represented functions");
  switch (K.kind()) {
    case KernelKind::Hilbert: return apply_hilbert(K, f, opts.margin);
    case KernelKind::Custom: return apply_custom(K, f);
    default: return apply_closed(K, f);
  }
}

}  // namespace padic_hh
