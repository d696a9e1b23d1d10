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

#include "padic_hh/json_io.hpp"

#include "padic_hh/error.hpp"

namespace padic_hh {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error(ErrorKind::Parse, "expected a rational as \"num/den\", got " + j.dump());
  return parse_rational(j.get<std::string>());
}

Json terms_to_json(const GeoSequence& s) {
  Json out = Json::array();
  for (const auto& [ratio, poly] : s.terms()) {
    Json p = Json::array();
    for (const auto& c : poly) p.push_back(to_json(c));
    out.push_back({{"ratio", to_json(ratio)}, {"poly", p}});
  }
  return out;
}

GeoSequence terms_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "sequence terms must be an array");
  GeoSequence s;
  for (const auto& t : j) {
    GeoSequence::Poly poly;
    for (const auto& c : t.at("poly")) poly.push_back(ppower_from_json(c));
    s += GeoSequence::term(poly, ppower_from_json(t.at("ratio")));
  }
  return s;
}

Json tail_to_json(const TailSpec& tail, const PPowerSum& edge) {
  switch (tail.kind(edge)) {
    case TailKind::Zero: return {{"kind", "zero"}};
    case TailKind::Geometric: return {{"kind", "geometric"}, {"ratio", to_json(tail.values().terms().begin()->first)}};
    case TailKind::AffineGeometric: {
      const auto& [ratio, poly] = *tail.values().terms().begin();
      return {{"kind", "affine_geometric"}, {"slope", to_json(poly[1])}, {"ratio", to_json(ratio)}};
    }
    case TailKind::Mixture: return {{"kind", "mixture"}, {"terms", terms_to_json(tail.values())}};
    case TailKind::Envelope:
      return {{"kind", "envelope"}, {"lower", terms_to_json(tail.lower())}, {"upper", terms_to_json(tail.upper())}};
  }
  return {};
}

TailSpec tail_from_json(const Json& j, const PPowerSum& edge) {
  const std::string kind = j.at("kind").get<std::string>();
  const PPowerSum base = j.contains("base") ? ppower_from_json(j.at("base")) : edge;
  if (kind == "zero") return TailSpec::zero();
  if (kind == "geometric") return TailSpec::geometric(base, ppower_from_json(j.at("ratio")));
  if (kind == "affine_geometric") {
    return TailSpec::affine_geometric(base, ppower_from_json(j.at("slope")), ppower_from_json(j.at("ratio")));
  }
  if (kind == "mixture") return TailSpec::sequence(terms_from_json(j.at("terms")));
  if (kind == "envelope") return TailSpec::envelope(terms_from_json(j.at("lower")), terms_from_json(j.at("upper")));
  throw Error(ErrorKind::Parse, "unknown tail kind '" + kind + "'");
}

// Wraps nlohmann's exceptions (missing keys, wrong types) as Parse errors.
template <typename F>
auto parsing(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const PPowerSum& x) {
  Json out = Json::array();
  for (const auto& [mono, coef] : x.terms()) {
    Json exps = Json::object();
    for (const auto& [prime, e] : mono) exps[prime.get_str()] = format_rational(e);
    out.push_back({{"coef", format_rational(coef)}, {"exps", exps}});
  }
  return out;
}

PPowerSum ppower_from_json(const Json& j) {
  return parsing("p-power sum", [&] {
    if (!j.is_array()) throw Error(ErrorKind::Parse, "a p-power sum must be an array of terms");
    std::vector<RawTerm> terms;
    for (const auto& t : j) {
      RawTerm raw{rational_from_json(t.at("coef")), {}};
      if (t.contains("exps")) {
        for (const auto& [base, e] : t.at("exps").items()) {
          Integer b;
          if (b.set_str(base, 10) != 0 || b < 2) throw Error(ErrorKind::Parse, "bad exponent base '" + base + "'");
          raw.factors.emplace_back(b, rational_from_json(e));
        }
      }
      terms.push_back(std::move(raw));
    }
    return PPowerSum::from_terms(terms);
  });
}

Json to_json(const Enclosure& e) {
  Json out{{"lo", to_json(e.lo)}, {"lo_dec", to_decimal_digits(e.lo)}};
  out["hi"] = to_json(e.hi);
  out["hi_dec"] = to_decimal_digits(e.hi);
  out["exact"] = e.exact();
  return out;
}

Json to_json(const RadialFunction& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
  return {{"prime", f.prime().value()},
          {"window", {{"kmin", f.kmin()}, {"kmax", f.kmax()}}},
          {"coeffs", coeffs},
          {"inner_tail", tail_to_json(f.inner(), f.coeffs().front())},
          {"outer_tail", tail_to_json(f.outer(), f.coeffs().back())}};
}

RadialFunction radial_from_json(const Json& j) {
  return parsing("radial function", [&] {
    const Prime p(j.at("prime").get<long>());
    const long kmin = j.at("window").at("kmin").get<long>();
    const long kmax = j.at("window").at("kmax").get<long>();
    std::vector<PPowerSum> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(ppower_from_json(c));
    if (coeffs.empty() || kmax - kmin + 1 != static_cast<long>(coeffs.size())) {
      throw Error(ErrorKind::Parse, "window [" + std::to_string(kmin) + ", " + std::to_string(kmax) + "] does not match " +
                                        std::to_string(coeffs.size()) + " coefficients");
    }
    const Json zero{{"kind", "zero"}};
    const TailSpec inner = tail_from_json(j.value("inner_tail", zero), coeffs.front());
    const TailSpec outer = tail_from_json(j.value("outer_tail", zero), coeffs.back());
    return RadialFunction(p, kmin, std::move(coeffs), inner, outer);
  });
}

Json to_json(const BlockDecomposition& d) {
  Json pieces = Json::array();
  for (const auto& piece : d.pieces) {
    pieces.push_back({{"lambda", to_json(piece.lambda)}, {"support_n", piece.block.support_n}, {"fn", to_json(piece.block.fn)}});
  }
  Json tails = Json::array();
  for (const auto& t : d.tails) {
    tails.push_back({{"edge", t.edge}, {"direction", t.direction}, {"lambdas", terms_to_json(t.lambdas)},
                     {"mass", to_json(t.mass)}});
  }
  return {{"mass", to_json(d.mass)},
          {"mass_dec", to_decimal_digits(d.mass)},
          {"pieces", pieces},
          {"tails", tails},
          {"residual_bound", to_json(d.residual_bound)},
          {"construction", d.construction}};
}

Json to_json(const ConstantResult& c) {
  Json out{{"value", to_json(c.value)},
           {"form", c.form == ConstantForm::ClosedForm ? "closed" : "series"},
           {"terms_used", c.terms_used},
           {"tail_bound", to_json(c.tail_bound)},
           {"admissible", c.admissible()},
           {"window", c.admissibility.window}};
  out["divergence_witness"] = c.admissibility.divergence_witness ? to_json(*c.admissibility.divergence_witness) : Json();
  return out;
}

Json to_json(const SweepGrid& g) {
  Json r = Json::array();
  for (const auto& q : g.r_values) r.push_back(format_rational(q));
  Json a = Json::array();
  for (const auto& q : g.alpha_values) a.push_back(format_rational(q));
  Json k = Json::array();
  for (const auto& K : g.kernels) k.push_back(K.to_string());
  const CorpusOptions& c = g.corpus;
  return {{"primes", g.primes},
          {"r_values", r},
          {"alpha_values", a},
          {"kernels", k},
          {"seed", g.seed},
          {"corpus_size", g.corpus_size},
          {"corpus",
           {{"window_lo", c.window_lo},
            {"window_hi", c.window_hi},
            {"max_window", c.max_window},
            {"max_exponent", c.max_exponent},
            {"max_denominator", c.max_denominator},
            {"allow_affine", c.allow_affine}}}};
}

SweepGrid grid_from_json(const Json& j) {
  return parsing("sweep grid", [&] {
    SweepGrid g;
    for (const auto& p : j.at("primes")) g.primes.push_back(p.get<long>());
    for (const auto& q : j.at("r_values")) g.r_values.push_back(rational_from_json(q));
    for (const auto& q : j.at("alpha_values")) g.alpha_values.push_back(rational_from_json(q));
    for (const auto& k : j.at("kernels")) g.kernels.push_back(KernelSpec::parse(k.get<std::string>()));
    g.seed = j.value("seed", std::uint64_t{0});
    g.corpus_size = j.value("corpus_size", g.corpus_size);
    if (j.contains("corpus")) {
      const Json& c = j.at("corpus");
      g.corpus.window_lo = c.value("window_lo", g.corpus.window_lo);
      g.corpus.window_hi = c.value("window_hi", g.corpus.window_hi);
      g.corpus.max_window = c.value("max_window", g.corpus.max_window);
      g.corpus.max_exponent = c.value("max_exponent", g.corpus.max_exponent);
      g.corpus.max_denominator = c.value("max_denominator", g.corpus.max_denominator);
      g.corpus.allow_affine = c.value("allow_affine", g.corpus.allow_affine);
    }
    g.validate();
    return g;
  });
}

Json to_json(const VerificationRecord& rec) {
  Json inputs = Json::object();
  for (const auto& [k, v] : rec.inputs) inputs[k] = v;
  return {{"theorem_id", std::string(to_string(rec.theorem_id))},
          {"p", rec.p},
          {"r", format_rational(rec.r)},
          {"alpha", format_rational(rec.alpha)},
          {"kernel", rec.kernel},
          {"inputs", inputs},
          {"lhs", to_json(rec.lhs)},
          {"rhs", to_json(rec.rhs)},
          {"outcome", std::string(to_string(rec.outcome))},
          {"precision_used", rec.precision_used},
          {"note", rec.note}};
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace padic_hh
