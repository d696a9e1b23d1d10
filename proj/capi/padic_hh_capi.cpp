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

#include "padic_hh.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "padic_hh/error.hpp"
#include "padic_hh/json_io.hpp"
#include "padic_hh/verify.hpp"

using namespace padic_hh;

struct phh_function {
  RadialFunction fn;
};

struct phh_kernel {
  KernelSpec spec;
};

struct phh_report {
  std::vector<VerificationRecord> records;
};

namespace {

thread_local std::string g_last_error;

phh_error_t code_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return PHH_ERR_INVALID_ARGUMENT;
    case ErrorKind::MultiTermPower: return PHH_ERR_MULTI_TERM_POWER;
    case ErrorKind::UnfactorableCoefficient: return PHH_ERR_UNFACTORABLE_COEFFICIENT;
    case ErrorKind::PrecisionExhausted: return PHH_ERR_PRECISION_EXHAUSTED;
    case ErrorKind::DivergentIntegral: return PHH_ERR_DIVERGENT_INTEGRAL;
    case ErrorKind::DivergentNorm: return PHH_ERR_DIVERGENT_NORM;
    case ErrorKind::DivergentMass: return PHH_ERR_DIVERGENT_MASS;
    case ErrorKind::DivergentOperator: return PHH_ERR_DIVERGENT_OPERATOR;
    case ErrorKind::UnboundedSup: return PHH_ERR_UNBOUNDED_SUP;
    case ErrorKind::NotCertified: return PHH_ERR_NOT_CERTIFIED;
    case ErrorKind::NotSupported: return PHH_ERR_NOT_SUPPORTED;
    case ErrorKind::NormTooLarge: return PHH_ERR_NORM_TOO_LARGE;
    case ErrorKind::NoClosedForm: return PHH_ERR_NO_CLOSED_FORM;
    case ErrorKind::Inadmissible: return PHH_ERR_INADMISSIBLE;
    case ErrorKind::NotExact: return PHH_ERR_NOT_EXACT;
    case ErrorKind::Parse: return PHH_ERR_PARSE;
  }
  return PHH_ERR_INTERNAL;
}

// Runs `body`, translating every C++ exception into an error code so nothing
// unwinds across the C boundary.
template <typename F>
phh_error_t guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PHH_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PHH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PHH_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PHH_ERR_INTERNAL;
  }
}

template <typename T>
void require(const T* ptr, const char* name) {
  if (ptr == nullptr) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Rational rational_arg(const char* text, const char* name) {
  require(text, name);
  return parse_rational(text);
}

SpaceParams params_arg(const char* r, const char* alpha) {
  return SpaceParams(rational_arg(r, "r"), rational_arg(alpha, "alpha"));
}

}  // namespace

extern "C" {

PHH_API const char* phh_version(void) { return "0.1.0"; }

PHH_API const char* phh_error_name(phh_error_t code) {
  switch (code) {
    case PHH_OK: return "Ok";
    case PHH_ERR_INTERNAL: return "Internal";
    default: break;
  }
  for (int k = 0; k <= static_cast<int>(ErrorKind::Parse); ++k) {
    const auto kind = static_cast<ErrorKind>(k);
    if (code_of(kind) == code) return to_string(kind).data();
  }
  return "Unknown";
}

PHH_API const char* phh_last_error_message(void) { return g_last_error.c_str(); }

PHH_API void phh_string_free(char* s) { std::free(s); }

PHH_API phh_error_t phh_function_from_json(const char* json, phh_function** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new phh_function{radial_from_json(parse_json_text(json))};
  });
}

PHH_API phh_error_t phh_function_to_json(const phh_function* f, char** out_json) {
  return guarded([&] {
    require(f, "f");
    require(out_json, "out_json");
    *out_json = dup_string(to_json(f->fn).dump(2));
  });
}

PHH_API phh_error_t phh_function_ball(long p, long n, phh_function** out) {
  return guarded([&] {
    require(out, "out");
    *out = new phh_function{RadialFunction::ball(Prime(p), n)};
  });
}

PHH_API phh_error_t phh_function_prime(const phh_function* f, long* out_p) {
  return guarded([&] {
    require(f, "f");
    require(out_p, "out_p");
    *out_p = f->fn.prime().value();
  });
}

PHH_API phh_error_t phh_function_equal(const phh_function* a, const phh_function* b, int* out_equal) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out_equal, "out_equal");
    *out_equal = a->fn == b->fn ? 1 : 0;
  });
}

PHH_API void phh_function_free(phh_function* f) { delete f; }

PHH_API phh_error_t phh_kernel_parse(const char* spec, phh_kernel** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new phh_kernel{KernelSpec::parse(spec)};
  });
}

PHH_API phh_error_t phh_kernel_name(const phh_kernel* k, char** out_name) {
  return guarded([&] {
    require(k, "kernel");
    require(out_name, "out_name");
    *out_name = dup_string(k->spec.to_string());
  });
}

PHH_API void phh_kernel_free(phh_kernel* k) { delete k; }

PHH_API phh_error_t phh_constant(const phh_kernel* k, long p, const char* r, const char* alpha, phh_method_t method,
                                 const char* tol, char** out_json) {
  return guarded([&] {
    require(k, "kernel");
    require(out_json, "out_json");
    const SpaceParams params = params_arg(r, alpha);
    const Prime prime(p);
    const Rational tolerance = tol != nullptr ? parse_rational(tol) : kDefaultTolerance;
    if (tolerance <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    ConstantResult c;
    switch (method) {
      case PHH_METHOD_CLOSED: c = constant_closed_form(k->spec, params, prime); break;
      case PHH_METHOD_SERIES: c = constant_series(k->spec, params, prime, tolerance); break;
      default: throw Error(ErrorKind::InvalidArgument, "unknown method");
    }
    Json out = to_json(c);
    out["kernel"] = k->spec.to_string();
    out["p"] = p;
    out["r"] = format_rational(params.r());
    out["alpha"] = format_rational(params.alpha());
    *out_json = dup_string(out.dump(2));
  });
}

PHH_API phh_error_t phh_apply(const phh_kernel* k, const phh_function* f, phh_function** out) {
  return guarded([&] {
    require(k, "kernel");
    require(f, "f");
    require(out, "out");
    *out = new phh_function{apply_operator(k->spec, f->fn)};
  });
}

PHH_API phh_error_t phh_norm(const phh_function* f, phh_space_t space, const char* r, const char* alpha,
                             char** out_json) {
  return guarded([&] {
    require(f, "f");
    require(out_json, "out_json");
    const SpaceParams params = params_arg(r, alpha);
    Json out{{"r", format_rational(params.r())}, {"alpha", format_rational(params.alpha())}};
    switch (space) {
      case PHH_SPACE_LR:
        out["space"] = "lr";
        out["quantity"] = "||f||_r^r";
        out["value"] = to_json(lr_norm_pow(f->fn, params.r()));
        break;
      case PHH_SPACE_MORREY:
        out["space"] = "morrey";
        out["quantity"] = "||f||_{M_{r,alpha}}^r";
        out["value"] = to_json(morrey_norm_pow(f->fn, params));
        break;
      case PHH_SPACE_BLOCK_UPPER: {
        const BlockDecomposition d = block_norm_upper(f->fn, params);
        out["space"] = "block-upper";
        out["quantity"] = "upper bound of ||f||_{block}";
        out["value"] = to_json(Enclosure(d.mass + d.residual_bound));
        out["decomposition"] = to_json(d);
        break;
      }
      case PHH_SPACE_BLOCK_LOWER:
        out["space"] = "block-lower";
        out["quantity"] = "lower bound of ||f||_{block}";
        out["value"] = to_json(block_norm_lower(f->fn, params));
        break;
      default: throw Error(ErrorKind::InvalidArgument, "unknown space");
    }
    *out_json = dup_string(out.dump(2));
  });
}

PHH_API phh_error_t phh_verify(const char* theorem_id, long p, const char* r, const char* alpha,
                               const phh_kernel* kernel, const phh_function* f, long shift, phh_report** out) {
  return guarded([&] {
    require(theorem_id, "theorem_id");
    require(out, "out");
    const TheoremId id = parse_theorem_id(theorem_id);
    const std::optional<KernelSpec> K = kernel ? std::optional<KernelSpec>(kernel->spec) : std::nullopt;
    const std::optional<RadialFunction> fn = f ? std::optional<RadialFunction>(f->fn) : std::nullopt;
    *out = new phh_report{{verify_theorem(id, Prime(p), params_arg(r, alpha), K, fn, shift)}};
  });
}

PHH_API phh_error_t phh_sweep(const char* grid_json, const char* checks, const uint64_t* seed, phh_report** out) {
  return guarded([&] {
    require(grid_json, "grid_json");
    require(checks, "checks");
    require(out, "out");
    SweepGrid grid = grid_from_json(parse_json_text(grid_json));
    if (seed != nullptr) grid.seed = *seed;
    std::vector<TheoremId> ids;
    const std::string list(checks);
    std::size_t start = 0;
    while (start <= list.size()) {
      const std::size_t comma = std::min(list.find(',', start), list.size());
      const std::string item = list.substr(start, comma - start);
      if (item.empty()) throw Error(ErrorKind::Parse, "empty theorem id in '" + list + "'");
      ids.push_back(parse_theorem_id(item));
      start = comma + 1;
    }
    *out = new phh_report{run_sweep(grid, ids)};
  });
}

PHH_API phh_error_t phh_report_size(const phh_report* report, size_t* out_size) {
  return guarded([&] {
    require(report, "report");
    require(out_size, "out_size");
    *out_size = report->records.size();
  });
}

PHH_API phh_error_t phh_report_summary(const phh_report* report, phh_summary* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = phh_summary{};
    for (const auto& rec : report->records) {
      switch (rec.outcome) {
        case Outcome::Pass: ++out->pass; break;
        case Outcome::Fail: ++out->fail; break;
        case Outcome::Inadmissible: ++out->inadmissible; break;
        case Outcome::Undecided:
          ++out->undecided;
          if (rec.precision_used >= kDefaultMaxBits) ++out->precision_exhausted;
          break;
      }
    }
  });
}

PHH_API phh_error_t phh_report_emit(const phh_report* report, phh_format_t format, char** out_text) {
  return guarded([&] {
    require(report, "report");
    require(out_text, "out_text");
    ReportFormat f = ReportFormat::Json;
    switch (format) {
      case PHH_FORMAT_JSON: f = ReportFormat::Json; break;
      case PHH_FORMAT_CSV: f = ReportFormat::Csv; break;
      case PHH_FORMAT_TEXT: f = ReportFormat::Text; break;
      default: throw Error(ErrorKind::InvalidArgument, "unknown report format");
    }
    *out_text = dup_string(emit_report(report->records, f));
  });
}

PHH_API void phh_report_free(phh_report* report) { delete report; }

}  // extern "C"
