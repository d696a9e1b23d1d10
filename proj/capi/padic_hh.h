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

/*
 * padic_hh.h -- C interface to the p-adic Hardy-Hilbert operator library.
 *
 * Every call returns a phh_error_t; PHH_OK means the out-parameters were set.
 * Objects are opaque handles released with the matching *_free function, and
 * strings returned through char** are released with phh_string_free. Rationals
 * cross the boundary as "num/den" strings; structured results (norms,
 * constants, reports) as JSON text. After a failure, phh_last_error_message()
 * describes it for the calling thread.
 */
#ifndef PADIC_HH_H
#define PADIC_HH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PHH_API __declspec(dllexport)
#else
#define PHH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum phh_error {
  PHH_OK = 0,
  PHH_ERR_INVALID_ARGUMENT = 1,
  PHH_ERR_MULTI_TERM_POWER = 2,
  PHH_ERR_UNFACTORABLE_COEFFICIENT = 3,
  PHH_ERR_PRECISION_EXHAUSTED = 4,
  PHH_ERR_DIVERGENT_INTEGRAL = 5,
  PHH_ERR_DIVERGENT_NORM = 6,
  PHH_ERR_DIVERGENT_MASS = 7,
  PHH_ERR_DIVERGENT_OPERATOR = 8,
  PHH_ERR_UNBOUNDED_SUP = 9,
  PHH_ERR_NOT_CERTIFIED = 10,
  PHH_ERR_NOT_SUPPORTED = 11,
  PHH_ERR_NORM_TOO_LARGE = 12,
  PHH_ERR_NO_CLOSED_FORM = 13,
  PHH_ERR_INADMISSIBLE = 14,
  PHH_ERR_NOT_EXACT = 15,
  PHH_ERR_PARSE = 16,
  PHH_ERR_INTERNAL = 99
} phh_error_t;

typedef enum phh_method { PHH_METHOD_CLOSED = 0, PHH_METHOD_SERIES = 1 } phh_method_t;

typedef enum phh_space {
  PHH_SPACE_LR = 0,          /* ||f||_r^r */
  PHH_SPACE_MORREY = 1,      /* ||f||_{M_{r,alpha}}^r */
  PHH_SPACE_BLOCK_UPPER = 2, /* constructive block decomposition */
  PHH_SPACE_BLOCK_LOWER = 3  /* best dual-pairing lower bound */
} phh_space_t;

typedef enum phh_format { PHH_FORMAT_JSON = 0, PHH_FORMAT_CSV = 1, PHH_FORMAT_TEXT = 2 } phh_format_t;

/* Opaque handles. */
typedef struct phh_function phh_function; /* nonnegative radial function */
typedef struct phh_kernel phh_kernel;     /* kernel of the operator family */
typedef struct phh_report phh_report;     /* sorted list of verification records */

typedef struct phh_summary {
  size_t pass;
  size_t fail;
  size_t inadmissible;
  size_t undecided;
  size_t precision_exhausted; /* undecided because the precision cap was reached */
} phh_summary;

PHH_API const char* phh_version(void);
PHH_API const char* phh_error_name(phh_error_t code);
PHH_API const char* phh_last_error_message(void);
PHH_API void phh_string_free(char* s);

/* Radial functions. */
PHH_API phh_error_t phh_function_from_json(const char* json, phh_function** out);
PHH_API phh_error_t phh_function_to_json(const phh_function* f, char** out_json);
PHH_API phh_error_t phh_function_ball(long p, long n, phh_function** out);
PHH_API phh_error_t phh_function_prime(const phh_function* f, long* out_p);
PHH_API phh_error_t phh_function_equal(const phh_function* a, const phh_function* b, int* out_equal);
PHH_API void phh_function_free(phh_function* f);

/* Kernels: "hilbert" | "hardy" | "hlp" | "dp:<num/den>". */
PHH_API phh_error_t phh_kernel_parse(const char* spec, phh_kernel** out);
PHH_API phh_error_t phh_kernel_name(const phh_kernel* k, char** out_name);
PHH_API void phh_kernel_free(phh_kernel* k);

/* Operator constant C_{r,alpha} as JSON. tol may be NULL (default 1/10^12).
 * An inadmissible series request succeeds with "admissible": false; the
 * closed form reports PHH_ERR_INADMISSIBLE instead. */
PHH_API phh_error_t phh_constant(const phh_kernel* k, long p, const char* r, const char* alpha, phh_method_t method,
                                 const char* tol, char** out_json);

/* Sphere-by-sphere image of f under the operator. */
PHH_API phh_error_t phh_apply(const phh_kernel* k, const phh_function* f, phh_function** out);

/* Norm or norm bound of f as JSON. */
PHH_API phh_error_t phh_norm(const phh_function* f, phh_space_t space, const char* r, const char* alpha,
                             char** out_json);

/* One theorem check (ids: Dilation31, Transport32, Hilbert33, Hardy34, Dp35,
 * HLPRemark, Holder23, Minkowski24). kernel and f may be NULL for defaults. */
PHH_API phh_error_t phh_verify(const char* theorem_id, long p, const char* r, const char* alpha,
                               const phh_kernel* kernel, const phh_function* f, long shift, phh_report** out);

/* Parameter sweep over a grid JSON document; checks is a comma-separated id
 * list; seed may be NULL to keep the grid's own seed. */
PHH_API phh_error_t phh_sweep(const char* grid_json, const char* checks, const uint64_t* seed, phh_report** out);

PHH_API phh_error_t phh_report_size(const phh_report* report, size_t* out_size);
PHH_API phh_error_t phh_report_summary(const phh_report* report, phh_summary* out);
PHH_API phh_error_t phh_report_emit(const phh_report* report, phh_format_t format, char** out_text);
PHH_API void phh_report_free(phh_report* report);

#ifdef __cplusplus
}
#endif

#endif /* PADIC_HH_H */
