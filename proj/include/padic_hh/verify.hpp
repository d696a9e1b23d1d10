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
#include <string>
#include <string_view>
#include <vector>

#include "padic_hh/corpus.hpp"
#include "padic_hh/operators.hpp"
#include "padic_hh/record.hpp"
#include "padic_hh/spaces.hpp"

namespace padic_hh {

/// Parameter grid for a sweep. Every axis must be nonempty; the seed and the
/// corpus shape are copied into every record so reports can be replayed.
struct SweepGrid {
  std::vector<long> primes;
  std::vector<Rational> r_values;
  std::vector<Rational> alpha_values;
  std::vector<KernelSpec> kernels;
  std::uint64_t seed = 0;
  long corpus_size = 3;  // corpus items per (grid point, check, kernel)
  CorpusOptions corpus;

  // p in {2,3,5}, r in {3/2,2,3}, alpha in {1/8,1/4,1/2}, all built-in kernels.
  static SweepGrid default_grid();
  void validate() const;  // throws InvalidArgument on an empty axis
};

// ||D_t f|| against p^{-t(1/r+alpha)} ||f|| on constructive upper bounds, plus
// the exact re-certification of every dilated, renormalized piece.
VerificationRecord verify_dilation(const RadialFunction& f, long t, const SpaceParams& params);

// Transport decomposition of T(a): mass + residual <= C, and equal to C/2
// within tol for closed-form kernels. Inadmissible parameters are recorded.
VerificationRecord verify_transport(const KernelSpec& K, const Block& a, const Rational& tol = kDefaultTolerance);

// Operator bound on one block for a named kernel theorem:
// block_norm_upper(T a) <= C. `id` is one of Hilbert33, Hardy34, Dp35, HLPRemark.
VerificationRecord verify_operator_bound(TheoremId id, const KernelSpec& K, const Block& a,
                                         const Rational& tol = kDefaultTolerance);

// Subadditivity: dual lower bound of w1 f1 + w2 f2 <= w1 UB(f1) + w2 UB(f2).
VerificationRecord verify_minkowski(const RadialFunction& f1, const RadialFunction& f2, const PPowerSum& w1,
                                    const PPowerSum& w2, const SpaceParams& params);

// One check on explicit inputs, as the command line runs it. Defaults:
// f = Phi_{B^0} (Phi_{S^0} for the Hilbert kernel, which needs compact support); t = shift; kernel from the theorem (required for Transport32
// and Dp35). Block checks certify f on B^{support top}; Holder23 pairs f with
// itself and Minkowski24 combines f with Phi_{B^0}. Inadmissible parameters
// are recorded, other errors propagate.
VerificationRecord verify_theorem(TheoremId id, const Prime& p, const SpaceParams& params,
                                  const std::optional<KernelSpec>& kernel, const std::optional<RadialFunction>& f,
                                  long shift, const Rational& tol = kDefaultTolerance);

// The kernel a named theorem is about (Transport32 and Dp35 take theirs from
// the grid); nullopt for the kernel-free checks.
std::optional<KernelSpec> theorem_kernel(TheoremId id);

// One record per (grid point, check, kernel, corpus item), sorted by
// (theorem_id, p, r, alpha, kernel, item). Failures are records, never throws
// for a well-formed grid.
std::vector<VerificationRecord> run_sweep(const SweepGrid& grid, const std::vector<TheoremId>& checks,
                                          const Rational& tol = kDefaultTolerance);

enum class ReportFormat { Json, Csv, Text };
ReportFormat parse_report_format(std::string_view s);

// json: array of records; csv: theorem_id,p,r,alpha,kernel,outcome,lhs_dec,
// rhs_dec,precision_used; text: aligned table and an outcome summary line.
std::string emit_report(const std::vector<VerificationRecord>& records, ReportFormat format);

// "N pass / M fail / K inadmissible" (plus undecided when present).
std::string summary_line(const std::vector<VerificationRecord>& records);

}  // namespace padic_hh
