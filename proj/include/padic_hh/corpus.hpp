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
#include <string_view>

#include "padic_hh/spaces.hpp"

namespace padic_hh {

/// Shape of generated test functions; recorded in every sweep report.
struct CorpusOptions {
  long window_lo = -6;
  long window_hi = 6;
  long max_window = 4;       // at most this many explicit spheres
  long max_exponent = 3;     // coefficient exponents in [-max_exponent, max_exponent]
  long max_denominator = 4;  // ... with denominators up to this
  bool allow_affine = true;  // sample AffineGeometric tails as well
};

/// Deterministic generator: mt19937_64 with an explicit modulo mapping, so
/// corpora are identical across standard libraries.
class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  long uniform(long lo, long hi);  // inclusive
  bool chance(long one_in) { return uniform(0, one_in - 1) == 0; }

 private:
  std::uint64_t state_;
  std::uint64_t buffer_[312] = {};
  int index_ = 312;
  bool seeded_ = false;
  void refill();
};

// Seed for one (seed, key) pair, e.g. key = "Dilation31|p=2|r=3/2|...".
std::uint64_t mix_seed(std::uint64_t seed, std::string_view key);

// Random exponent n/d with |n/d| <= max_exponent and d <= max_denominator.
Rational random_exponent(CorpusRng& rng, const CorpusOptions& opts);

// Nonnegative function with pure-power coefficients whose tails keep it in
// M_{r,alpha} and give it a convergent constructive block decomposition.
RadialFunction random_function(CorpusRng& rng, const Prime& p, const SpaceParams& params,
                               const CorpusOptions& opts = {});

// Compactly supported variant (zero tails).
RadialFunction random_compact_function(CorpusRng& rng, const Prime& p, const CorpusOptions& opts = {});

// A certified block: a random compact function rescaled to meet the norm condition.
Block random_block(CorpusRng& rng, const Prime& p, const SpaceParams& params, const CorpusOptions& opts = {});

}  // namespace padic_hh
