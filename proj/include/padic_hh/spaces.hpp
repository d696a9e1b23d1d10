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

#include <optional>
#include <vector>

#include "padic_hh/radial.hpp"
#include "padic_hh/record.hpp"

namespace padic_hh {

/// Exponent pair (r, alpha) of the central Morrey / block spaces.
class SpaceParams {
 public:
  SpaceParams(Rational r, Rational alpha);

  const Rational& r() const { return r_; }
  const Rational& alpha() const { return alpha_; }
  Rational r_conj() const { return r_ / (r_ - 1); }
  // 1/r + alpha, the exponent every dilation and operator estimate uses.
  Rational beta() const { return 1 / r_ + alpha_; }
  // (r', alpha): the space paired with this one by Hoelder's inequality.
  SpaceParams conjugate() const { return SpaceParams(r_conj(), alpha_); }

  friend bool operator==(const SpaceParams& a, const SpaceParams& b) { return a.r_ == b.r_ && a.alpha_ == b.alpha_; }

 private:
  Rational r_;
  Rational alpha_;
};

/// A certified central (r, alpha)-block: supp fn in B^n and ||fn||_r^r <= p^{-n alpha r}.
struct Block {
  RadialFunction fn;
  long support_n = 0;
  SpaceParams params;
  Comparison certificate;  // outcome of ||fn||_r^r (upper end) against p^{-n alpha r}
};

struct BlockPiece {
  PPowerSum lambda;
  Block block;
};

/// Infinitely many per-sphere pieces along a tail: the piece at offset i >= 1
/// lives on S^{edge + direction * i}, has coefficient lambdas(i) and block
/// sphere_block(p, edge + direction * i, params).
struct TailPieces {
  long edge = 0;
  int direction = 1;
  GeoSequence lambdas;
  PPowerSum mass;  // sum over i >= 1 of lambdas(i), in closed form

  long sphere(long i) const { return edge + direction * i; }
};

struct BlockDecomposition {
  std::vector<BlockPiece> pieces;
  std::vector<TailPieces> tails;
  PPowerSum mass;            // exact sum of every lambda, tails included
  PPowerSum residual_bound;  // block-norm bound on anything not represented
  std::string construction;  // which constructive candidate produced it
};

/// lower <= ||f||_{block} <= upper.
struct CertifiedBound {
  PPowerSum lower;
  PPowerSum upper;
  Ordering relation = Ordering::Less;  // lower vs upper under compare_certified
  bool collapsed() const { return relation == Ordering::Equal; }
};

// Upper bound on x^{1/r} for exact x >= 0: exact for single terms, otherwise a
// dyadic bound m / 2^s with m < 2^40 (relative slack below 2^-38).
PPowerSum root_upper(const PPowerSum& x, const Rational& r);

// Normalised indicator u^{-1/r} p^{-k beta} Phi_{S^k}; its certificate is Equal.
Block sphere_block(const Prime& p, long k, const SpaceParams& params);

// sup_k p^{-k alpha r} int_{B^k} f^r. Exact when every quantity is; otherwise
// a certified enclosure. UnboundedSup when the supremum is infinite.
Enclosure morrey_norm_pow(const RadialFunction& f, const SpaceParams& params);

Block certify_block(const RadialFunction& f, long n, const SpaceParams& params);

// One per-sphere block for every sphere (tails summed in closed form).
BlockDecomposition block_decomposition_per_sphere(const RadialFunction& f, const SpaceParams& params);

// Constructive decomposition of minimal mass among the built-in candidates.
BlockDecomposition block_norm_upper(const RadialFunction& f, const SpaceParams& params);

// (int f g) / ||g||_{M_{r', alpha}}; its lower end bounds ||f||_{block} from below.
Enclosure block_norm_lower_dual(const RadialFunction& f, const RadialFunction& g, const SpaceParams& params);

// Phi_{B^m} for m in [-8, 8] plus power functions on B^0.
std::vector<RadialFunction> default_witnesses(const Prime& p, const SpaceParams& params);

// Best dual lower bound over the witnesses; witnesses that fail are skipped.
Enclosure block_norm_lower(const RadialFunction& f, const SpaceParams& params,
                           const std::vector<RadialFunction>& witnesses = {});

CertifiedBound block_norm_bracket(const RadialFunction& f, const SpaceParams& params);

// (int f g)^r <= ||f||_{M_{r,alpha}}^r * UB_{block, r', alpha}(g)^r.
VerificationRecord holder_pairing_check(const RadialFunction& f, const RadialFunction& g, const SpaceParams& params);

// Supremum over i >= start of a nonnegative sequence; UnboundedSup if infinite.
Enclosure sequence_sup(const GeoSequence& g, long start);

}  // namespace padic_hh
