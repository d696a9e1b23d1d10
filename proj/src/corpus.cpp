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

#include "padic_hh/corpus.hpp"

#include <algorithm>
#include <random>

#include "padic_hh/error.hpp"

namespace padic_hh {

void CorpusRng::refill() {
  // Generate in blocks from a standard engine; only the raw 64-bit outputs
  // are used, which the standard fixes exactly.
  static_assert(sizeof(buffer_) / sizeof(buffer_[0]) == 312);
  std::mt19937_64 engine(state_);
  for (auto& v : buffer_) v = engine();
  state_ = engine();
  index_ = 0;
}

std::uint64_t CorpusRng::next() {
  if (index_ >= 312) refill();
  return buffer_[index_++];
}

long CorpusRng::uniform(long lo, long hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty sampling range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view key) {
  // FNV-1a over the key, folded with the seed through a splitmix64 finaliser
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = h ^ (seed + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rational random_exponent(CorpusRng& rng, const CorpusOptions& opts) {
  const long d = rng.uniform(1, opts.max_denominator);
  Rational e(rng.uniform(-opts.max_exponent * d, opts.max_exponent * d), d);
  e.canonicalize();
  return e;
}

namespace {

std::vector<PPowerSum> random_window(CorpusRng& rng, const Prime& p, const CorpusOptions& opts, long& kmin) {
  const long len = rng.uniform(1, std::min(opts.max_window, opts.window_hi - opts.window_lo + 1));
  kmin = rng.uniform(opts.window_lo, opts.window_hi - len + 1);
  std::vector<PPowerSum> c;
  for (long i = 0; i < len; ++i) c.push_back(rng.chance(6) ? PPowerSum() : p.power(random_exponent(rng, opts)));
  if (std::all_of(c.begin(), c.end(), [](const PPowerSum& x) { return x.is_zero(); })) c.back() = PPowerSum(1);
  return c;
}

// A tail whose ratio exponent is strictly below `limit`.
TailSpec random_tail(CorpusRng& rng, const Prime& p, const PPowerSum& edge, const Rational& limit,
                     const CorpusOptions& opts) {
  const long kind = rng.uniform(0, opts.allow_affine ? 3 : 2);
  if (kind == 0 || edge.is_zero()) return TailSpec::zero();
  Rational e;
  for (int attempt = 0;; ++attempt) {
    e = random_exponent(rng, opts);
    if (e < limit) break;
    if (attempt == 20) return TailSpec::zero();
  }
  const PPowerSum ratio = p.power(e);
  if (kind == 3) {
    const Rational slope(rng.uniform(1, 4), rng.uniform(1, 4));
    return TailSpec::affine_geometric(edge, edge * PPowerSum(slope), ratio);
  }
  return TailSpec::geometric(edge, ratio);
}

}  // namespace

RadialFunction random_function(CorpusRng& rng, const Prime& p, const SpaceParams& params, const CorpusOptions& opts) {
  long kmin = 0;
  std::vector<PPowerSum> c = random_window(rng, p, opts, kmin);
  // inner: Morrey supremum finite needs ratio < p^{1/r - alpha};
  // outer: per-sphere block mass finite needs ratio < p^{-(1/r + alpha)}.
  TailSpec inner = random_tail(rng, p, c.front(), 1 / params.r() - params.alpha(), opts);
  TailSpec outer = random_tail(rng, p, c.back(), -params.beta(), opts);
  return RadialFunction(p, kmin, std::move(c), std::move(inner), std::move(outer));
}

RadialFunction random_compact_function(CorpusRng& rng, const Prime& p, const CorpusOptions& opts) {
  long kmin = 0;
  std::vector<PPowerSum> c = random_window(rng, p, opts, kmin);
  return RadialFunction(p, kmin, std::move(c));
}

Block random_block(CorpusRng& rng, const Prime& p, const SpaceParams& params, const CorpusOptions& opts) {
  const RadialFunction f = random_compact_function(rng, p, opts);
  const long n = *f.support_top() + rng.uniform(0, 1);
  // scale so that ||a||_r <= p^{-n alpha} 2^{-j} for a random j >= 0
  const PPowerSum root = root_upper(lr_norm_pow(f, params.r()).hi, params.r());
  const PPowerSum scale = p.power(-params.alpha() * n) * reciprocal(root) * PPowerSum(Rational(1, 1L << rng.uniform(0, 2)));
  return certify_block(f.scaled(scale), n, params);
}

}  // namespace padic_hh
