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

#include "padic_hh/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <set>
#include <mutex>
#include <sstream>
#include <thread>

#include "padic_hh/error.hpp"
#include "padic_hh/json_io.hpp"

namespace padic_hh {

namespace {

VerificationRecord base_record(TheoremId id, long p, const SpaceParams& params, std::string kernel = {}) {
  VerificationRecord rec;
  rec.theorem_id = id;
  rec.p = p;
  rec.r = params.r();
  rec.alpha = params.alpha();
  rec.kernel = std::move(kernel);
  return rec;
}

void fail(VerificationRecord& rec, const std::string& why) {
  rec.outcome = Outcome::Fail;
  rec.note += (rec.note.empty() ? "" : "; ") + why;
}

ConstantResult operator_constant(const KernelSpec& K, const SpaceParams& params, const Prime& p, const Rational& tol) {
  return K.has_closed_form() ? constant_closed_form(K, params, p) : constant_series(K, params, p, tol);
}

// Marks the record Inadmissible (with the divergence witness) when the
// parameters sit outside the kernel's window; returns whether it did.
bool record_inadmissible(VerificationRecord& rec, const KernelSpec& K, const SpaceParams& params, const Prime& p) {
  const Admissibility adm = classify_admissibility(K, params.beta(), p);
  if (adm.admissible) return false;
  rec.outcome = Outcome::Inadmissible;
  rec.note = "needs " + adm.window + ", got 1/r + alpha = " + format_rational(params.beta());
  if (adm.divergence_witness) rec.note += "; divergent ratio " + to_string(*adm.divergence_witness);
  return true;
}

long item_of(const VerificationRecord& rec) {
  const auto it = rec.inputs.find("item");
  return it == rec.inputs.end() ? 0 : std::stol(it->second);
}

bool record_less(const VerificationRecord& a, const VerificationRecord& b) {
  if (a.theorem_id != b.theorem_id) return a.theorem_id < b.theorem_id;
  if (a.p != b.p) return a.p < b.p;
  if (a.r != b.r) return a.r < b.r;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  if (a.kernel != b.kernel) return a.kernel < b.kernel;
  return item_of(a) < item_of(b);
}

std::string corpus_tag(const CorpusOptions& c) {
  std::ostringstream out;
  out << "window=[" << c.window_lo << "," << c.window_hi << "];max_window=" << c.max_window
      << ";max_exponent=" << c.max_exponent << ";max_denominator=" << c.max_denominator
      << ";affine=" << (c.allow_affine ? "yes" : "no");
  return out.str();
}

std::vector<KernelSpec> kernels_for(TheoremId id, const SweepGrid& grid) {
  if (auto K = theorem_kernel(id)) return {*K};
  if (id == TheoremId::Transport32) return grid.kernels;
  if (id == TheoremId::Dp35) {
    std::vector<KernelSpec> dps;
    for (const auto& K : grid.kernels) {
      if (K.kind() == KernelKind::Dp) dps.push_back(K);
    }
    if (dps.empty()) dps.push_back(KernelSpec::dp(Rational(1)));
    return dps;
  }
  return {};
}

VerificationRecord run_one(TheoremId id, const Prime& p, const SpaceParams& params, const KernelSpec* K,
                           CorpusRng& rng, const CorpusOptions& opts, const Rational& tol) {
  switch (id) {
    case TheoremId::Dilation31: {
      const RadialFunction f = random_function(rng, p, params, opts);
      return verify_dilation(f, rng.uniform(-5, 5), params);
    }
    case TheoremId::Transport32: return verify_transport(*K, random_block(rng, p, params, opts), tol);
    case TheoremId::Hilbert33:
    case TheoremId::Hardy34:
    case TheoremId::Dp35:
    case TheoremId::HLPRemark: return verify_operator_bound(id, *K, random_block(rng, p, params, opts), tol);
    case TheoremId::Holder23: {
      CorpusOptions plain = opts;
      plain.allow_affine = false;
      const RadialFunction f = random_function(rng, p, params, plain);
      const RadialFunction g = random_function(rng, p, params.conjugate(), plain);
      VerificationRecord rec = holder_pairing_check(f, g, params);
      rec.inputs["f"] = to_json(f).dump();
      rec.inputs["g"] = to_json(g).dump();
      return rec;
    }
    case TheoremId::Minkowski24: {
      const RadialFunction f1 = random_function(rng, p, params, opts);
      const RadialFunction f2 = random_function(rng, p, params, opts);
      const PPowerSum w1 = p.power(random_exponent(rng, opts));
      const PPowerSum w2 = p.power(random_exponent(rng, opts));
      return verify_minkowski(f1, f2, w1, w2, params);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown theorem id");
}

}  // namespace

SweepGrid SweepGrid::default_grid() {
  SweepGrid g;
  g.primes = {2, 3, 5};
  g.r_values = {Rational(3, 2), Rational(2), Rational(3)};
  g.alpha_values = {Rational(1, 8), Rational(1, 4), Rational(1, 2)};
  g.kernels = {KernelSpec::hilbert(), KernelSpec::hardy(), KernelSpec::hlp(), KernelSpec::dp(Rational(1)),
               KernelSpec::dp(Rational(2))};
  return g;
}

void SweepGrid::validate() const {
  if (primes.empty() || r_values.empty() || alpha_values.empty() || kernels.empty()) {
    throw Error(ErrorKind::InvalidArgument, "sweep grid axes must be nonempty");
  }
  if (corpus_size < 0) throw Error(ErrorKind::InvalidArgument, "corpus size must be nonnegative");
  for (long p : primes) Prime{p};
  for (const auto& r : r_values) {
    for (const auto& a : alpha_values) SpaceParams(r, a);
  }
}

VerificationRecord verify_dilation(const RadialFunction& f, long t, const SpaceParams& params) {
  const Prime& p = f.prime();
  VerificationRecord rec = base_record(TheoremId::Dilation31, p.value(), params);
  rec.inputs["t"] = std::to_string(t);
  rec.inputs["f"] = to_json(f).dump();

  const BlockDecomposition original = block_norm_upper(f, params);
  const BlockDecomposition dilated = block_norm_upper(dilate(f, t), params);
  const PPowerSum factor = p.power(-t * params.beta());
  rec.lhs = Enclosure(dilated.mass + dilated.residual_bound);
  rec.rhs = Enclosure(factor * (original.mass + original.residual_bound));
  decide(rec);

  // The proof's rescaling step: p^{t beta} D_t a is again a block, on B^{n-t}.
  const PPowerSum renormalize = p.power(t * params.beta());
  long rechecked = 0;
  for (const auto& piece : original.pieces) {
    const RadialFunction moved = dilate(piece.block.fn, t).scaled(renormalize);
    try {
      const Block b = certify_block(moved, piece.block.support_n - t, params);
      if (b.certificate.outcome == Ordering::Greater) throw Error(ErrorKind::NormTooLarge, "certificate");
      ++rechecked;
    } catch (const Error& e) {
      const std::string where = "dilated piece on B^" + std::to_string(piece.block.support_n - t);
      if (e.kind() != ErrorKind::NotCertified) {
        fail(rec, where + " is not a block: " + e.what());
      } else if (rec.outcome != Outcome::Fail) {
        rec.outcome = Outcome::Undecided;
        rec.note += (rec.note.empty() ? "" : "; ") + where + " could not be re-certified";
      }
    }
  }
  rec.note += (rec.note.empty() ? "" : "; ") + std::to_string(rechecked) + " dilated pieces re-certified";
  return rec;
}

VerificationRecord verify_transport(const KernelSpec& K, const Block& a, const Rational& tol) {
  const Prime& p = a.fn.prime();
  VerificationRecord rec = base_record(TheoremId::Transport32, p.value(), a.params, K.to_string());
  rec.inputs["block"] = to_json(a.fn).dump();
  rec.inputs["support_n"] = std::to_string(a.support_n);
  if (record_inadmissible(rec, K, a.params, p)) return rec;

  const BlockDecomposition d = transport_decompose(K, a, tol);
  const ConstantResult c = operator_constant(K, a.params, p, tol);
  rec.lhs = Enclosure(d.mass + d.residual_bound);
  rec.rhs = c.value;
  decide(rec);

  if (K.has_closed_form()) {
    const PPowerSum half = c.value.lo * PPowerSum(Rational(1, 2));
    const PPowerSum total = d.mass + d.residual_bound;
    if (!certified_le(total, half * PPowerSum(1 + tol)) || !certified_le(half * PPowerSum(1 - tol), total)) {
      fail(rec, "mass + residual " + to_decimal(total) + " differs from C/2 = " + to_decimal(half));
    }
  }
  for (const auto& piece : d.pieces) {
    if (piece.block.certificate.outcome == Ordering::Greater) {
      fail(rec, "transported piece on B^" + std::to_string(piece.block.support_n) + " failed re-certification");
    }
  }
  rec.note += (rec.note.empty() ? "" : "; ") + std::string("mass ") + to_decimal(d.mass) + ", residual " +
              to_decimal(d.residual_bound) + ", " + std::to_string(d.pieces.size()) + " pieces";
  return rec;
}

VerificationRecord verify_operator_bound(TheoremId id, const KernelSpec& K, const Block& a, const Rational& tol) {
  const Prime& p = a.fn.prime();
  VerificationRecord rec = base_record(id, p.value(), a.params, K.to_string());
  rec.inputs["block"] = to_json(a.fn).dump();
  rec.inputs["support_n"] = std::to_string(a.support_n);
  if (record_inadmissible(rec, K, a.params, p)) return rec;

  const ConstantResult c = operator_constant(K, a.params, p, tol);
  const BlockDecomposition image = block_norm_upper(apply_operator(K, a.fn), a.params);
  rec.lhs = Enclosure(image.mass + image.residual_bound);
  rec.rhs = c.value;
  decide(rec);
  rec.note = "image decomposition: " + image.construction;
  return rec;
}

VerificationRecord verify_minkowski(const RadialFunction& f1, const RadialFunction& f2, const PPowerSum& w1,
                                    const PPowerSum& w2, const SpaceParams& params) {
  VerificationRecord rec = base_record(TheoremId::Minkowski24, f1.prime().value(), params);
  rec.inputs["f1"] = to_json(f1).dump();
  rec.inputs["f2"] = to_json(f2).dump();
  rec.inputs["w1"] = to_json(w1).dump();
  rec.inputs["w2"] = to_json(w2).dump();
  rec.lhs = block_norm_lower(combine(f1, f2, w1, w2), params);
  const BlockDecomposition u1 = block_norm_upper(f1, params);
  const BlockDecomposition u2 = block_norm_upper(f2, params);
  rec.rhs = Enclosure(w1 * (u1.mass + u1.residual_bound) + w2 * (u2.mass + u2.residual_bound));
  decide(rec);
  return rec;
}

VerificationRecord verify_theorem(TheoremId id, const Prime& p, const SpaceParams& params,
                                  const std::optional<KernelSpec>& kernel, const std::optional<RadialFunction>& input,
                                  long shift, const Rational& tol) {
  std::optional<KernelSpec> K = kernel ? kernel : theorem_kernel(id);
  // The Hilbert operator only takes compactly supported inputs.
  const bool compact = K && K->kind() == KernelKind::Hilbert && id != TheoremId::Dilation31 &&
                       id != TheoremId::Holder23 && id != TheoremId::Minkowski24;
  const RadialFunction f = input ? *input : (compact ? RadialFunction::sphere(p, 0) : RadialFunction::ball(p, 0));
  if (!(f.prime() == p)) throw Error(ErrorKind::InvalidArgument, "input function uses a different prime");
  auto as_block = [&] {
    const std::optional<long> top = f.support_top();
    if (!top) throw Error(ErrorKind::NotSupported, "block checks need a function with bounded support");
    return certify_block(f, *top, params);
  };
  switch (id) {
    case TheoremId::Dilation31: return verify_dilation(f, shift, params);
    case TheoremId::Holder23: return holder_pairing_check(f, f, params);
    case TheoremId::Minkowski24:
      return verify_minkowski(f, RadialFunction::ball(p, 0), PPowerSum(1), PPowerSum(1), params);
    case TheoremId::Transport32:
    case TheoremId::Dp35:
      if (!K) throw Error(ErrorKind::InvalidArgument, std::string(to_string(id)) + " needs a kernel");
      if (id == TheoremId::Dp35 && K->kind() != KernelKind::Dp) {
        throw Error(ErrorKind::InvalidArgument, "Dp35 is about the dp:<lambda> kernels");
      }
      break;
    default:
      if (kernel && !(*kernel == *theorem_kernel(id))) {
        throw Error(ErrorKind::InvalidArgument, std::string(to_string(id)) + " is about the " +
                                                    theorem_kernel(id)->to_string() + " kernel");
      }
      break;
  }
  VerificationRecord probe = base_record(id, p.value(), params, K->to_string());
  if (record_inadmissible(probe, *K, params, p)) return probe;
  const Block a = as_block();
  return id == TheoremId::Transport32 ? verify_transport(*K, a, tol) : verify_operator_bound(id, *K, a, tol);
}

std::optional<KernelSpec> theorem_kernel(TheoremId id) {
  switch (id) {
    case TheoremId::Hilbert33: return KernelSpec::hilbert();
    case TheoremId::Hardy34: return KernelSpec::hardy();
    case TheoremId::HLPRemark: return KernelSpec::hlp();
    default: return std::nullopt;
  }
}

std::vector<VerificationRecord> run_sweep(const SweepGrid& grid, const std::vector<TheoremId>& checks,
                                          const Rational& tol) {
  grid.validate();
  const std::set<TheoremId> unique(checks.begin(), checks.end());
  const std::string corpus = corpus_tag(grid.corpus);

  struct Task {
    TheoremId id;
    long p;
    SpaceParams params;
    std::optional<KernelSpec> kernel;
    long item;
  };
  std::vector<Task> tasks;
  for (TheoremId id : unique) {
    const bool kernel_free = id == TheoremId::Dilation31 || id == TheoremId::Holder23 || id == TheoremId::Minkowski24;
    std::vector<std::optional<KernelSpec>> kernels;
    if (kernel_free) {
      kernels.push_back(std::nullopt);
    } else {
      for (const auto& K : kernels_for(id, grid)) kernels.push_back(K);
    }
    for (long p : grid.primes) {
      for (const auto& r : grid.r_values) {
        for (const auto& alpha : grid.alpha_values) {
          for (const auto& K : kernels) {
            for (long item = 0; item < grid.corpus_size; ++item) tasks.push_back({id, p, SpaceParams(r, alpha), K, item});
          }
        }
      }
    }
  }

  auto run_task = [&](const Task& task) {
    const std::string kname = task.kernel ? task.kernel->to_string() : std::string();
    const std::string key = std::string(to_string(task.id)) + "|p=" + std::to_string(task.p) + "|r=" +
                            format_rational(task.params.r()) + "|alpha=" + format_rational(task.params.alpha()) +
                            "|kernel=" + kname + "|item=" + std::to_string(task.item);
    CorpusRng rng(mix_seed(grid.seed, key));
    VerificationRecord rec;
    try {
      rec = run_one(task.id, Prime(task.p), task.params, task.kernel ? &*task.kernel : nullptr, rng, grid.corpus, tol);
    } catch (const Error& e) {
      rec = base_record(task.id, task.p, task.params, kname);
      rec.outcome = e.kind() == ErrorKind::Inadmissible ? Outcome::Inadmissible : Outcome::Undecided;
      rec.precision_used = e.kind() == ErrorKind::PrecisionExhausted ? kDefaultMaxBits : 0;
      rec.note = e.what();
    }
    rec.inputs["item"] = std::to_string(task.item);
    rec.inputs["seed"] = std::to_string(grid.seed);
    rec.inputs["corpus"] = corpus;
    return rec;
  };

  // Tasks are independent and seeded by their own key, so the worker count
  // and scheduling never change the records; sorting fixes their order.
  std::vector<VerificationRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        records[i] = run_task(tasks[i]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(tasks.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::stable_sort(records.begin(), records.end(), record_less);
  return records;
}

ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  throw Error(ErrorKind::Parse, "unknown report format '" + std::string(s) + "'");
}

std::string summary_line(const std::vector<VerificationRecord>& records) {
  long pass = 0, failed = 0, inadmissible = 0, undecided = 0;
  for (const auto& rec : records) {
    switch (rec.outcome) {
      case Outcome::Pass: ++pass; break;
      case Outcome::Fail: ++failed; break;
      case Outcome::Inadmissible: ++inadmissible; break;
      case Outcome::Undecided: ++undecided; break;
    }
  }
  std::string line = std::to_string(pass) + " pass / " + std::to_string(failed) + " fail / " +
                     std::to_string(inadmissible) + " inadmissible";
  if (undecided > 0) line += " / " + std::to_string(undecided) + " undecided";
  return line;
}

std::string emit_report(const std::vector<VerificationRecord>& records, ReportFormat format) {
  // The compared ends: the upper end of the left side against the lower end
  // of the right side.
  auto lhs_dec = [](const VerificationRecord& rec) { return to_decimal_digits(rec.lhs.hi); };
  auto rhs_dec = [](const VerificationRecord& rec) { return to_decimal_digits(rec.rhs.lo); };

  std::ostringstream out;
  switch (format) {
    case ReportFormat::Json: {
      Json arr = Json::array();
      for (const auto& rec : records) arr.push_back(to_json(rec));
      out << arr.dump(2) << "\n";
      break;
    }
    case ReportFormat::Csv: {
      out << "theorem_id,p,r,alpha,kernel,outcome,lhs_dec,rhs_dec,precision_used\n";
      for (const auto& rec : records) {
        out << to_string(rec.theorem_id) << ',' << rec.p << ',' << format_rational(rec.r) << ','
            << format_rational(rec.alpha) << ',' << rec.kernel << ',' << to_string(rec.outcome) << ','
            << lhs_dec(rec) << ',' << rhs_dec(rec) << ',' << rec.precision_used << "\n";
      }
      break;
    }
    case ReportFormat::Text: {
      const std::vector<std::string> header{"theorem", "p", "r", "alpha", "kernel", "outcome", "lhs", "rhs", "bits"};
      std::vector<std::vector<std::string>> rows{header};
      for (const auto& rec : records) {
        rows.push_back({std::string(to_string(rec.theorem_id)), std::to_string(rec.p), format_rational(rec.r),
                        format_rational(rec.alpha), rec.kernel.empty() ? "-" : rec.kernel,
                        std::string(to_string(rec.outcome)), lhs_dec(rec), rhs_dec(rec),
                        std::to_string(rec.precision_used)});
      }
      std::vector<std::size_t> width(header.size(), 0);
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
      }
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i + 1 < row.size()) {
            out << std::left << std::setw(static_cast<int>(width[i])) << row[i] << "  ";
          } else {
            out << row[i];
          }
        }
        out << "\n";
      }
      out << summary_line(records) << "\n";
      break;
    }
  }
  return out.str();
}

}  // namespace padic_hh
