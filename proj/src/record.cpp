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

#include "padic_hh/record.hpp"

#include <array>

#include "padic_hh/error.hpp"

namespace padic_hh {

namespace {

constexpr std::array<std::pair<TheoremId, std::string_view>, 8> kTheoremNames{{
    {TheoremId::Dilation31, "Dilation31"},
    {TheoremId::Transport32, "Transport32"},
    {TheoremId::Hilbert33, "Hilbert33"},
    {TheoremId::Hardy34, "Hardy34"},
    {TheoremId::Dp35, "Dp35"},
    {TheoremId::HLPRemark, "HLPRemark"},
    {TheoremId::Holder23, "Holder23"},
    {TheoremId::Minkowski24, "Minkowski24"},
}};

}  // namespace

std::string_view to_string(TheoremId id) {
  for (const auto& [k, name] : kTheoremNames) {
    if (k == id) return name;
  }
  return "?";
}

TheoremId parse_theorem_id(std::string_view s) {
  for (const auto& [k, name] : kTheoremNames) {
    if (name == s) return k;
  }
  throw Error(ErrorKind::Parse, "unknown theorem id '" + std::string(s) + "'");
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "Pass";
    case Outcome::Fail: return "Fail";
    case Outcome::Inadmissible: return "Inadmissible";
    case Outcome::Undecided: return "Undecided";
  }
  return "?";
}

Outcome outcome_of(Decision d) {
  switch (d) {
    case Decision::Holds: return Outcome::Pass;
    case Decision::Fails: return Outcome::Fail;
    case Decision::Undecided: return Outcome::Undecided;
  }
  return Outcome::Undecided;
}

void decide(VerificationRecord& rec) {
  const BoundCheck check = check_le(rec.lhs, rec.rhs);
  rec.outcome = outcome_of(check.decision);
  rec.precision_used = check.precision_used;
}

}  // namespace padic_hh
