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

#include <map>
#include <string>
#include <string_view>

#include "padic_hh/exact.hpp"

namespace padic_hh {

enum class TheoremId { Dilation31, Transport32, Hilbert33, Hardy34, Dp35, HLPRemark, Holder23, Minkowski24 };
std::string_view to_string(TheoremId id);
TheoremId parse_theorem_id(std::string_view s);

enum class Outcome { Pass, Fail, Inadmissible, Undecided };
std::string_view to_string(Outcome o);
Outcome outcome_of(Decision d);

/// One audited inequality check: lhs <= rhs, with enough context to replay it.
struct VerificationRecord {
  TheoremId theorem_id = TheoremId::Dilation31;
  long p = 0;
  Rational r;
  Rational alpha;
  std::string kernel;                         // empty when the check has no kernel
  std::map<std::string, std::string> inputs;  // extra serialized inputs, sorted by key
  Enclosure lhs;
  Enclosure rhs;
  Outcome outcome = Outcome::Undecided;
  int precision_used = 0;
  std::string note;
};

// Fills outcome and precision_used from check_le(lhs, rhs).
void decide(VerificationRecord& rec);

}  // namespace padic_hh
