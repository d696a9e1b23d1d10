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

#include <string>

#include "json.hpp"
#include "padic_hh/spaces.hpp"
#include "padic_hh/verify.hpp"

namespace padic_hh {

using Json = nlohmann::json;

/// JSON forms used by reports and the command line. Rationals are always
/// "num/den" strings; PPowerSums are arrays of {"coef", "exps"} terms.
Json to_json(const PPowerSum& x);
PPowerSum ppower_from_json(const Json& j);

Json to_json(const Enclosure& e);

// {"prime", "window": {"kmin", "kmax"}, "coeffs", "inner_tail", "outer_tail"}.
// Tail kinds: zero, geometric (ratio), affine_geometric (slope, ratio),
// mixture (terms of ratio + polynomial), envelope (lower, upper term lists).
Json to_json(const RadialFunction& f);
RadialFunction radial_from_json(const Json& j);

Json to_json(const BlockDecomposition& d);

// {"value", "form", "terms_used", "tail_bound", "admissible", "window", "divergence_witness"}.
Json to_json(const ConstantResult& c);

Json to_json(const SweepGrid& g);
SweepGrid grid_from_json(const Json& j);

Json to_json(const VerificationRecord& rec);

// Parse helpers that turn JSON errors into Error(Parse).
Json parse_json_text(const std::string& text);

}  // namespace padic_hh
