// Copyright 2026 The weak_arrival Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON mappings for the library's value types. States use
//   {"basis": ["H", "V"], "re": [...], "im": [...]}
// with the basis order fixed; readers reject any other order.

#ifndef WEAK_ARRIVAL_SERIALIZE_HPP
#define WEAK_ARRIVAL_SERIALIZE_HPP

#include <json.hpp>

#include "weak_arrival/bell.hpp"
#include "weak_arrival/montecarlo.hpp"
#include "weak_arrival/polarization.hpp"
#include "weak_arrival/weakvalue.hpp"

namespace weak_arrival {

void to_json(nlohmann::json &j, const PolarizationState &s);
void from_json(const nlohmann::json &j, PolarizationState &s);

void to_json(nlohmann::json &j, const TwoPhotonState &s);
void from_json(const nlohmann::json &j, TwoPhotonState &s);

void to_json(nlohmann::json &j, const Apparatus &a);
void from_json(const nlohmann::json &j, Apparatus &a);

void to_json(nlohmann::json &j, const WeakResult &r);
void from_json(const nlohmann::json &j, WeakResult &r);

void to_json(nlohmann::json &j, const JointWeakResult &r);
void from_json(const nlohmann::json &j, JointWeakResult &r);

/// Samples are not serialized.
void to_json(nlohmann::json &j, const RunReport &r);
void from_json(const nlohmann::json &j, RunReport &r);

void to_json(nlohmann::json &j, const BellRunReport &r);

Regime regime_from_string(std::string_view s);

}  // namespace weak_arrival

#endif  // WEAK_ARRIVAL_SERIALIZE_HPP
