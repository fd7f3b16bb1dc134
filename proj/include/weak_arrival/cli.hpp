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

#ifndef WEAK_ARRIVAL_CLI_HPP
#define WEAK_ARRIVAL_CLI_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weak_arrival/weakvalue.hpp"

namespace weak_arrival {

/// First line of every CSV the tool writes.
inline constexpr std::string_view kCsvVersionLine = "# weak-arrival v1";

enum class SweepVariable { theta, phi, delta, epsilon_over_sigma };

std::string_view to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(std::string_view s);

struct SweepSpec {
    SweepVariable variable = SweepVariable::theta;
    double start = 0.0;
    double stop = 1.0;
    std::size_t steps = 2;
    bool log_spacing = false;
    /// theta, phi, epsilon, sigma, c for the non-swept fields. For a delta
    /// sweep phi is derived as theta - pi/2 - delta; for epsilon_over_sigma
    /// epsilon becomes value * sigma.
    Apparatus fixed;
    /// theta sweeps only: keep phi equal to theta.
    bool phi_follows_theta = false;

    /// steps >= 2, start != stop, both finite; log spacing needs both
    /// endpoints > 0. Throws std::invalid_argument.
    void validate() const;
};

struct SweepRow {
    double variable;
    std::optional<double> weak_value;
    std::optional<double> exact_mean;
    std::optional<double> abl_mean;
    std::optional<double> probability_weak;
    std::optional<double> probability_exact;
    /// "ok", "orthogonal" (weak value undefined) or "undefined" (nothing
    /// passes post-selection).
    std::string status;
};

std::vector<SweepRow> run_sweep(const SweepSpec &spec);

/// Column order is part of the v1 format.
void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows);

/// Parses an angle: bare numbers are radians, a "deg" suffix means degrees.
/// Throws std::invalid_argument on anything else.
double parse_angle(std::string_view text);

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// Entry point shared by the executable and the tests. Data goes to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on a domain error and 2 on
/// a usage error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace weak_arrival

#endif  // WEAK_ARRIVAL_CLI_HPP
