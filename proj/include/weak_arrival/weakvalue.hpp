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

#ifndef WEAK_ARRIVAL_WEAKVALUE_HPP
#define WEAK_ARRIVAL_WEAKVALUE_HPP

#include <array>
#include <string_view>

#include "weak_arrival/polarization.hpp"

namespace weak_arrival {

/// 2x2 complex observable acting on (H, V), row-major.
struct Observable2 {
    std::array<std::array<complex_t, 2>, 2> m{};

    PolarizationState apply(const PolarizationState &s) const {
        return PolarizationState::raw(m[0][0] * s.amp_h() + m[0][1] * s.amp_v(),
                                      m[1][0] * s.amp_h() + m[1][1] * s.amp_v());
    }
};

enum class Regime { weak, intermediate, strong };

std::string_view to_string(Regime r);

/// epsilon/sigma cut points used to label a result.
struct RegimeThresholds {
    double weak_below = 0.1;
    double strong_at = 4.0;
};

Regime classify_regime(double weak_ratio, const RegimeThresholds &thresholds = {});

/// Delay-line interferometer parameters. Angles in radians; epsilon and
/// sigma share whatever length unit the caller picks; c converts lengths to
/// times.
struct Apparatus {
    double theta = 0.0;    // pre-selection polarizer angle
    double phi = 0.0;      // post-selection beamsplitter angle
    double epsilon = 0.0;  // path-length difference of the V arm
    double sigma = 1.0;    // Gaussian envelope width
    double c = 1.0;

    /// Throws std::invalid_argument unless angles are finite, epsilon >= 0,
    /// sigma > 0 and c > 0.
    void validate() const;

    double weak_ratio() const { return epsilon / sigma; }
};

struct WeakResult {
    complex_t value;     // length along y; divide by c for a time
    double probability;  // post-selection probability
    Regime regime_note;
};

/// <post|op|pre> / <post|pre>. Throws OrthogonalSelection when the overlap
/// magnitude is at or below overlap_tolerance.
complex_t weak_value(const PolarizationState &pre, const PolarizationState &post,
                     const Observable2 &op, double overlap_tolerance = 1e-14);

/// epsilon |V><V|.
Observable2 arrival_operator(double epsilon);

/// Closed-form arrival weak value eps sin(theta) sin(phi) / cos(theta - phi)
/// with the weak-limit post-selection probability cos^2(theta - phi).
WeakResult weak_arrival(const Apparatus &app, const RegimeThresholds &thresholds = {});

/// Same quantity written as eps / (cot(phi) cot(theta) + 1). Undefined when
/// either cotangent diverges; used as an algebraic cross-check.
double weak_arrival_cot_form(double theta, double phi, double epsilon);

/// Small-delta expansion around orthogonal selection,
/// theta = phi + pi/2 + delta:
///   eps (tan(theta) + 1/delta) / (tan(theta) + cot(theta)).
/// Throws DegenerateAngle when theta is a multiple of pi/2 and
/// std::invalid_argument when delta is zero or non-finite.
double weak_arrival_delta_approx(double theta, double delta, double epsilon);

/// Post-selection angle that puts theta at distance delta past orthogonal
/// selection: phi = theta - pi/2 - delta.
double post_angle_for_delta(double theta, double delta);

struct AblProbabilities {
    double prob_h;
    double prob_v;
};

/// Strong intermediate measurement in the {H, V} basis between pre- and
/// post-selection (ABL rule with identity evolution). Throws
/// UndefinedConditioning when every branch has zero weight.
AblProbabilities abl_probabilities(const PolarizationState &pre, const PolarizationState &post);

/// Eigenvalue-weighted ABL mean 0 * prob_h + epsilon * prob_v.
double abl_mean_arrival(const PolarizationState &pre, const PolarizationState &post, double epsilon);

/// sigma = c / (4 pi delta_nu).
double sigma_from_linewidth(double delta_nu, double c = 1.0);

}  // namespace weak_arrival

#endif  // WEAK_ARRIVAL_WEAKVALUE_HPP
