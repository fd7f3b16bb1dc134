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

#include "weak_arrival/weakvalue.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "weak_arrival/errors.hpp"

namespace weak_arrival {

namespace {

// Same cutoff as the weak_value overlap test.
constexpr double kOrthogonalCos = 1e-14;

}  // namespace

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::weak:
            return "weak";
        case Regime::intermediate:
            return "intermediate";
        case Regime::strong:
            return "strong";
    }
    return "unknown";
}

Regime classify_regime(double weak_ratio, const RegimeThresholds &thresholds) {
    if (weak_ratio < thresholds.weak_below) return Regime::weak;
    if (weak_ratio >= thresholds.strong_at) return Regime::strong;
    return Regime::intermediate;
}

void Apparatus::validate() const {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::invalid_argument("apparatus angles must be finite");
    }
    if (!std::isfinite(epsilon) || epsilon < 0.0) {
        throw std::invalid_argument("epsilon must be finite and >= 0");
    }
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw std::invalid_argument("sigma must be finite and > 0");
    }
    if (!std::isfinite(c) || c <= 0.0) {
        throw std::invalid_argument("c must be finite and > 0");
    }
}

complex_t weak_value(const PolarizationState &pre, const PolarizationState &post,
                     const Observable2 &op, double overlap_tolerance) {
    const complex_t overlap = inner(post, pre);
    if (std::abs(overlap) <= overlap_tolerance) {
        throw OrthogonalSelection(std::abs(overlap));
    }
    return inner(post, op.apply(pre)) / overlap;
}

Observable2 arrival_operator(double epsilon) {
    if (!std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon must be finite");
    }
    Observable2 op;
    op.m[1][1] = epsilon;
    return op;
}

WeakResult weak_arrival(const Apparatus &app, const RegimeThresholds &thresholds) {
    app.validate();
    const double overlap = std::cos(app.theta - app.phi);
    if (std::abs(overlap) <= kOrthogonalCos) {
        throw OrthogonalSelection(std::abs(overlap));
    }
    const double value = app.epsilon * std::sin(app.theta) * std::sin(app.phi) / overlap;
    return WeakResult{value, overlap * overlap, classify_regime(app.weak_ratio(), thresholds)};
}

double weak_arrival_cot_form(double theta, double phi, double epsilon) {
    const double cot_theta = std::cos(theta) / std::sin(theta);
    const double cot_phi = std::cos(phi) / std::sin(phi);
    return epsilon / (cot_phi * cot_theta + 1.0);
}

double weak_arrival_delta_approx(double theta, double delta, double epsilon) {
    if (!std::isfinite(delta) || delta == 0.0) {
        throw std::invalid_argument("delta must be finite and nonzero");
    }
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("theta must be finite");
    }
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    if (std::abs(s) <= kOrthogonalCos || std::abs(c) <= kOrthogonalCos) {
        throw DegenerateAngle("tan(theta) or cot(theta) diverges at theta = " +
                              std::to_string(theta));
    }
    const double tan_theta = s / c;
    return epsilon * (tan_theta + 1.0 / delta) / (tan_theta + c / s);
}

double post_angle_for_delta(double theta, double delta) {
    return theta - std::numbers::pi / 2.0 - delta;
}

AblProbabilities abl_probabilities(const PolarizationState &pre, const PolarizationState &post) {
    // Projectors onto |H> and |V>: <post|a_k><a_k|pre> is a product of amplitudes.
    const double weight_h = std::norm(std::conj(post.amp_h()) * pre.amp_h());
    const double weight_v = std::norm(std::conj(post.amp_v()) * pre.amp_v());
    const double total = weight_h + weight_v;
    // Amplitude products below ~1e-15 are rounding noise from cos(pi/2) and
    // the like, so their squares below 1e-30 count as zero.
    if (!(total > 1e-30 * pre.norm_sq() * post.norm_sq())) {
        throw UndefinedConditioning("ABL denominator vanishes: no branch connects pre and post");
    }
    return AblProbabilities{weight_h / total, weight_v / total};
}

double abl_mean_arrival(const PolarizationState &pre, const PolarizationState &post, double epsilon) {
    return epsilon * abl_probabilities(pre, post).prob_v;
}

double sigma_from_linewidth(double delta_nu, double c) {
    if (!std::isfinite(delta_nu) || delta_nu <= 0.0) {
        throw std::invalid_argument("linewidth must be finite and > 0");
    }
    if (!std::isfinite(c) || c <= 0.0) {
        throw std::invalid_argument("c must be finite and > 0");
    }
    return c / (4.0 * std::numbers::pi * delta_nu);
}

}  // namespace weak_arrival
