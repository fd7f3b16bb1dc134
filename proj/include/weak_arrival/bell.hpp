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

#ifndef WEAK_ARRIVAL_BELL_HPP
#define WEAK_ARRIVAL_BELL_HPP

#include <array>
#include <string_view>
#include <vector>

#include "weak_arrival/polarization.hpp"

namespace weak_arrival {

/// How the post-selected two-photon state is built: the exact product of
/// rotated states, or its expansion truncated at first order in delta.
enum class Expansion { exact, first_order };

std::string_view to_string(Expansion e);
/// Accepts "exact" and "first_order"; throws std::invalid_argument otherwise.
Expansion expansion_from_string(std::string_view s);

/// Diagonal two-photon arrival operator. Each product basis state gets a
/// 2-vector of arrival delays: HH -> (0,0), HV -> (0,eps), VH -> (eps,0),
/// VV -> (eps,eps).
struct JointArrivalOperator {
    double epsilon = 0.0;

    std::array<double, 2> arrival(TwoPhotonBasis label) const;

    /// Component `photon` (0 or 1) of the operator applied to `s`.
    TwoPhotonState apply(const TwoPhotonState &s, int photon) const;
};

struct JointWeakResult {
    std::array<complex_t, 2> value;
    double probability;  // |<Psi_f|Psi_i>|^2
    bool correlated;     // both components equal
};

/// from_angle(theta) (x) from_angle(theta + pi/2 + delta), exactly or to
/// first order in delta.
TwoPhotonState bell_post_state(double theta, double delta, Expansion expansion);

/// <Psi_f|A|Psi_i> / <Psi_f|Psi_i> for the Bell pre-selection. Throws
/// OrthogonalSelection when the overlap vanishes (delta = 0).
JointWeakResult bell_weak_arrivals(double theta, double delta, double epsilon, Expansion expansion);

/// Closed form of the first-order result: (sin^2 theta - sin theta cos theta / delta) eps.
double bell_weak_arrival_first_order_closed_form(double theta, double delta, double epsilon);

/// Two-photon pointer state as labeled product-Gaussian terms:
/// sum_j c_j G(y1 - x1_j) G(y2 - x2_j) |label_j>.
struct BellPointerState {
    struct Term {
        TwoPhotonBasis label;
        complex_t coefficient;
        double center1;
        double center2;
    };

    std::vector<Term> terms;
    double sigma = 1.0;

    /// Closed-form total norm^2 over both coordinates and polarizations.
    double norm_sq() const;
};

/// Bell pair after each photon crossed its own delay line:
/// (1/sqrt2) G(y1) G(y2) |HH> + (1/sqrt2) G(y1-eps) G(y2-eps) |VV>.
/// Throws std::invalid_argument unless sigma > 0 and epsilon >= 0.
BellPointerState bell_evolution_state(double epsilon, double sigma);

/// Scalar two-coordinate pointer wave left after polarization post-selection.
struct JointPointerWave {
    struct Term {
        complex_t coefficient;
        double center1;
        double center2;
        TwoPhotonBasis branch;
    };

    std::vector<Term> terms;
    double sigma = 1.0;

    complex_t amplitude(double y1, double y2) const;
    double density(double y1, double y2) const { return std::norm(amplitude(y1, y2)); }

    /// Closed-form norm^2, i.e. the joint post-selection probability when
    /// the unselected state was normalized.
    double norm_sq() const;
};

/// Projects every polarization label onto <post|, keeping the pointer terms.
JointPointerWave post_select(const BellPointerState &state, const TwoPhotonState &post);

struct JointMoments {
    std::array<double, 2> mean;
    std::array<double, 2> variance;
    double covariance;
    double norm_sq;

    double correlation() const;
};

/// Closed-form conditional means, variances and covariance of (y1, y2).
/// Throws UndefinedConditioning on a zero-norm wave.
JointMoments joint_moments(const JointPointerWave &wave);

/// The same moments by tensor-product Gauss-Legendre quadrature over
/// [min_center - 8 sigma, max_center + 8 sigma]^2.
JointMoments joint_quadrature_moments(const JointPointerWave &wave);

/// Convenience: evolve the Bell pair, post-select on the exact product state.
JointPointerWave bell_conditional_wave(double theta, double delta, double epsilon, double sigma);

}  // namespace weak_arrival

#endif  // WEAK_ARRIVAL_BELL_HPP
