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

#ifndef WEAK_ARRIVAL_POINTER_HPP
#define WEAK_ARRIVAL_POINTER_HPP

#include <optional>
#include <utility>
#include <vector>

#include "weak_arrival/polarization.hpp"
#include "weak_arrival/weakvalue.hpp"

namespace weak_arrival {

/// Normalized Gaussian envelope (sigma^2 pi)^(-1/4) exp(-x^2 / 2 sigma^2).
double gaussian_envelope(double x, double sigma);

/// Overlap integral of two envelopes whose centers differ by `separation`:
/// exp(-separation^2 / 4 sigma^2).
double envelope_overlap(double separation, double sigma);

/// Pointer wavefunction in the arrival coordinate y = x - ct, written as a
/// superposition of displaced Gaussian envelopes of common width.
struct PointerWave {
    struct Term {
        complex_t coefficient;
        double center;
    };

    std::vector<Term> terms;
    double sigma = 1.0;

    complex_t amplitude(double y) const;

    /// Closed-form sum_jk conj(c_j) c_k exp(-(x_j - x_k)^2 / 4 sigma^2).
    double norm_sq() const;

    /// Closed-form integral of y |psi(y)|^2, unnormalized.
    double first_moment() const;

    /// Smallest and largest term centers. Requires at least one term.
    std::pair<double, double> center_range() const;
};

/// |psi(y)|^2, not normalized.
double density(const PointerWave &wave, double y);

/// Post-selected, unnormalized pointer state after the third beamsplitter:
/// cos(phi) cos(theta) G(y) + sin(phi) sin(theta) G(y - eps).
PointerWave final_pointer_state(const Apparatus &app);

/// gamma = cos(theta - phi) / cos(theta + phi), a_bar = lambda = eps / 2.
struct GammaForm {
    double gamma;
    double a_bar;
    double lambda;
};

/// Throws GammaSingular when |cos(theta + phi)| <= 1e-14.
GammaForm gamma_form(const Apparatus &app);

/// Rebuilds the two-term wave from the gamma parametrization:
/// cos(theta + phi) / 2 * [(1 + gamma) G(y - a_bar + lambda)
///                        - (1 - gamma) G(y - a_bar - lambda)].
PointerWave pointer_from_gamma_form(const GammaForm &form, const Apparatus &app);

struct ExactMean {
    double mean;     // conditional <y> with the exact norm
    double norm_sq;  // exact post-selection probability
    /// Same expectation normalized by the weak-limit norm cos^2(theta - phi)
    /// instead of the exact one; empty when that norm vanishes.
    std::optional<double> weak_norm_mean;
    double weak_norm_sq;
};

/// Conditional mean arrival coordinate for the finite-width pointer. With
/// a = cos(phi) cos(theta), b = sin(phi) sin(theta), k = exp(-eps^2/4sigma^2):
///   mean = eps (b^2 + a b k) / (a^2 + b^2 + 2 a b k).
/// Throws UndefinedConditioning when a = b = 0.
ExactMean exact_mean_arrival(const Apparatus &app);

/// Adaptive Gauss-Kronrod quadrature of y |psi|^2 / norm^2 over the window
/// [min_center - 8 sigma, max_center + 8 sigma]. Throws
/// UndefinedConditioning when the wave has zero norm.
double quadrature_mean(const PointerWave &wave);
double quadrature_mean(const Apparatus &app);

/// Quadrature of |psi|^2 over the same window.
double quadrature_norm_sq(const PointerWave &wave);

}  // namespace weak_arrival

#endif  // WEAK_ARRIVAL_POINTER_HPP
