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

#include "weak_arrival/pointer.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "weak_arrival/errors.hpp"

namespace weak_arrival {

namespace {

constexpr double kWindowSigmas = 8.0;

// Coefficients are products of sines and cosines; anything this small is
// rounding noise from an exact zero such as cos(pi/2).
constexpr double kZeroCoefficient = 1e-15;

bool coefficients_vanish(double a, double b) {
    return std::abs(a) <= kZeroCoefficient && std::abs(b) <= kZeroCoefficient;
}

// Splits the window into sigma-wide panels so the adaptive rule never has to
// discover a narrow peak inside a wide interval.
template <class F>
double integrate_window(F &&f, double lo, double hi, double sigma) {
    using boost::math::quadrature::gauss_kronrod;
    const auto panels = static_cast<int>(std::ceil((hi - lo) / sigma));
    const double width = (hi - lo) / panels;
    double total = 0.0;
    double compensation = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = lo + i * width;
        const double b = (i + 1 == panels) ? hi : a + width;
        const double piece = gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-14);
        // Neumaier summation keeps the panel sum at full precision.
        const double t = total + piece;
        if (std::abs(total) >= std::abs(piece)) {
            compensation += (total - t) + piece;
        } else {
            compensation += (piece - t) + total;
        }
        total = t;
    }
    return total + compensation;
}

std::pair<double, double> window(const PointerWave &wave) {
    const auto [lo, hi] = wave.center_range();
    return {lo - kWindowSigmas * wave.sigma, hi + kWindowSigmas * wave.sigma};
}

}  // namespace

double gaussian_envelope(double x, double sigma) {
    const double norm = 1.0 / std::sqrt(sigma * std::sqrt(std::numbers::pi));
    return norm * std::exp(-x * x / (2.0 * sigma * sigma));
}

double envelope_overlap(double separation, double sigma) {
    return std::exp(-separation * separation / (4.0 * sigma * sigma));
}

complex_t PointerWave::amplitude(double y) const {
    complex_t psi{};
    for (const auto &t : terms) psi += t.coefficient * gaussian_envelope(y - t.center, sigma);
    return psi;
}

double PointerWave::norm_sq() const {
    double s = 0.0;
    for (const auto &tj : terms) {
        for (const auto &tk : terms) {
            s += (std::conj(tj.coefficient) * tk.coefficient).real() *
                 envelope_overlap(tj.center - tk.center, sigma);
        }
    }
    return s;
}

double PointerWave::first_moment() const {
    // Int y G(y - xj) G(y - xk) dy = overlap_jk * (xj + xk) / 2.
    double s = 0.0;
    for (const auto &tj : terms) {
        for (const auto &tk : terms) {
            s += (std::conj(tj.coefficient) * tk.coefficient).real() *
                 envelope_overlap(tj.center - tk.center, sigma) * 0.5 * (tj.center + tk.center);
        }
    }
    return s;
}

std::pair<double, double> PointerWave::center_range() const {
    if (terms.empty()) throw std::invalid_argument("pointer wave has no terms");
    const auto [lo, hi] = std::minmax_element(
        terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.center < b.center; });
    return {lo->center, hi->center};
}

double density(const PointerWave &wave, double y) { return std::norm(wave.amplitude(y)); }

PointerWave final_pointer_state(const Apparatus &app) {
    app.validate();
    PointerWave wave;
    wave.sigma = app.sigma;
    wave.terms = {
        {std::cos(app.phi) * std::cos(app.theta), 0.0},
        {std::sin(app.phi) * std::sin(app.theta), app.epsilon},
    };
    return wave;
}

GammaForm gamma_form(const Apparatus &app) {
    app.validate();
    const double denom = std::cos(app.theta + app.phi);
    if (std::abs(denom) <= 1e-14) {
        throw GammaSingular("cos(theta + phi) vanishes; gamma is undefined");
    }
    return GammaForm{std::cos(app.theta - app.phi) / denom, app.epsilon / 2.0, app.epsilon / 2.0};
}

PointerWave pointer_from_gamma_form(const GammaForm &form, const Apparatus &app) {
    const double half_cos = std::cos(app.phi + app.theta) / 2.0;
    PointerWave wave;
    wave.sigma = app.sigma;
    wave.terms = {
        {half_cos * (1.0 + form.gamma), form.a_bar - form.lambda},
        {-half_cos * (1.0 - form.gamma), form.a_bar + form.lambda},
    };
    return wave;
}

ExactMean exact_mean_arrival(const Apparatus &app) {
    app.validate();
    const double a = std::cos(app.phi) * std::cos(app.theta);
    const double b = std::sin(app.phi) * std::sin(app.theta);
    if (coefficients_vanish(a, b)) {
        throw UndefinedConditioning("post-selected pointer state vanishes identically");
    }
    const double k = envelope_overlap(app.epsilon, app.sigma);
    const double numerator = app.epsilon * (b * b + a * b * k);
    const double norm_sq = a * a + b * b + 2.0 * a * b * k;
    // a = -b with k = 1 cancels to rounding noise, not to exactly zero.
    if (!(norm_sq > 1e-14 * (a * a + b * b))) {
        throw UndefinedConditioning("post-selection probability is zero");
    }
    const double weak_norm_sq = std::pow(std::cos(app.theta - app.phi), 2);
    ExactMean out{numerator / norm_sq, norm_sq, std::nullopt, weak_norm_sq};
    if (weak_norm_sq > 0.0) out.weak_norm_mean = numerator / weak_norm_sq;
    return out;
}

double quadrature_norm_sq(const PointerWave &wave) {
    const auto [lo, hi] = window(wave);
    return integrate_window([&](double y) { return density(wave, y); }, lo, hi, wave.sigma);
}

double quadrature_mean(const PointerWave &wave) {
    const auto [lo, hi] = window(wave);
    const double norm = quadrature_norm_sq(wave);
    if (!(norm > 0.0)) {
        throw UndefinedConditioning("pointer wave has zero norm");
    }
    const double moment =
        integrate_window([&](double y) { return y * density(wave, y); }, lo, hi, wave.sigma);
    return moment / norm;
}

double quadrature_mean(const Apparatus &app) {
    const PointerWave wave = final_pointer_state(app);
    if (coefficients_vanish(wave.terms[0].coefficient.real(), wave.terms[1].coefficient.real())) {
        throw UndefinedConditioning("post-selected pointer state vanishes identically");
    }
    return quadrature_mean(wave);
}

}  // namespace weak_arrival
