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

#include "weak_arrival/bell.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "weak_arrival/errors.hpp"
#include "weak_arrival/pointer.hpp"

namespace weak_arrival {

namespace {

constexpr double kOverlapTolerance = 1e-14;
constexpr std::array<TwoPhotonBasis, 4> kLabels{TwoPhotonBasis::HH, TwoPhotonBasis::HV,
                                                TwoPhotonBasis::VH, TwoPhotonBasis::VV};

// Raw (unnormalized) moment sums of a joint wave.
struct RawMoments {
    double m0 = 0.0;
    std::array<double, 2> m1{};
    std::array<double, 2> m2{};
    double m12 = 0.0;
};

JointMoments finish(const RawMoments &raw) {
    if (!(raw.m0 > 0.0)) {
        throw UndefinedConditioning("joint pointer wave has zero norm");
    }
    JointMoments out{};
    out.norm_sq = raw.m0;
    for (int i = 0; i < 2; ++i) {
        out.mean[i] = raw.m1[i] / raw.m0;
        out.variance[i] = raw.m2[i] / raw.m0 - out.mean[i] * out.mean[i];
    }
    out.covariance = raw.m12 / raw.m0 - out.mean[0] * out.mean[1];
    return out;
}

}  // namespace

std::string_view to_string(Expansion e) {
    return e == Expansion::exact ? "exact" : "first_order";
}

Expansion expansion_from_string(std::string_view s) {
    if (s == "exact") return Expansion::exact;
    if (s == "first_order") return Expansion::first_order;
    throw std::invalid_argument("unknown expansion '" + std::string(s) + "'");
}

std::array<double, 2> JointArrivalOperator::arrival(TwoPhotonBasis label) const {
    switch (label) {
        case TwoPhotonBasis::HH:
            return {0.0, 0.0};
        case TwoPhotonBasis::HV:
            return {0.0, epsilon};
        case TwoPhotonBasis::VH:
            return {epsilon, 0.0};
        case TwoPhotonBasis::VV:
            return {epsilon, epsilon};
    }
    return {0.0, 0.0};
}

TwoPhotonState JointArrivalOperator::apply(const TwoPhotonState &s, int photon) const {
    std::array<complex_t, 4> out{};
    for (auto label : kLabels) {
        const auto i = static_cast<std::size_t>(label);
        out[i] = arrival(label)[photon] * s[i];
    }
    return TwoPhotonState(out);
}

TwoPhotonState bell_post_state(double theta, double delta, Expansion expansion) {
    if (!std::isfinite(theta) || !std::isfinite(delta)) {
        throw std::invalid_argument("theta and delta must be finite");
    }
    if (expansion == Expansion::exact) {
        return product_state(PolarizationState::from_angle(theta),
                             PolarizationState::from_angle(theta + std::numbers::pi / 2.0 + delta));
    }
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return TwoPhotonState({-s * c - delta * c * c, c * c - delta * s * c, -s * s - delta * s * c,
                           s * c - delta * s * s});
}

JointWeakResult bell_weak_arrivals(double theta, double delta, double epsilon, Expansion expansion) {
    if (!std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be finite");
    const TwoPhotonState pre = bell_phi_plus();
    const TwoPhotonState post = bell_post_state(theta, delta, expansion);
    const complex_t overlap = inner(post, pre);
    if (std::abs(overlap) <= kOverlapTolerance) {
        throw OrthogonalSelection(std::abs(overlap));
    }
    const JointArrivalOperator op{epsilon};
    JointWeakResult out{};
    for (int photon = 0; photon < 2; ++photon) {
        out.value[photon] = inner(post, op.apply(pre, photon)) / overlap;
    }
    out.probability = std::norm(overlap);
    const double scale = std::max(1.0, std::abs(out.value[0]));
    out.correlated = std::abs(out.value[0] - out.value[1]) <= 1e-12 * scale;
    return out;
}

double bell_weak_arrival_first_order_closed_form(double theta, double delta, double epsilon) {
    const double s = std::sin(theta);
    return (s * s - s * std::cos(theta) / delta) * epsilon;
}

double BellPointerState::norm_sq() const {
    double total = 0.0;
    for (const auto &tj : terms) {
        for (const auto &tk : terms) {
            if (tj.label != tk.label) continue;  // orthogonal polarizations
            total += (std::conj(tj.coefficient) * tk.coefficient).real() *
                     envelope_overlap(tj.center1 - tk.center1, sigma) *
                     envelope_overlap(tj.center2 - tk.center2, sigma);
        }
    }
    return total;
}

BellPointerState bell_evolution_state(double epsilon, double sigma) {
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw std::invalid_argument("sigma must be finite and > 0");
    }
    if (!std::isfinite(epsilon) || epsilon < 0.0) {
        throw std::invalid_argument("epsilon must be finite and >= 0");
    }
    const double r = std::numbers::sqrt2 / 2.0;
    BellPointerState state;
    state.sigma = sigma;
    state.terms = {
        {TwoPhotonBasis::HH, r, 0.0, 0.0},
        {TwoPhotonBasis::VV, r, epsilon, epsilon},
    };
    return state;
}

complex_t JointPointerWave::amplitude(double y1, double y2) const {
    complex_t psi{};
    for (const auto &t : terms) {
        psi += t.coefficient * gaussian_envelope(y1 - t.center1, sigma) *
               gaussian_envelope(y2 - t.center2, sigma);
    }
    return psi;
}

double JointPointerWave::norm_sq() const {
    double total = 0.0;
    for (const auto &tj : terms) {
        for (const auto &tk : terms) {
            total += (std::conj(tj.coefficient) * tk.coefficient).real() *
                     envelope_overlap(tj.center1 - tk.center1, sigma) *
                     envelope_overlap(tj.center2 - tk.center2, sigma);
        }
    }
    return total;
}

JointPointerWave post_select(const BellPointerState &state, const TwoPhotonState &post) {
    JointPointerWave wave;
    wave.sigma = state.sigma;
    for (const auto &t : state.terms) {
        const complex_t c = std::conj(post.amp(t.label)) * t.coefficient;
        wave.terms.push_back({c, t.center1, t.center2, t.label});
    }
    return wave;
}

double JointMoments::correlation() const {
    return covariance / std::sqrt(variance[0] * variance[1]);
}

JointMoments joint_moments(const JointPointerWave &wave) {
    // G(y - xj) G(y - xk) = overlap_jk * Normal(y; (xj + xk)/2, sigma^2/2).
    const double half_var = wave.sigma * wave.sigma / 2.0;
    RawMoments raw;
    for (const auto &tj : wave.terms) {
        for (const auto &tk : wave.terms) {
            const double weight = (std::conj(tj.coefficient) * tk.coefficient).real() *
                                  envelope_overlap(tj.center1 - tk.center1, wave.sigma) *
                                  envelope_overlap(tj.center2 - tk.center2, wave.sigma);
            const std::array<double, 2> mid{0.5 * (tj.center1 + tk.center1),
                                            0.5 * (tj.center2 + tk.center2)};
            raw.m0 += weight;
            for (int i = 0; i < 2; ++i) {
                raw.m1[i] += weight * mid[i];
                raw.m2[i] += weight * (mid[i] * mid[i] + half_var);
            }
            raw.m12 += weight * mid[0] * mid[1];
        }
    }
    return finish(raw);
}

JointMoments joint_quadrature_moments(const JointPointerWave &wave) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    if (wave.terms.empty()) throw std::invalid_argument("joint pointer wave has no terms");

    double lo = wave.terms.front().center1;
    double hi = lo;
    for (const auto &t : wave.terms) {
        lo = std::min({lo, t.center1, t.center2});
        hi = std::max({hi, t.center1, t.center2});
    }
    lo -= 8.0 * wave.sigma;
    hi += 8.0 * wave.sigma;

    // Half-sigma panels, 20 Gauss-Legendre nodes each, same grid on both axes.
    const auto panels = static_cast<int>(std::ceil((hi - lo) / (0.5 * wave.sigma)));
    const double width = (hi - lo) / panels;
    const auto &abscissa = Rule::abscissa();
    const auto &weights = Rule::weights();
    std::vector<double> nodes;
    std::vector<double> node_weights;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < abscissa.size(); ++i) {
            if (abscissa[i] == 0.0) {
                nodes.push_back(mid);
                node_weights.push_back(weights[i] * half);
                continue;
            }
            nodes.push_back(mid - half * abscissa[i]);
            node_weights.push_back(weights[i] * half);
            nodes.push_back(mid + half * abscissa[i]);
            node_weights.push_back(weights[i] * half);
        }
    }

    RawMoments raw;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        RawMoments row;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double f = wave.density(nodes[i], nodes[j]) * node_weights[j];
            row.m0 += f;
            row.m1[1] += f * nodes[j];
            row.m2[1] += f * nodes[j] * nodes[j];
        }
        const double w = node_weights[i];
        const double y1 = nodes[i];
        raw.m0 += w * row.m0;
        raw.m1[0] += w * y1 * row.m0;
        raw.m2[0] += w * y1 * y1 * row.m0;
        raw.m1[1] += w * row.m1[1];
        raw.m2[1] += w * row.m2[1];
        raw.m12 += w * y1 * row.m1[1];
    }
    return finish(raw);
}

JointPointerWave bell_conditional_wave(double theta, double delta, double epsilon, double sigma) {
    return post_select(bell_evolution_state(epsilon, sigma),
                       bell_post_state(theta, delta, Expansion::exact));
}

}  // namespace weak_arrival
