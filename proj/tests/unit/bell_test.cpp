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

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "weak_arrival/errors.hpp"

using namespace weak_arrival;
using std::numbers::pi;

namespace {

// <post|A_photon|Phi+> / <post|Phi+> computed from explicit 4-vectors.
oracle::cd brute_weak_value(const std::array<oracle::cd, 4> &post, double eps, int photon) {
    const double s = 1 / std::sqrt(2.0);
    const std::array<oracle::cd, 4> phi{s, 0.0, 0.0, s};
    // Diagonal delays in (HH, HV, VH, VV) order.
    const std::array<double, 4> d0{0, 0, eps, eps};
    const std::array<double, 4> d1{0, eps, 0, eps};
    const auto &d = photon == 0 ? d0 : d1;
    std::array<oracle::cd, 4> a_phi{};
    for (int i = 0; i < 4; ++i) a_phi[i] = d[i] * phi[i];
    return oracle::dot(post, a_phi) / oracle::dot(post, phi);
}

std::array<oracle::cd, 4> exact_post(double theta, double delta) {
    return oracle::kron(oracle::angle_state(theta), oracle::angle_state(theta + pi / 2 + delta));
}

}  // namespace

TEST(bell, expansion_strings) {
    EXPECT_EQ(to_string(Expansion::exact), "exact");
    EXPECT_EQ(expansion_from_string("first_order"), Expansion::first_order);
    EXPECT_THROW(expansion_from_string("second"), std::invalid_argument);
}

TEST(bell, arrival_operator_delays) {
    const JointArrivalOperator op{0.3};
    EXPECT_EQ(op.arrival(TwoPhotonBasis::HH), (std::array<double, 2>{0.0, 0.0}));
    EXPECT_EQ(op.arrival(TwoPhotonBasis::HV), (std::array<double, 2>{0.0, 0.3}));
    EXPECT_EQ(op.arrival(TwoPhotonBasis::VH), (std::array<double, 2>{0.3, 0.0}));
    EXPECT_EQ(op.arrival(TwoPhotonBasis::VV), (std::array<double, 2>{0.3, 0.3}));
}

TEST(bell, first_order_post_state_example) {
    // (sin cos - delta sin^2) at theta = pi/4, delta = 0.01: 0.5 - 0.005.
    const auto s = bell_post_state(pi / 4, 0.01, Expansion::first_order);
    EXPECT_NEAR(s.amp(TwoPhotonBasis::VV).real(), 0.495, 1e-15);
    EXPECT_NEAR(s.amp(TwoPhotonBasis::HH).real(), -0.505, 1e-15);
}

TEST(bell, exact_post_state_matches_kronecker) {
    for (double theta : {0.0, 0.4, pi / 4, 2.0}) {
        for (double delta : {-0.2, 0.01, 0.3}) {
            const auto s = bell_post_state(theta, delta, Expansion::exact);
            const auto k = exact_post(theta, delta);
            for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(s[j] - k[j]), 0.0, 1e-15);
        }
    }
}

TEST(bell, first_order_state_differs_from_exact_at_second_order) {
    for (double delta : {0.1, 0.03, 0.01, 0.001}) {
        for (double theta : {0.1, pi / 4, 1.3}) {
            const auto e = bell_post_state(theta, delta, Expansion::exact);
            const auto f = bell_post_state(theta, delta, Expansion::first_order);
            for (std::size_t j = 0; j < 4; ++j) EXPECT_LT(std::abs(e[j] - f[j]), delta * delta);
        }
    }
}

TEST(bell, weak_arrival_examples) {
    const auto r = bell_weak_arrivals(pi / 4, 0.01, 1.0, Expansion::first_order);
    EXPECT_NEAR(r.value[0].real(), -49.5, 1e-9);
    EXPECT_NEAR(r.value[1].real(), -49.5, 1e-9);
    EXPECT_NEAR(r.probability, 5e-5, 1e-12);
    EXPECT_TRUE(r.correlated);

    // Exact angles: sin^2 - sin cos cot(0.01) and sin^2(0.01)/2 (40-digit values).
    const auto x = bell_weak_arrivals(pi / 4, 0.01, 1.0, Expansion::exact);
    EXPECT_NEAR(x.value[0].real(), -49.498333322222116, 1e-9);
    EXPECT_NEAR(x.value[1].real(), -49.498333322222116, 1e-9);
    EXPECT_NEAR(x.probability, 4.9998333355555397e-05, 1e-16);
}

TEST(bell, vertical_pre_angle_gives_epsilon) {
    for (double delta : {0.05, 0.01}) {
        for (auto e : {Expansion::exact, Expansion::first_order}) {
            const auto r = bell_weak_arrivals(pi / 2, delta, 0.7, e);
            EXPECT_NEAR(r.value[0].real(), 0.7, 1e-12);
            EXPECT_NEAR(r.value[1].real(), 0.7, 1e-12);
        }
    }
}

TEST(bell, components_equal_and_match_brute_force) {
    for (double theta : {0.2, pi / 4, 1.1, 2.5}) {
        for (double delta : {0.3, 0.05, -0.02, 0.004}) {
            const auto r = bell_weak_arrivals(theta, delta, 1.3, Expansion::exact);
            EXPECT_TRUE(r.correlated);
            const auto post = exact_post(theta, delta);
            for (int p = 0; p < 2; ++p) {
                const auto ref = brute_weak_value(post, 1.3, p);
                EXPECT_NEAR(std::abs(r.value[p] - ref), 0.0, 1e-10 * (1 + std::abs(ref)));
            }
            const double s = 1 / std::sqrt(2.0);
            const double ov = std::norm(oracle::dot(post, std::array<oracle::cd, 4>{s, 0, 0, s}));
            EXPECT_NEAR(r.probability, ov, 1e-15);
        }
    }
}

TEST(bell, first_order_closed_form) {
    for (double theta : {0.3, pi / 4, 1.0}) {
        for (double delta : {0.1, 0.01}) {
            const double v = bell_weak_arrival_first_order_closed_form(theta, delta, 2.0);
            const double ref = 2.0 * (std::sin(theta) * std::sin(theta) -
                                      std::sin(theta) * std::cos(theta) / delta);
            EXPECT_NEAR(v, ref, 1e-12 * std::abs(ref));
            const auto r = bell_weak_arrivals(theta, delta, 2.0, Expansion::first_order);
            EXPECT_NEAR(r.value[0].real(), ref, 1e-10 * std::abs(ref));
        }
    }
}

TEST(bell, zero_delta_is_orthogonal) {
    EXPECT_THROW(bell_weak_arrivals(pi / 4, 0.0, 1.0, Expansion::exact), OrthogonalSelection);
    EXPECT_THROW(bell_weak_arrivals(pi / 4, 0.0, 1.0, Expansion::first_order), OrthogonalSelection);
}

TEST(bell, divergence_is_monotone_and_probability_scales_as_delta_squared) {
    const auto deltas = oracle::logspace(1e-4, 1e-1, 12);
    std::vector<double> probs;
    double previous = 0.0;
    for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) {
        const auto r = bell_weak_arrivals(pi / 4, *it, 1.0, Expansion::exact);
        EXPECT_GT(std::abs(r.value[0]), previous);
        previous = std::abs(r.value[0]);
    }
    for (double d : deltas) probs.push_back(bell_weak_arrivals(pi / 4, d, 1.0, Expansion::exact).probability);
    EXPECT_NEAR(oracle::loglog_slope(deltas, probs), 2.0, 0.01);
}

TEST(bell, exact_and_first_order_values_agree_to_order_delta) {
    for (double delta : {0.1, 0.03, 0.01, 0.001}) {
        for (double theta : {0.3, pi / 4, 1.2}) {
            const auto e = bell_weak_arrivals(theta, delta, 1.0, Expansion::exact);
            const auto f = bell_weak_arrivals(theta, delta, 1.0, Expansion::first_order);
            EXPECT_LT(std::abs(e.value[0] - f.value[0]) / std::abs(e.value[0]), 3 * delta);
        }
    }
}

TEST(bell, evolution_state) {
    const auto s = bell_evolution_state(0.8, 1.0);
    EXPECT_NEAR(s.norm_sq(), 1.0, 1e-12);
    for (const auto &t : s.terms) {
        EXPECT_TRUE(t.label == TwoPhotonBasis::HH || t.label == TwoPhotonBasis::VV);
        if (t.label == TwoPhotonBasis::VV) {
            EXPECT_EQ(t.center1, 0.8);
            EXPECT_EQ(t.center2, 0.8);
        }
    }
    EXPECT_THROW(bell_evolution_state(1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(bell_evolution_state(-1.0, 1.0), std::invalid_argument);
}

TEST(bell, conditional_moments_match_hand_derived_formulas) {
    // After post-selection the wave is (1/sqrt2)[p G(y1)G(y2) + q G(y1-e)G(y2-e)].
    // Both coordinates share the overlap, so k enters squared.
    for (double theta : {0.3, pi / 4, 1.2}) {
        for (double delta : {0.4, 0.05}) {
            for (double eps : {0.1, 1.0, 3.0}) {
                const double sigma = 1.0;
                const auto post = exact_post(theta, delta);
                const double p = post[0].real();
                const double q = post[3].real();
                const double k2 = std::exp(-eps * eps / (2 * sigma * sigma));
                const double n = p * p + q * q + 2 * p * q * k2;
                const double mean = eps * (q * q + p * q * k2) / n;
                const double second = sigma * sigma / 2 + eps * eps * (q * q + p * q * k2 / 2) / n;
                const double cross = eps * eps * (q * q + p * q * k2 / 2) / n;

                const auto m = joint_moments(bell_conditional_wave(theta, delta, eps, sigma));
                EXPECT_NEAR(m.norm_sq, n / 2, 1e-12);
                EXPECT_NEAR(m.mean[0], mean, 1e-9 * (1 + std::abs(mean)));
                EXPECT_NEAR(m.mean[1], mean, 1e-9 * (1 + std::abs(mean)));
                EXPECT_NEAR(m.variance[0], second - mean * mean, 1e-8 * (1 + second));
                EXPECT_NEAR(m.covariance, cross - mean * mean, 1e-8 * (1 + cross));
            }
        }
    }
}

TEST(bell, quadrature_moments_match_closed_form) {
    for (double eps : {0.05, 1.0, 4.0}) {
        const auto w = bell_conditional_wave(pi / 4, 0.1, eps, 1.0);
        const auto a = joint_moments(w);
        const auto b = joint_quadrature_moments(w);
        EXPECT_NEAR(a.norm_sq, b.norm_sq, 1e-10);
        for (int i = 0; i < 2; ++i) {
            EXPECT_NEAR(a.mean[i], b.mean[i], 1e-8 * (1 + std::abs(a.mean[i])));
            EXPECT_NEAR(a.variance[i], b.variance[i], 1e-8 * (1 + a.variance[i]));
        }
        EXPECT_NEAR(a.covariance, b.covariance, 1e-8 * (1 + std::abs(a.covariance)));
    }
}

TEST(bell, weak_regime_pointer_mean_approaches_weak_value) {
    // eps/sigma = 0.01, theta = pi/4, delta = 0.05: eps (1/2 - 1/(2 delta)) = -0.095.
    const double eps = 0.01;
    const auto m = joint_quadrature_moments(bell_conditional_wave(pi / 4, 0.05, eps, 1.0));
    const double target = eps * (0.5 - 0.5 / 0.05);
    EXPECT_NEAR(m.mean[0], target, 0.05 * std::abs(target));
    EXPECT_NEAR(m.mean[1], target, 0.05 * std::abs(target));
}

TEST(bell, correlation_grows_with_separation) {
    double previous = -1.0;
    for (double eps : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double c = joint_moments(bell_conditional_wave(pi / 4, 0.1, eps, 1.0)).correlation();
        EXPECT_GT(c, previous);
        previous = c;
    }
    EXPECT_GT(previous, 0.9);
}
