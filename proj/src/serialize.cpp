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

#include "weak_arrival/serialize.hpp"

#include <stdexcept>
#include <string>

namespace weak_arrival {

namespace {

template <std::size_t N>
nlohmann::json state_json(const std::array<std::string_view, N> &labels,
                          const std::array<complex_t, N> &amp) {
    nlohmann::json basis = nlohmann::json::array();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (std::size_t i = 0; i < N; ++i) {
        basis.push_back(std::string(labels[i]));
        re.push_back(amp[i].real());
        im.push_back(amp[i].imag());
    }
    return {{"basis", basis}, {"re", re}, {"im", im}};
}

template <std::size_t N>
std::array<complex_t, N> state_amplitudes(const nlohmann::json &j,
                                          const std::array<std::string_view, N> &labels) {
    const auto &basis = j.at("basis");
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (basis.size() != N || re.size() != N || im.size() != N) {
        throw std::invalid_argument("state JSON has the wrong number of components");
    }
    std::array<complex_t, N> amp{};
    for (std::size_t i = 0; i < N; ++i) {
        if (basis[i].get<std::string>() != labels[i]) {
            throw std::invalid_argument("state JSON basis order must be fixed");
        }
        amp[i] = {re[i].get<double>(), im[i].get<double>()};
    }
    return amp;
}

nlohmann::json optional_json(const std::optional<double> &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_from(const nlohmann::json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

void to_json(nlohmann::json &j, const PolarizationState &s) {
    j = state_json(PolarizationState::basis_labels, s.amplitudes());
}

void from_json(const nlohmann::json &j, PolarizationState &s) {
    const auto amp = state_amplitudes(j, PolarizationState::basis_labels);
    s = PolarizationState::raw(amp[0], amp[1]);
}

void to_json(nlohmann::json &j, const TwoPhotonState &s) {
    j = state_json(TwoPhotonState::basis_labels, s.amplitudes());
}

void from_json(const nlohmann::json &j, TwoPhotonState &s) {
    s = TwoPhotonState(state_amplitudes(j, TwoPhotonState::basis_labels));
}

void to_json(nlohmann::json &j, const Apparatus &a) {
    j = {{"theta", a.theta}, {"phi", a.phi}, {"epsilon", a.epsilon}, {"sigma", a.sigma}, {"c", a.c}};
}

void from_json(const nlohmann::json &j, Apparatus &a) {
    a.theta = j.at("theta").get<double>();
    a.phi = j.at("phi").get<double>();
    a.epsilon = j.at("epsilon").get<double>();
    a.sigma = j.at("sigma").get<double>();
    a.c = j.value("c", 1.0);
}

Regime regime_from_string(std::string_view s) {
    for (auto r : {Regime::weak, Regime::intermediate, Regime::strong}) {
        if (to_string(r) == s) return r;
    }
    throw std::invalid_argument("unknown regime '" + std::string(s) + "'");
}

void to_json(nlohmann::json &j, const WeakResult &r) {
    j = {{"value", r.value.real()},
         {"value_imag", r.value.imag()},
         {"probability", r.probability},
         {"regime", std::string(to_string(r.regime_note))}};
}

void from_json(const nlohmann::json &j, WeakResult &r) {
    r.value = {j.at("value").get<double>(), j.value("value_imag", 0.0)};
    r.probability = j.at("probability").get<double>();
    r.regime_note = regime_from_string(j.at("regime").get<std::string>());
}

void to_json(nlohmann::json &j, const JointWeakResult &r) {
    j = {{"value", {r.value[0].real(), r.value[1].real()}},
         {"value_imag", {r.value[0].imag(), r.value[1].imag()}},
         {"probability", r.probability},
         {"correlated", r.correlated}};
}

void from_json(const nlohmann::json &j, JointWeakResult &r) {
    const auto &re = j.at("value");
    const auto &im = j.at("value_imag");
    for (std::size_t i = 0; i < 2; ++i) r.value[i] = {re.at(i).get<double>(), im.at(i).get<double>()};
    r.probability = j.at("probability").get<double>();
    r.correlated = j.at("correlated").get<bool>();
}

void to_json(nlohmann::json &j, const RunReport &r) {
    j = {{"n_trials", r.n_trials},
         {"n_success", r.n_success},
         {"empirical_probability", r.empirical_probability},
         {"probability_standard_error", r.probability_standard_error},
         {"empirical_mean_arrival", optional_json(r.empirical_mean_arrival)},
         {"sample_std", optional_json(r.sample_std)},
         {"standard_error", optional_json(r.standard_error)},
         {"analytic_mean", r.analytic_mean},
         {"analytic_probability", r.analytic_probability},
         {"generator", r.generator}};
}

void from_json(const nlohmann::json &j, RunReport &r) {
    r.n_trials = j.at("n_trials").get<std::uint64_t>();
    r.n_success = j.at("n_success").get<std::uint64_t>();
    r.empirical_probability = j.at("empirical_probability").get<double>();
    r.probability_standard_error = j.at("probability_standard_error").get<double>();
    r.empirical_mean_arrival = optional_from(j, "empirical_mean_arrival");
    r.sample_std = optional_from(j, "sample_std");
    r.standard_error = optional_from(j, "standard_error");
    r.analytic_mean = j.at("analytic_mean").get<double>();
    r.analytic_probability = j.at("analytic_probability").get<double>();
    r.generator = j.at("generator").get<std::string>();
    r.samples.clear();
}

void to_json(nlohmann::json &j, const BellRunReport &r) {
    j = {{"photon1", r.photon[0]},
         {"photon2", r.photon[1]},
         {"quadrature_mean", r.quadrature_mean},
         {"analytic_correlation", r.analytic_correlation},
         {"empirical_correlation", optional_json(r.empirical_correlation)},
         {"branch_mismatches", r.branch_mismatches},
         {"shared_success", r.shared_success}};
}

}  // namespace weak_arrival
