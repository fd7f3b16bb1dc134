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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weak_arrival/bell.hpp"
#include "weak_arrival/errors.hpp"
#include "weak_arrival/montecarlo.hpp"
#include "weak_arrival/pointer.hpp"
#include "weak_arrival/polarization.hpp"
#include "weak_arrival/weakvalue.hpp"

namespace py = pybind11;
namespace wa = weak_arrival;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weak values, exact pointer means and Monte Carlo runs for photon arrival times";
    m.attr("__version__") = "0.1.0";

    auto domain_error = py::register_exception<wa::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<wa::OrthogonalSelection>(m, "OrthogonalSelection", domain_error.ptr());
    py::register_exception<wa::UndefinedConditioning>(m, "UndefinedConditioning", domain_error.ptr());
    py::register_exception<wa::DegenerateAngle>(m, "DegenerateAngle", domain_error.ptr());
    py::register_exception<wa::GammaSingular>(m, "GammaSingular", domain_error.ptr());
    py::register_exception<wa::InsufficientSamples>(m, "InsufficientSamples", domain_error.ptr());

    py::class_<wa::PolarizationState>(m, "PolarizationState")
        .def_static("from_angle", &wa::PolarizationState::from_angle, py::arg("angle"))
        .def_static("normalized", &wa::PolarizationState::normalized, py::arg("h"), py::arg("v"))
        .def_property_readonly("amp_h", &wa::PolarizationState::amp_h)
        .def_property_readonly("amp_v", &wa::PolarizationState::amp_v)
        .def("__repr__", [](const wa::PolarizationState &s) {
            return "PolarizationState(" + py::repr(py::cast(s.amp_h())).cast<std::string>() + ", " +
                   py::repr(py::cast(s.amp_v())).cast<std::string>() + ")";
        });

    m.def("inner", py::overload_cast<const wa::PolarizationState &, const wa::PolarizationState &>(&wa::inner),
          py::arg("a"), py::arg("b"));

    py::enum_<wa::Regime>(m, "Regime")
        .value("weak", wa::Regime::weak)
        .value("intermediate", wa::Regime::intermediate)
        .value("strong", wa::Regime::strong);

    py::class_<wa::Apparatus>(m, "Apparatus")
        .def(py::init([](double theta, double phi, double epsilon, double sigma, double c) {
                 wa::Apparatus a{theta, phi, epsilon, sigma, c};
                 a.validate();
                 return a;
             }),
             py::arg("theta"), py::arg("phi"), py::arg("epsilon"), py::arg("sigma") = 1.0, py::arg("c") = 1.0)
        .def_readwrite("theta", &wa::Apparatus::theta)
        .def_readwrite("phi", &wa::Apparatus::phi)
        .def_readwrite("epsilon", &wa::Apparatus::epsilon)
        .def_readwrite("sigma", &wa::Apparatus::sigma)
        .def_readwrite("c", &wa::Apparatus::c)
        .def_property_readonly("weak_ratio", &wa::Apparatus::weak_ratio);

    py::class_<wa::WeakResult>(m, "WeakResult")
        .def_readonly("value", &wa::WeakResult::value)
        .def_readonly("probability", &wa::WeakResult::probability)
        .def_readonly("regime", &wa::WeakResult::regime_note);

    m.def("weak_arrival", [](const wa::Apparatus &app) { return wa::weak_arrival(app); }, py::arg("apparatus"));
    m.def("weak_arrival_delta_approx", &wa::weak_arrival_delta_approx, py::arg("theta"), py::arg("delta"),
          py::arg("epsilon"));
    m.def(
        "abl_probabilities",
        [](const wa::PolarizationState &pre, const wa::PolarizationState &post) {
            const auto p = wa::abl_probabilities(pre, post);
            return py::make_tuple(p.prob_h, p.prob_v);
        },
        py::arg("pre"), py::arg("post"));
    m.def("abl_mean_arrival", &wa::abl_mean_arrival, py::arg("pre"), py::arg("post"), py::arg("epsilon"));
    m.def("sigma_from_linewidth", &wa::sigma_from_linewidth, py::arg("delta_nu"), py::arg("c") = 1.0);

    py::class_<wa::ExactMean>(m, "ExactMean")
        .def_readonly("mean", &wa::ExactMean::mean)
        .def_readonly("norm_sq", &wa::ExactMean::norm_sq)
        .def_readonly("weak_norm_mean", &wa::ExactMean::weak_norm_mean)
        .def_readonly("weak_norm_sq", &wa::ExactMean::weak_norm_sq);

    m.def("exact_mean_arrival", &wa::exact_mean_arrival, py::arg("apparatus"));
    m.def("quadrature_mean", py::overload_cast<const wa::Apparatus &>(&wa::quadrature_mean), py::arg("apparatus"));

    py::class_<wa::JointWeakResult>(m, "JointWeakResult")
        .def_readonly("value", &wa::JointWeakResult::value)
        .def_readonly("probability", &wa::JointWeakResult::probability)
        .def_readonly("correlated", &wa::JointWeakResult::correlated);

    m.def(
        "bell_weak_arrivals",
        [](double theta, double delta, double epsilon, const std::string &expansion) {
            return wa::bell_weak_arrivals(theta, delta, epsilon, wa::expansion_from_string(expansion));
        },
        py::arg("theta"), py::arg("delta"), py::arg("epsilon"), py::arg("expansion") = "exact");

    py::class_<wa::RunReport>(m, "RunReport")
        .def_readonly("n_trials", &wa::RunReport::n_trials)
        .def_readonly("n_success", &wa::RunReport::n_success)
        .def_readonly("empirical_probability", &wa::RunReport::empirical_probability)
        .def_readonly("probability_standard_error", &wa::RunReport::probability_standard_error)
        .def_readonly("empirical_mean_arrival", &wa::RunReport::empirical_mean_arrival)
        .def_readonly("standard_error", &wa::RunReport::standard_error)
        .def_readonly("analytic_mean", &wa::RunReport::analytic_mean)
        .def_readonly("analytic_probability", &wa::RunReport::analytic_probability)
        .def_readonly("generator", &wa::RunReport::generator);

    py::class_<wa::BellRunReport>(m, "BellRunReport")
        .def_readonly("photon", &wa::BellRunReport::photon)
        .def_readonly("quadrature_mean", &wa::BellRunReport::quadrature_mean)
        .def_readonly("analytic_correlation", &wa::BellRunReport::analytic_correlation)
        .def_readonly("empirical_correlation", &wa::BellRunReport::empirical_correlation)
        .def_readonly("branch_mismatches", &wa::BellRunReport::branch_mismatches)
        .def_readonly("shared_success", &wa::BellRunReport::shared_success);

    m.def(
        "run_single_photon",
        [](const wa::Apparatus &app, std::uint64_t n_trials, std::uint64_t seed, std::size_t grid_points,
           unsigned threads) {
            wa::RunConfig cfg;
            cfg.apparatus = app;
            cfg.n_trials = n_trials;
            cfg.seed = seed;
            cfg.grid_points = grid_points;
            cfg.threads = threads;
            py::gil_scoped_release release;
            return wa::run_single_photon(cfg);
        },
        py::arg("apparatus"), py::arg("n_trials"), py::arg("seed") = 0, py::arg("grid_points") = 4096,
        py::arg("threads") = 0);

    m.def(
        "run_bell",
        [](double theta, double delta, double epsilon, double sigma, std::uint64_t n_trials, std::uint64_t seed,
           std::size_t grid_points, unsigned threads) {
            wa::BellRunConfig cfg;
            cfg.theta = theta;
            cfg.delta = delta;
            cfg.epsilon = epsilon;
            cfg.sigma = sigma;
            cfg.n_trials = n_trials;
            cfg.seed = seed;
            cfg.grid_points = grid_points;
            cfg.threads = threads;
            py::gil_scoped_release release;
            return wa::run_bell(cfg);
        },
        py::arg("theta"), py::arg("delta"), py::arg("epsilon"), py::arg("sigma") = 1.0, py::arg("n_trials") = 100000,
        py::arg("seed") = 0, py::arg("grid_points") = 4096, py::arg("threads") = 0);
}
