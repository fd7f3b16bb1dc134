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

#include "weak_arrival/polarization.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "weak_arrival/errors.hpp"

namespace weak_arrival {

OrthogonalSelection::OrthogonalSelection(double overlap_magnitude)
    : DomainError("orthogonal_selection",
                  [&] {
                      std::ostringstream msg;
                      msg << "pre- and post-selected states are orthogonal (|<post|pre>| = "
                          << overlap_magnitude << ")";
                      return msg.str();
                  }()),
      overlap_(overlap_magnitude) {}

PolarizationState PolarizationState::from_angle(double angle) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("polarization angle must be finite");
    }
    return PolarizationState(std::cos(angle), std::sin(angle));
}

PolarizationState PolarizationState::normalized(complex_t h, complex_t v) {
    const double n = std::sqrt(std::norm(h) + std::norm(v));
    if (!std::isfinite(n) || n == 0.0) {
        throw std::invalid_argument("cannot normalize a zero or non-finite polarization vector");
    }
    return PolarizationState(h / n, v / n);
}

double TwoPhotonState::norm_sq() const {
    double s = 0.0;
    for (const auto &a : amp_) s += std::norm(a);
    return s;
}

complex_t inner(const PolarizationState &a, const PolarizationState &b) {
    return std::conj(a.amp_h()) * b.amp_h() + std::conj(a.amp_v()) * b.amp_v();
}

complex_t inner(const TwoPhotonState &a, const TwoPhotonState &b) {
    complex_t s{};
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

TwoPhotonState bell_phi_plus() {
    const double r = std::numbers::sqrt2 / 2.0;
    return TwoPhotonState({r, 0.0, 0.0, r});
}

TwoPhotonState product_state(const PolarizationState &a, const PolarizationState &b) {
    return TwoPhotonState({a.amp_h() * b.amp_h(), a.amp_h() * b.amp_v(), a.amp_v() * b.amp_h(),
                           a.amp_v() * b.amp_v()});
}

}  // namespace weak_arrival
