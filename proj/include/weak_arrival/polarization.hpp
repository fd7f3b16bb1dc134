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

#ifndef WEAK_ARRIVAL_POLARIZATION_HPP
#define WEAK_ARRIVAL_POLARIZATION_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

namespace weak_arrival {

using complex_t = std::complex<double>;

/// Single-photon polarization state over the (H, V) basis.
///
/// Amplitudes are complex so that general weak values can be represented,
/// although every state built from an angle has zero imaginary parts.
class PolarizationState {
   public:
    /// |H>.
    PolarizationState() = default;

    /// cos(angle)|H> + sin(angle)|V>. Throws std::invalid_argument on a
    /// non-finite angle.
    static PolarizationState from_angle(double angle);

    /// Normalizes (h, v). Throws std::invalid_argument on a zero or
    /// non-finite vector.
    static PolarizationState normalized(complex_t h, complex_t v);

    /// Stores (h, v) as given, no normalization.
    static PolarizationState raw(complex_t h, complex_t v) { return PolarizationState(h, v); }

    static PolarizationState horizontal() { return PolarizationState(1.0, 0.0); }
    static PolarizationState vertical() { return PolarizationState(0.0, 1.0); }

    complex_t amp_h() const { return amp_[0]; }
    complex_t amp_v() const { return amp_[1]; }
    complex_t operator[](std::size_t i) const { return amp_[i]; }
    const std::array<complex_t, 2> &amplitudes() const { return amp_; }

    double norm_sq() const { return std::norm(amp_[0]) + std::norm(amp_[1]); }

    static constexpr std::array<std::string_view, 2> basis_labels{"H", "V"};

   private:
    PolarizationState(complex_t h, complex_t v) : amp_{h, v} {}

    std::array<complex_t, 2> amp_{complex_t{1.0, 0.0}, complex_t{0.0, 0.0}};
};

/// Product basis labels, in storage order.
enum class TwoPhotonBasis : std::size_t { HH = 0, HV = 1, VH = 2, VV = 3 };

/// Two-photon polarization state over (HH, HV, VH, VV).
class TwoPhotonState {
   public:
    TwoPhotonState() = default;

    /// Stores the four amplitudes as given (no normalization); used for
    /// truncated expansions that are not unit vectors.
    explicit TwoPhotonState(const std::array<complex_t, 4> &amp) : amp_(amp) {}

    complex_t amp(TwoPhotonBasis label) const { return amp_[static_cast<std::size_t>(label)]; }
    complex_t operator[](std::size_t i) const { return amp_[i]; }
    const std::array<complex_t, 4> &amplitudes() const { return amp_; }

    double norm_sq() const;

    static constexpr std::array<std::string_view, 4> basis_labels{"HH", "HV", "VH", "VV"};

   private:
    std::array<complex_t, 4> amp_{};
};

/// <a|b>, conjugate-linear in the first argument.
complex_t inner(const PolarizationState &a, const PolarizationState &b);
complex_t inner(const TwoPhotonState &a, const TwoPhotonState &b);

/// (|HH> + |VV>) / sqrt(2).
TwoPhotonState bell_phi_plus();

/// a (x) b with amp_XY = a_X * b_Y.
TwoPhotonState product_state(const PolarizationState &a, const PolarizationState &b);

}  // namespace weak_arrival

#endif  // WEAK_ARRIVAL_POLARIZATION_HPP
