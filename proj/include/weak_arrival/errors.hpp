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

#ifndef WEAK_ARRIVAL_ERRORS_HPP
#define WEAK_ARRIVAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace weak_arrival {

/// Base class for failures that come from the physics rather than from bad
/// input: the requested quantity does not exist for these parameters.
/// Invalid arguments (non-finite angles, sigma <= 0, ...) throw
/// std::invalid_argument instead.
class DomainError : public std::runtime_error {
   public:
    DomainError(std::string kind, const std::string &what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    /// Stable machine-readable tag, e.g. "orthogonal_selection".
    const std::string &kind() const noexcept { return kind_; }

   private:
    std::string kind_;
};

/// Pre- and post-selected states are orthogonal, so the weak value
/// denominator vanishes.
class OrthogonalSelection : public DomainError {
   public:
    explicit OrthogonalSelection(double overlap_magnitude);

    double overlap_magnitude() const noexcept { return overlap_; }

   private:
    double overlap_;
};

/// A conditional quantity was requested on an event of probability zero.
class UndefinedConditioning : public DomainError {
   public:
    explicit UndefinedConditioning(const std::string &what)
        : DomainError("undefined_conditioning", what) {}
};

/// tan or cot of the pre-selection angle diverges.
class DegenerateAngle : public DomainError {
   public:
    explicit DegenerateAngle(const std::string &what) : DomainError("degenerate_angle", what) {}
};

/// cos(theta + phi) = 0, so gamma = cos(theta - phi) / cos(theta + phi) is undefined.
class GammaSingular : public DomainError {
   public:
    explicit GammaSingular(const std::string &what) : DomainError("gamma_singular", what) {}
};

}  // namespace weak_arrival

#endif  // WEAK_ARRIVAL_ERRORS_HPP
