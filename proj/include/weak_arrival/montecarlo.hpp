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

#ifndef WEAK_ARRIVAL_MONTECARLO_HPP
#define WEAK_ARRIVAL_MONTECARLO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "weak_arrival/bell.hpp"
#include "weak_arrival/errors.hpp"
#include "weak_arrival/pointer.hpp"
#include "weak_arrival/weakvalue.hpp"

namespace weak_arrival {

/// Random engine plus the stream-splitting rule. Trials are grouped in
/// fixed-size blocks; block i always draws from substream(seed, i), so
/// results do not depend on how many workers run the blocks.
class Rng {
   public:
    using Engine = std::mt19937_64;

    static constexpr std::string_view generator_id = "mt19937_64/splitmix64-substreams/v1";

    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    Engine &engine() { return engine_; }

   private:
    Engine engine_;
};

/// Piecewise-linear density on a uniform grid, sampled by exact inversion of
/// its (piecewise-quadratic) CDF.
class TabulatedDensity {
   public:
    TabulatedDensity() = default;
    /// `values` are the density at lo, lo + step, ..., hi; at least two
    /// points, all >= 0, positive total mass.
    TabulatedDensity(double lo, double hi, std::vector<double> values);

    /// Replaces the tabulated values on the same grid, reusing storage.
    void assign(std::span<const double> values);

    double sample(double u) const;
    double cdf(double y) const;
    double total_mass() const { return cumulative_.back(); }
    double lo() const { return lo_; }
    double hi() const { return lo_ + step_ * static_cast<double>(values_.size() - 1); }
    std::size_t size() const { return values_.size(); }

   private:
    void rebuild();

    double lo_ = 0.0;
    double step_ = 1.0;
    std::vector<double> values_;
    std::vector<double> cumulative_;
};

/// Inverse-CDF sampler for the conditional arrival density |psi(y)|^2 / norm^2.
class ArrivalSampler {
   public:
    ArrivalSampler(const PointerWave &wave, std::size_t grid_points = 4096);

    double operator()(Rng &rng) const { return table_.sample(rng.uniform()); }
    const TabulatedDensity &table() const { return table_; }

   private:
    TabulatedDensity table_;
};

/// One draw from |w(y)|^2 / norm_sq. Tabulates on every call; use
/// ArrivalSampler for repeated draws. Throws UndefinedConditioning unless
/// norm_sq > 0.
double sample_arrival(const PointerWave &w, double norm_sq, Rng &rng, std::size_t grid_points = 4096);

struct RunConfig {
    Apparatus apparatus;
    std::uint64_t n_trials = 100000;
    std::uint64_t seed = 0;
    std::size_t grid_points = 4096;
    /// 0 picks hardware concurrency capped by WEAK_ARRIVAL_THREADS.
    unsigned threads = 0;
    /// Keep successful arrival samples (block order) in the report.
    bool keep_samples = false;

    /// Throws std::invalid_argument unless n_trials >= 1 and grid_points >= 256.
    void validate() const;
};

struct BellRunConfig {
    double theta = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double sigma = 1.0;
    std::uint64_t n_trials = 100000;
    std::uint64_t seed = 0;
    std::size_t grid_points = 4096;
    unsigned threads = 0;
    bool keep_samples = false;

    void validate() const;
};

struct RunReport {
    std::uint64_t n_trials = 0;
    std::uint64_t n_success = 0;
    double empirical_probability = 0.0;
    double probability_standard_error = 0.0;  // binomial, from the analytic probability
    std::optional<double> empirical_mean_arrival;
    std::optional<double> sample_std;
    std::optional<double> standard_error;  // sample_std / sqrt(n_success)
    double analytic_mean = 0.0;
    double analytic_probability = 0.0;
    std::string generator{Rng::generator_id};
    std::vector<double> samples;  // only with keep_samples
};

struct BellRunReport {
    std::array<RunReport, 2> photon;
    /// Quadrature conditional means of (y1, y2).
    std::array<double, 2> quadrature_mean{};
    double analytic_correlation = 0.0;
    std::optional<double> empirical_correlation;
    /// Successes where the two photons' branch labels disagree.
    std::uint64_t branch_mismatches = 0;
    /// One Bernoulli draw decides success for both stations.
    bool shared_success = true;
};

/// Thrown when a run had no successful post-selection; carries the
/// probability-only report.
class InsufficientSamples : public DomainError {
   public:
    explicit InsufficientSamples(RunReport partial)
        : DomainError("insufficient_samples", "no trial passed post-selection"),
          partial_(std::move(partial)) {}

    const RunReport &partial() const noexcept { return partial_; }

   private:
    RunReport partial_;
};

/// i.i.d. single photons: each trial passes post-selection with the exact
/// probability norm^2, then y is drawn from the conditional pointer density.
/// Throws UndefinedConditioning on a zero-norm state and InsufficientSamples
/// when nothing passes.
RunReport run_single_photon(const RunConfig &cfg);

/// Bell pairs: one shared success draw per pair with the exact joint
/// probability, then (y1, y2) from the exact conditional 2-D density
/// (y1 from its marginal, y2 from the conditional given y1).
BellRunReport run_bell(const BellRunConfig &cfg);

/// Worker count actually used for `requested` (see RunConfig::threads).
unsigned resolve_threads(unsigned requested);

/// bin_left,bin_right,count rows over [min, max] of the samples.
void write_histogram_csv(std::ostream &out, std::span<const double> samples, std::size_t bins);

}  // namespace weak_arrival

#endif  // WEAK_ARRIVAL_MONTECARLO_HPP
