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

#include "weak_arrival/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

namespace weak_arrival {

namespace {

constexpr std::uint64_t kBlockTrials = 1u << 16;
constexpr double kWindowSigmas = 8.0;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Neumaier-compensated running sum.
class CompensatedSum {
   public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

   private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Sums of (y - ref) and (y - ref)^2 for one coordinate.
struct CoordinateSums {
    CompensatedSum first;
    CompensatedSum second;

    void add(double centered) {
        first.add(centered);
        second.add(centered * centered);
    }
    void merge(const CoordinateSums &o) {
        first.add(o.first.value());
        second.add(o.second.value());
    }
};

// Runs `work(block_index)` for every block on up to `threads` workers. Each
// block writes only its own result slot.
void for_each_block(std::uint64_t n_blocks, unsigned threads,
                    const std::function<void(std::uint64_t)> &work) {
    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_blocks));
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) work(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t b = next++; b < n_blocks; b = next++) work(b);
        });
    }
}

std::uint64_t block_trials(std::uint64_t n_trials, std::uint64_t block) {
    const std::uint64_t start = block * kBlockTrials;
    return std::min(kBlockTrials, n_trials - start);
}

void fill_moments(RunReport &report, const CoordinateSums &sums, double ref) {
    const auto n = static_cast<double>(report.n_success);
    const double s1 = sums.first.value();
    const double s2 = sums.second.value();
    report.empirical_mean_arrival = ref + s1 / n;
    if (report.n_success > 1) {
        const double var = std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0));
        report.sample_std = std::sqrt(var);
        report.standard_error = std::sqrt(var / n);
    }
}

RunReport probability_report(std::uint64_t n_trials, std::uint64_t n_success, double p) {
    RunReport r;
    r.n_trials = n_trials;
    r.n_success = n_success;
    r.empirical_probability = static_cast<double>(n_success) / static_cast<double>(n_trials);
    r.analytic_probability = p;
    r.probability_standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n_trials));
    return r;
}

std::vector<double> grid_nodes(double lo, double hi, std::size_t n) {
    std::vector<double> nodes(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = lo + step * static_cast<double>(i);
    nodes.back() = hi;
    return nodes;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

TabulatedDensity::TabulatedDensity(double lo, double hi, std::vector<double> values)
    : lo_(lo), values_(std::move(values)) {
    if (values_.size() < 2 || !(hi > lo)) {
        throw std::invalid_argument("tabulated density needs >= 2 points on a nonempty interval");
    }
    step_ = (hi - lo) / static_cast<double>(values_.size() - 1);
    rebuild();
}

void TabulatedDensity::assign(std::span<const double> values) {
    if (values.size() != values_.size()) {
        throw std::invalid_argument("tabulated density size mismatch");
    }
    std::copy(values.begin(), values.end(), values_.begin());
    rebuild();
}

void TabulatedDensity::rebuild() {
    cumulative_.resize(values_.size());
    cumulative_[0] = 0.0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0)) throw std::invalid_argument("density values must be >= 0");
        cumulative_[i] = cumulative_[i - 1] + 0.5 * step_ * (values_[i - 1] + values_[i]);
    }
    if (!(cumulative_.back() > 0.0)) {
        throw std::invalid_argument("tabulated density has zero mass");
    }
}

double TabulatedDensity::sample(double u) const {
    const double target = u * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    std::size_t cell = (it == cumulative_.begin()) ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    cell = std::min(cell, values_.size() - 2);
    // Linear density f0 + (f1 - f0) t on the cell: solve the quadratic CDF for t.
    const double f0 = values_[cell];
    const double f1 = values_[cell + 1];
    const double c = (target - cumulative_[cell]) / step_;
    const double disc = std::max(0.0, f0 * f0 + 2.0 * (f1 - f0) * c);
    const double denom = f0 + std::sqrt(disc);
    double t = 0.5;  // zero-mass cell: any point is as good as another
    if (c <= 0.0) {
        t = 0.0;
    } else if (denom > 0.0) {
        t = std::clamp(2.0 * c / denom, 0.0, 1.0);
    }
    return lo_ + step_ * (static_cast<double>(cell) + t);
}

double TabulatedDensity::cdf(double y) const {
    if (y <= lo_) return 0.0;
    if (y >= hi()) return 1.0;
    const double x = (y - lo_) / step_;
    const auto cell = std::min(static_cast<std::size_t>(x), values_.size() - 2);
    const double t = x - static_cast<double>(cell);
    const double f0 = values_[cell];
    const double f1 = values_[cell + 1];
    const double partial = step_ * (f0 * t + 0.5 * (f1 - f0) * t * t);
    return (cumulative_[cell] + partial) / cumulative_.back();
}

ArrivalSampler::ArrivalSampler(const PointerWave &wave, std::size_t grid_points) {
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
    const auto [lo_center, hi_center] = wave.center_range();
    const double lo = lo_center - kWindowSigmas * wave.sigma;
    const double hi = hi_center + kWindowSigmas * wave.sigma;
    std::vector<double> values;
    values.reserve(grid_points);
    for (double y : grid_nodes(lo, hi, grid_points)) values.push_back(density(wave, y));
    table_ = TabulatedDensity(lo, hi, std::move(values));
}

double sample_arrival(const PointerWave &w, double norm_sq, Rng &rng, std::size_t grid_points) {
    if (!(norm_sq > 0.0)) {
        throw UndefinedConditioning("cannot sample a zero-norm pointer state");
    }
    return ArrivalSampler(w, grid_points)(rng);
}

void RunConfig::validate() const {
    apparatus.validate();
    if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
    if (grid_points < 256) throw std::invalid_argument("grid_points must be >= 256");
}

void BellRunConfig::validate() const {
    if (!std::isfinite(theta) || !std::isfinite(delta)) {
        throw std::invalid_argument("theta and delta must be finite");
    }
    if (delta == 0.0) throw std::invalid_argument("delta must be nonzero");
    if (!std::isfinite(epsilon) || epsilon < 0.0) {
        throw std::invalid_argument("epsilon must be finite and >= 0");
    }
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw std::invalid_argument("sigma must be finite and > 0");
    }
    if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
    if (grid_points < 256) throw std::invalid_argument("grid_points must be >= 256");
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("WEAK_ARRIVAL_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        } catch (const std::exception &) {
            // unparsable cap: keep the hardware count
        }
    }
    return n;
}

RunReport run_single_photon(const RunConfig &cfg) {
    cfg.validate();
    const ExactMean exact = exact_mean_arrival(cfg.apparatus);
    const PointerWave wave = final_pointer_state(cfg.apparatus);
    const double p = std::min(1.0, exact.norm_sq);
    const ArrivalSampler sampler(wave, cfg.grid_points);
    const double ref = exact.mean;

    const std::uint64_t n_blocks = (cfg.n_trials + kBlockTrials - 1) / kBlockTrials;
    struct Block {
        std::uint64_t success = 0;
        CoordinateSums sums;
        std::vector<double> samples;
    };
    std::vector<Block> blocks(n_blocks);
    for_each_block(n_blocks, resolve_threads(cfg.threads), [&](std::uint64_t b) {
        Rng rng(cfg.seed, b);
        Block &out = blocks[b];
        const std::uint64_t n = block_trials(cfg.n_trials, b);
        for (std::uint64_t i = 0; i < n; ++i) {
            if (rng.uniform() >= p) continue;
            const double y = sampler(rng);
            ++out.success;
            out.sums.add(y - ref);
            if (cfg.keep_samples) out.samples.push_back(y);
        }
    });

    std::uint64_t n_success = 0;
    CoordinateSums sums;
    std::vector<double> samples;
    for (const auto &blk : blocks) {
        n_success += blk.success;
        sums.merge(blk.sums);
        samples.insert(samples.end(), blk.samples.begin(), blk.samples.end());
    }

    RunReport report = probability_report(cfg.n_trials, n_success, p);
    report.analytic_mean = exact.mean;
    report.samples = std::move(samples);
    if (n_success == 0) throw InsufficientSamples(std::move(report));
    fill_moments(report, sums, ref);
    return report;
}

BellRunReport run_bell(const BellRunConfig &cfg) {
    cfg.validate();
    const JointPointerWave wave = bell_conditional_wave(cfg.theta, cfg.delta, cfg.epsilon, cfg.sigma);
    const JointMoments exact = joint_moments(wave);
    const JointMoments quad = joint_quadrature_moments(wave);
    const double p = std::min(1.0, exact.norm_sq);

    double lo_center = 0.0;
    double hi_center = 0.0;
    for (const auto &t : wave.terms) {
        lo_center = std::min({lo_center, t.center1, t.center2});
        hi_center = std::max({hi_center, t.center1, t.center2});
    }
    const double lo = lo_center - kWindowSigmas * cfg.sigma;
    const double hi = hi_center + kWindowSigmas * cfg.sigma;
    const std::vector<double> nodes = grid_nodes(lo, hi, cfg.grid_points);

    // Marginal of y1: sum_jk conj(c_j) c_k G(y1 - x1_j) G(y1 - x1_k) <G_x2j|G_x2k>.
    std::vector<double> marginal(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double m = 0.0;
        for (const auto &tj : wave.terms) {
            for (const auto &tk : wave.terms) {
                m += (std::conj(tj.coefficient) * tk.coefficient).real() *
                     gaussian_envelope(nodes[i] - tj.center1, cfg.sigma) *
                     gaussian_envelope(nodes[i] - tk.center1, cfg.sigma) *
                     envelope_overlap(tj.center2 - tk.center2, cfg.sigma);
            }
        }
        marginal[i] = std::max(0.0, m);
    }
    const TabulatedDensity marginal_table(lo, hi, std::move(marginal));

    // Envelopes of every term along y2, shared by all conditional draws.
    std::vector<std::vector<double>> envelopes2;
    for (const auto &t : wave.terms) {
        std::vector<double> g(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            g[i] = gaussian_envelope(nodes[i] - t.center2, cfg.sigma);
        }
        envelopes2.push_back(std::move(g));
    }
    const TabulatedDensity conditional_template(lo, hi, std::vector<double>(nodes.size(), 1.0));

    const std::array<double, 2> ref = exact.mean;
    const std::uint64_t n_blocks = (cfg.n_trials + kBlockTrials - 1) / kBlockTrials;
    struct Block {
        std::uint64_t success = 0;
        std::uint64_t mismatches = 0;
        std::array<CoordinateSums, 2> sums;
        CompensatedSum cross;
        std::array<std::vector<double>, 2> samples;
    };
    std::vector<Block> blocks(n_blocks);
    for_each_block(n_blocks, resolve_threads(cfg.threads), [&](std::uint64_t b) {
        Rng rng(cfg.seed, b);
        Block &out = blocks[b];
        TabulatedDensity conditional = conditional_template;
        std::vector<double> values(nodes.size());
        std::vector<complex_t> alpha(wave.terms.size());
        std::vector<double> branch_weight(wave.terms.size());
        const std::uint64_t n = block_trials(cfg.n_trials, b);
        for (std::uint64_t i = 0; i < n; ++i) {
            if (rng.uniform() >= p) continue;
            const double y1 = marginal_table.sample(rng.uniform());
            for (std::size_t j = 0; j < wave.terms.size(); ++j) {
                alpha[j] = wave.terms[j].coefficient *
                           gaussian_envelope(y1 - wave.terms[j].center1, cfg.sigma);
            }
            for (std::size_t g = 0; g < nodes.size(); ++g) {
                complex_t psi{};
                for (std::size_t j = 0; j < alpha.size(); ++j) psi += alpha[j] * envelopes2[j][g];
                values[g] = std::norm(psi);
            }
            conditional.assign(values);
            const double y2 = conditional.sample(rng.uniform());

            // Branch label of the pair: pick a term by its own weight at (y1, y2).
            double total = 0.0;
            for (std::size_t j = 0; j < alpha.size(); ++j) {
                branch_weight[j] =
                    std::norm(alpha[j] * gaussian_envelope(y2 - wave.terms[j].center2, cfg.sigma));
                total += branch_weight[j];
            }
            double pick = rng.uniform() * total;
            std::size_t chosen = alpha.size() - 1;
            for (std::size_t j = 0; j < alpha.size(); ++j) {
                if (pick < branch_weight[j]) {
                    chosen = j;
                    break;
                }
                pick -= branch_weight[j];
            }
            const auto label = TwoPhotonState::basis_labels[static_cast<std::size_t>(wave.terms[chosen].branch)];
            if (label[0] != label[1]) ++out.mismatches;

            ++out.success;
            out.sums[0].add(y1 - ref[0]);
            out.sums[1].add(y2 - ref[1]);
            out.cross.add((y1 - ref[0]) * (y2 - ref[1]));
            if (cfg.keep_samples) {
                out.samples[0].push_back(y1);
                out.samples[1].push_back(y2);
            }
        }
    });

    std::uint64_t n_success = 0;
    std::uint64_t mismatches = 0;
    std::array<CoordinateSums, 2> sums;
    CompensatedSum cross;
    std::array<std::vector<double>, 2> samples;
    for (const auto &blk : blocks) {
        n_success += blk.success;
        mismatches += blk.mismatches;
        for (int c = 0; c < 2; ++c) {
            sums[c].merge(blk.sums[c]);
            samples[c].insert(samples[c].end(), blk.samples[c].begin(), blk.samples[c].end());
        }
        cross.add(blk.cross.value());
    }

    BellRunReport report;
    for (int c = 0; c < 2; ++c) {
        report.photon[c] = probability_report(cfg.n_trials, n_success, p);
        report.photon[c].analytic_mean = exact.mean[c];
        report.photon[c].samples = std::move(samples[c]);
    }
    report.quadrature_mean = quad.mean;
    report.analytic_correlation = quad.correlation();
    report.branch_mismatches = mismatches;
    if (n_success == 0) throw InsufficientSamples(report.photon[0]);
    for (int c = 0; c < 2; ++c) fill_moments(report.photon[c], sums[c], ref[c]);
    if (n_success > 1) {
        const auto n = static_cast<double>(n_success);
        const double cov = (cross.value() - sums[0].first.value() * sums[1].first.value() / n) / (n - 1.0);
        const double s0 = *report.photon[0].sample_std;
        const double s1 = *report.photon[1].sample_std;
        if (s0 > 0.0 && s1 > 0.0) report.empirical_correlation = cov / (s0 * s1);
    }
    return report;
}

void write_histogram_csv(std::ostream &out, std::span<const double> samples, std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    out << "bin_left,bin_right,count\n";
    if (samples.empty()) return;
    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *min_it;
    double hi = *max_it;
    if (hi == lo) hi = lo + 1.0;
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::uint64_t> counts(bins, 0);
    for (double y : samples) {
        auto i = static_cast<std::size_t>((y - lo) / width);
        counts[std::min(i, bins - 1)]++;
    }
    out.precision(17);
    for (std::size_t i = 0; i < bins; ++i) {
        const double left = lo + width * static_cast<double>(i);
        const double right = (i + 1 == bins) ? hi : lo + width * static_cast<double>(i + 1);
        out << left << ',' << right << ',' << counts[i] << '\n';
    }
}

}  // namespace weak_arrival
