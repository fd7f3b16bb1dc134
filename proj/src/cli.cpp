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

#include "weak_arrival/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <stdexcept>

#include "weak_arrival/bell.hpp"
#include "weak_arrival/errors.hpp"
#include "weak_arrival/montecarlo.hpp"
#include "weak_arrival/pointer.hpp"
#include "weak_arrival/serialize.hpp"

namespace weak_arrival {

namespace {

using nlohmann::json;

enum class Format { json, csv };

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

Format parse_format(const std::string &s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw UsageError("--format must be json or csv");
}

std::uint64_t parse_count(const std::string &text, const char *name) {
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v) || v < 1.0 || v > 0x1.0p53 ||
        v != std::floor(v)) {
        throw UsageError(std::string(name) + " must be a positive integer (got '" + text + "')");
    }
    return static_cast<std::uint64_t>(v);
}

std::string csv_cell(const std::optional<double> &v) { return v ? format_double(*v) : ""; }

std::string csv_quote(const std::string &s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

// Writes a header row and one value row.
void write_record_csv(std::ostream &out, const std::vector<std::pair<std::string, std::string>> &cols) {
    out << kCsvVersionLine << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].first;
    out << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].second;
    out << '\n';
}

void emit_domain_error(std::ostream &out, std::ostream &err, Format fmt, const DomainError &e,
                       const json &extra = json::object()) {
    err << "error: " << e.what() << '\n';
    json j = {{"error", e.kind()}, {"message", e.what()}};
    if (const auto *o = dynamic_cast<const OrthogonalSelection *>(&e)) {
        j["overlap"] = o->overlap_magnitude();
    }
    j.update(extra);
    if (fmt == Format::json) {
        out << j.dump(2) << '\n';
        return;
    }
    write_record_csv(out, {{"error", e.kind()}, {"message", csv_quote(e.what())}});
}

// ---- weak ---------------------------------------------------------------

struct WeakArgs {
    std::string theta = "0";
    std::string phi = "0";
    double epsilon = 1.0;
    double sigma = 1.0;
    double c = 1.0;
    RegimeThresholds thresholds;
    std::string format = "json";
};

int cmd_weak(const WeakArgs &args, std::ostream &out, std::ostream &err) {
    const Format fmt = parse_format(args.format);
    Apparatus app{parse_angle(args.theta), parse_angle(args.phi), args.epsilon, args.sigma, args.c};
    app.validate();
    WeakResult r;
    try {
        r = weak_arrival(app, args.thresholds);
    } catch (const DomainError &e) {
        emit_domain_error(out, err, fmt, e, {{"apparatus", app}});
        return kExitDomain;
    }
    const ExactMean exact = exact_mean_arrival(app);
    const auto pre = PolarizationState::from_angle(app.theta);
    const auto post = PolarizationState::from_angle(app.phi);
    const double abl = abl_mean_arrival(pre, post, app.epsilon);

    if (fmt == Format::json) {
        json j = {{"command", "weak"}, {"apparatus", app}, {"weak_ratio", app.weak_ratio()}};
        j.update(json(r));
        j["arrival_time"] = r.value.real() / app.c;
        j["exact_mean"] = exact.mean;
        j["exact_probability"] = exact.norm_sq;
        j["abl_mean"] = abl;
        out << j.dump(2) << '\n';
    } else {
        write_record_csv(out, {{"theta", format_double(app.theta)},
                               {"phi", format_double(app.phi)},
                               {"epsilon", format_double(app.epsilon)},
                               {"sigma", format_double(app.sigma)},
                               {"c", format_double(app.c)},
                               {"value", format_double(r.value.real())},
                               {"value_imag", format_double(r.value.imag())},
                               {"arrival_time", format_double(r.value.real() / app.c)},
                               {"probability", format_double(r.probability)},
                               {"regime", std::string(to_string(r.regime_note))},
                               {"exact_mean", format_double(exact.mean)},
                               {"exact_probability", format_double(exact.norm_sq)},
                               {"abl_mean", format_double(abl)}});
    }
    return 0;
}

// ---- sweep --------------------------------------------------------------

struct SweepArgs {
    std::string variable = "theta";
    std::string start;
    std::string stop;
    std::size_t steps = 11;
    bool log_spacing = false;
    std::string theta = "0";
    std::string phi = "0";
    bool phi_follows_theta = false;
    double epsilon = 1.0;
    double sigma = 1.0;
    double c = 1.0;
    std::string format = "csv";
};

double parse_sweep_endpoint(SweepVariable v, const std::string &text) {
    if (v == SweepVariable::epsilon_over_sigma) {
        char *end = nullptr;
        const double x = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0') throw UsageError("bad sweep endpoint '" + text + "'");
        return x;
    }
    return parse_angle(text);
}

int cmd_sweep(const SweepArgs &args, std::ostream &out) {
    const Format fmt = parse_format(args.format);
    SweepSpec spec;
    spec.variable = sweep_variable_from_string(args.variable);
    spec.start = parse_sweep_endpoint(spec.variable, args.start);
    spec.stop = parse_sweep_endpoint(spec.variable, args.stop);
    spec.steps = args.steps;
    spec.log_spacing = args.log_spacing;
    spec.fixed = {parse_angle(args.theta), parse_angle(args.phi), args.epsilon, args.sigma, args.c};
    spec.phi_follows_theta = args.phi_follows_theta;
    const auto rows = run_sweep(spec);

    if (fmt == Format::csv) {
        write_sweep_csv(out, rows);
        return 0;
    }
    auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(nullptr); };
    json jrows = json::array();
    for (const auto &r : rows) {
        jrows.push_back({{"variable", r.variable},
                         {"weak_value", opt(r.weak_value)},
                         {"exact_mean", opt(r.exact_mean)},
                         {"abl_mean", opt(r.abl_mean)},
                         {"probability_weak", opt(r.probability_weak)},
                         {"probability_exact", opt(r.probability_exact)},
                         {"status", r.status}});
    }
    json j = {{"command", "sweep"},
              {"schema", std::string(kCsvVersionLine.substr(2))},
              {"variable", std::string(to_string(spec.variable))},
              {"fixed", spec.fixed},
              {"rows", jrows}};
    out << j.dump(2) << '\n';
    return 0;
}

// ---- Monte Carlo shared options -------------------------------------------

struct McArgs {
    std::string trials = "100000";
    std::uint64_t seed = 0;
    std::size_t grid_points = 4096;
    unsigned threads = 0;
};

void add_mc_options(CLI::App *cmd, McArgs &mc) {
    cmd->add_option("--trials", mc.trials, "Number of trials (accepts 1e6 style)");
    cmd->add_option("--seed", mc.seed, "64-bit RNG seed");
    cmd->add_option("--grid-points", mc.grid_points, "Density tabulation points (>= 256)");
    cmd->add_option("--threads", mc.threads, "Worker threads (0: auto, capped by WEAK_ARRIVAL_THREADS)");
}

// ---- bell ---------------------------------------------------------------

struct BellArgs {
    std::string theta = "0";
    std::string delta;
    double epsilon = 1.0;
    double sigma = 1.0;
    std::string expansion = "exact";
    bool mc = false;
    McArgs run;
    std::string format = "json";
};

int cmd_bell(const BellArgs &args, std::ostream &out, std::ostream &err) {
    const Format fmt = parse_format(args.format);
    const double theta = parse_angle(args.theta);
    const double delta = parse_angle(args.delta);
    const Expansion expansion = expansion_from_string(args.expansion);
    const Expansion other = expansion == Expansion::exact ? Expansion::first_order : Expansion::exact;
    if (!std::isfinite(args.sigma) || args.sigma <= 0.0 || !std::isfinite(args.epsilon) || args.epsilon < 0.0) {
        throw UsageError("need sigma > 0 and epsilon >= 0");
    }
    const json params = {{"theta", theta}, {"delta", delta}, {"epsilon", args.epsilon}, {"sigma", args.sigma}};

    JointWeakResult primary;
    JointWeakResult alternate;
    try {
        primary = bell_weak_arrivals(theta, delta, args.epsilon, expansion);
        alternate = bell_weak_arrivals(theta, delta, args.epsilon, other);
    } catch (const DomainError &e) {
        emit_domain_error(out, err, fmt, e, {{"parameters", params}});
        return kExitDomain;
    }
    const JointMoments pointer = joint_moments(bell_conditional_wave(theta, delta, args.epsilon, args.sigma));

    std::optional<BellRunReport> mc;
    int status = 0;
    json mc_error;
    if (args.mc) {
        BellRunConfig cfg;
        cfg.theta = theta;
        cfg.delta = delta;
        cfg.epsilon = args.epsilon;
        cfg.sigma = args.sigma;
        cfg.n_trials = parse_count(args.run.trials, "--trials");
        cfg.seed = args.run.seed;
        cfg.grid_points = args.run.grid_points;
        cfg.threads = args.run.threads;
        try {
            mc = run_bell(cfg);
        } catch (const InsufficientSamples &e) {
            err << "error: " << e.what() << '\n';
            mc_error = {{"error", e.kind()}, {"message", e.what()}, {"partial", e.partial()}};
            status = kExitDomain;
        }
    }

    if (fmt == Format::json) {
        json j = {{"command", "bell"}, {"parameters", params}, {"expansion", std::string(to_string(expansion))}};
        j.update(json(primary));
        j[std::string(to_string(other))] = alternate;
        j["pointer"] = {{"mean", pointer.mean}, {"probability", pointer.norm_sq}, {"correlation", pointer.correlation()}};
        if (mc) j["mc"] = *mc;
        if (!mc_error.is_null()) j["mc"] = mc_error;
        out << j.dump(2) << '\n';
        return status;
    }
    std::vector<std::pair<std::string, std::string>> cols = {
        {"theta", format_double(theta)},
        {"delta", format_double(delta)},
        {"epsilon", format_double(args.epsilon)},
        {"sigma", format_double(args.sigma)},
        {"expansion", std::string(to_string(expansion))},
        {"value_1", format_double(primary.value[0].real())},
        {"value_2", format_double(primary.value[1].real())},
        {"probability", format_double(primary.probability)},
        {"correlated", primary.correlated ? "true" : "false"},
        {std::string(to_string(other)) + "_value_1", format_double(alternate.value[0].real())},
        {std::string(to_string(other)) + "_value_2", format_double(alternate.value[1].real())},
        {std::string(to_string(other)) + "_probability", format_double(alternate.probability)},
        {"pointer_mean_1", format_double(pointer.mean[0])},
        {"pointer_mean_2", format_double(pointer.mean[1])},
        {"pointer_probability", format_double(pointer.norm_sq)},
    };
    if (mc) {
        cols.push_back({"mc_n_trials", std::to_string(mc->photon[0].n_trials)});
        cols.push_back({"mc_n_success", std::to_string(mc->photon[0].n_success)});
        cols.push_back({"mc_mean_1", csv_cell(mc->photon[0].empirical_mean_arrival)});
        cols.push_back({"mc_mean_2", csv_cell(mc->photon[1].empirical_mean_arrival)});
        cols.push_back({"mc_standard_error_1", csv_cell(mc->photon[0].standard_error)});
        cols.push_back({"mc_standard_error_2", csv_cell(mc->photon[1].standard_error)});
        cols.push_back({"mc_correlation", csv_cell(mc->empirical_correlation)});
        cols.push_back({"mc_branch_mismatches", std::to_string(mc->branch_mismatches)});
    }
    write_record_csv(out, cols);
    return status;
}

// ---- mc -----------------------------------------------------------------

struct SingleMcArgs {
    std::string theta = "0";
    std::string phi = "0";
    std::optional<double> epsilon;
    std::optional<double> eps_over_sigma;
    double sigma = 1.0;
    double c = 1.0;
    McArgs run;
    std::string histogram;
    std::size_t bins = 100;
    std::string format = "json";
};

int cmd_mc(const SingleMcArgs &args, std::ostream &out, std::ostream &err) {
    const Format fmt = parse_format(args.format);
    if (args.epsilon && args.eps_over_sigma) {
        throw UsageError("--epsilon and --eps-over-sigma are mutually exclusive");
    }
    RunConfig cfg;
    cfg.apparatus = {parse_angle(args.theta), parse_angle(args.phi), 1.0, args.sigma, args.c};
    if (args.epsilon) cfg.apparatus.epsilon = *args.epsilon;
    if (args.eps_over_sigma) cfg.apparatus.epsilon = *args.eps_over_sigma * args.sigma;
    cfg.n_trials = parse_count(args.run.trials, "--trials");
    cfg.seed = args.run.seed;
    cfg.grid_points = args.run.grid_points;
    cfg.threads = args.run.threads;
    cfg.keep_samples = !args.histogram.empty();
    cfg.validate();

    const auto &app = cfg.apparatus;
    const auto pre = PolarizationState::from_angle(app.theta);
    const auto post = PolarizationState::from_angle(app.phi);
    json context = {{"command", "mc"},
                    {"apparatus", app},
                    {"config", {{"trials", cfg.n_trials}, {"seed", cfg.seed}, {"grid_points", cfg.grid_points}}}};
    std::optional<double> weak;
    try {
        weak = weak_arrival(app).value.real();
    } catch (const OrthogonalSelection &) {
        // conditional mean is still defined at finite epsilon
    }
    std::optional<double> abl;
    try {
        abl = abl_mean_arrival(pre, post, app.epsilon);
    } catch (const UndefinedConditioning &) {
    }
    context["weak_value"] = weak ? json(*weak) : json(nullptr);
    context["abl_mean"] = abl ? json(*abl) : json(nullptr);

    RunReport report;
    int status = 0;
    try {
        report = run_single_photon(cfg);
    } catch (const InsufficientSamples &e) {
        err << "error: " << e.what() << '\n';
        report = e.partial();
        context["error"] = e.kind();
        status = kExitDomain;
    } catch (const DomainError &e) {
        emit_domain_error(out, err, fmt, e, context);
        return kExitDomain;
    }

    if (!args.histogram.empty()) {
        std::ofstream hist(args.histogram);
        if (!hist) throw UsageError("cannot open histogram file '" + args.histogram + "'");
        hist << kCsvVersionLine << '\n';
        write_histogram_csv(hist, report.samples, args.bins);
    }

    if (fmt == Format::json) {
        context["report"] = report;
        out << context.dump(2) << '\n';
        return status;
    }
    write_record_csv(out, {{"theta", format_double(app.theta)},
                           {"phi", format_double(app.phi)},
                           {"epsilon", format_double(app.epsilon)},
                           {"sigma", format_double(app.sigma)},
                           {"n_trials", std::to_string(report.n_trials)},
                           {"n_success", std::to_string(report.n_success)},
                           {"empirical_probability", format_double(report.empirical_probability)},
                           {"probability_standard_error", format_double(report.probability_standard_error)},
                           {"empirical_mean_arrival", csv_cell(report.empirical_mean_arrival)},
                           {"standard_error", csv_cell(report.standard_error)},
                           {"analytic_mean", format_double(report.analytic_mean)},
                           {"analytic_probability", format_double(report.analytic_probability)},
                           {"weak_value", csv_cell(weak)},
                           {"abl_mean", csv_cell(abl)},
                           {"generator", report.generator}});
    return status;
}

}  // namespace

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::theta:
            return "theta";
        case SweepVariable::phi:
            return "phi";
        case SweepVariable::delta:
            return "delta";
        case SweepVariable::epsilon_over_sigma:
            return "epsilon_over_sigma";
    }
    return "unknown";
}

SweepVariable sweep_variable_from_string(std::string_view s) {
    for (auto v : {SweepVariable::theta, SweepVariable::phi, SweepVariable::delta,
                   SweepVariable::epsilon_over_sigma}) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown sweep variable '" + std::string(s) + "'");
}

void SweepSpec::validate() const {
    if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
    if (!std::isfinite(start) || !std::isfinite(stop) || start == stop) {
        throw std::invalid_argument("sweep endpoints must be finite and distinct");
    }
    if (log_spacing && (start <= 0.0 || stop <= 0.0)) {
        throw std::invalid_argument("log spacing needs positive endpoints");
    }
    fixed.validate();
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.steps);
    for (std::size_t i = 0; i < spec.steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(spec.steps - 1);
        double x = spec.log_spacing ? spec.start * std::pow(spec.stop / spec.start, t)
                                    : spec.start + (spec.stop - spec.start) * t;
        if (i + 1 == spec.steps) x = spec.stop;

        Apparatus app = spec.fixed;
        switch (spec.variable) {
            case SweepVariable::theta:
                app.theta = x;
                if (spec.phi_follows_theta) app.phi = x;
                break;
            case SweepVariable::phi:
                app.phi = x;
                break;
            case SweepVariable::delta:
                app.phi = post_angle_for_delta(app.theta, x);
                break;
            case SweepVariable::epsilon_over_sigma:
                app.epsilon = x * app.sigma;
                break;
        }

        SweepRow row{x, {}, {}, {}, {}, {}, "ok"};
        try {
            const WeakResult w = weak_arrival(app);
            row.weak_value = w.value.real();
            row.probability_weak = w.probability;
        } catch (const OrthogonalSelection &) {
            row.status = "orthogonal";
            row.probability_weak = 0.0;
        }
        try {
            const ExactMean exact = exact_mean_arrival(app);
            row.exact_mean = exact.mean;
            row.probability_exact = exact.norm_sq;
        } catch (const UndefinedConditioning &) {
            row.status = "undefined";
            row.probability_exact = 0.0;
        }
        try {
            row.abl_mean = abl_mean_arrival(PolarizationState::from_angle(app.theta),
                                            PolarizationState::from_angle(app.phi), app.epsilon);
        } catch (const UndefinedConditioning &) {
            row.status = "undefined";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows) {
    out << kCsvVersionLine << '\n';
    out << "variable,weak_value,exact_mean,abl_mean,probability_weak,probability_exact,status\n";
    for (const auto &r : rows) {
        out << format_double(r.variable) << ',' << csv_cell(r.weak_value) << ','
            << csv_cell(r.exact_mean) << ',' << csv_cell(r.abl_mean) << ','
            << csv_cell(r.probability_weak) << ',' << csv_cell(r.probability_exact) << ','
            << r.status << '\n';
    }
}

double parse_angle(std::string_view text) {
    constexpr std::string_view suffix = "deg";
    bool degrees = false;
    if (text.size() > suffix.size() && text.substr(text.size() - suffix.size()) == suffix) {
        degrees = true;
        text.remove_suffix(suffix.size());
    }
    const std::string s(text);
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw std::invalid_argument("bad angle '" + s + (degrees ? "deg" : "") +
                                    "' (radians, or degrees with a 'deg' suffix)");
    }
    return degrees ? v * std::numbers::pi / 180.0 : v;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weak measurement of photon arrival times: weak values, exact pointer means, "
                 "Bell-pair correlations and Monte Carlo runs.",
                 "weak_arrival"};
    app.require_subcommand(1);

    const std::string angle_help = "radians, or degrees with a 'deg' suffix (e.g. 45deg)";
    const std::vector<std::string> formats{"json", "csv"};

    WeakArgs weak;
    auto *weak_cmd = app.add_subcommand("weak", "Closed-form weak arrival value for one apparatus");
    weak_cmd->add_option("--theta", weak.theta, "Pre-selection angle; " + angle_help);
    weak_cmd->add_option("--phi", weak.phi, "Post-selection angle; " + angle_help);
    weak_cmd->add_option("--epsilon", weak.epsilon, "Path-length difference");
    weak_cmd->add_option("--sigma", weak.sigma, "Gaussian envelope width");
    weak_cmd->add_option("--c", weak.c, "Speed of light in length/time units");
    weak_cmd->add_option("--weak-threshold", weak.thresholds.weak_below, "epsilon/sigma below this is 'weak'");
    weak_cmd->add_option("--strong-threshold", weak.thresholds.strong_at, "epsilon/sigma at or above this is 'strong'");
    weak_cmd->add_option("--format", weak.format, "json or csv")->check(CLI::IsMember(formats));

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand(
        "sweep",
        "Parameter sweep. CSV columns: variable,weak_value,exact_mean,abl_mean,"
        "probability_weak,probability_exact,status. Undefined cells are empty; status is "
        "ok, orthogonal or undefined.");
    sweep_cmd->add_option("--variable", sweep.variable, "theta, phi, delta or epsilon_over_sigma")
        ->check(CLI::IsMember({"theta", "phi", "delta", "epsilon_over_sigma"}));
    sweep_cmd->add_option("--start", sweep.start, "First value")->required();
    sweep_cmd->add_option("--stop", sweep.stop, "Last value")->required();
    sweep_cmd->add_option("--steps", sweep.steps, "Number of rows (>= 2)");
    sweep_cmd->add_flag("--log", sweep.log_spacing, "Geometric spacing");
    sweep_cmd->add_option("--theta", sweep.theta, "Fixed theta; " + angle_help);
    sweep_cmd->add_option("--phi", sweep.phi, "Fixed phi; " + angle_help);
    sweep_cmd->add_flag("--phi-follows-theta", sweep.phi_follows_theta, "theta sweeps: set phi = theta");
    sweep_cmd->add_option("--epsilon", sweep.epsilon, "Path-length difference");
    sweep_cmd->add_option("--sigma", sweep.sigma, "Gaussian envelope width");
    sweep_cmd->add_option("--c", sweep.c, "Speed of light");
    sweep_cmd->add_option("--format", sweep.format, "csv or json")->check(CLI::IsMember(formats));

    BellArgs bell;
    auto *bell_cmd = app.add_subcommand("bell", "Correlated weak arrival times of a Bell pair");
    bell_cmd->add_option("--theta", bell.theta, "Post-selection angle of photon 1; " + angle_help);
    bell_cmd->add_option("--delta", bell.delta, "Offset from orthogonality; " + angle_help)->required();
    bell_cmd->add_option("--epsilon", bell.epsilon, "Path-length difference");
    bell_cmd->add_option("--sigma", bell.sigma, "Gaussian envelope width");
    bell_cmd->add_option("--expansion", bell.expansion, "exact or first_order")
        ->check(CLI::IsMember({"exact", "first_order"}));
    bell_cmd->add_flag("--mc", bell.mc, "Also run the Monte Carlo simulation");
    add_mc_options(bell_cmd, bell.run);
    bell_cmd->add_option("--format", bell.format, "json or csv")->check(CLI::IsMember(formats));

    SingleMcArgs mc;
    auto *mc_cmd = app.add_subcommand("mc", "Monte Carlo run for a single photon");
    mc_cmd->add_option("--theta", mc.theta, "Pre-selection angle; " + angle_help);
    mc_cmd->add_option("--phi", mc.phi, "Post-selection angle; " + angle_help);
    auto *eps_opt = mc_cmd->add_option("--epsilon", mc.epsilon, "Path-length difference (default 1)");
    auto *ratio_opt = mc_cmd->add_option("--eps-over-sigma", mc.eps_over_sigma, "Set epsilon = value * sigma");
    eps_opt->excludes(ratio_opt);
    mc_cmd->add_option("--sigma", mc.sigma, "Gaussian envelope width");
    mc_cmd->add_option("--c", mc.c, "Speed of light");
    add_mc_options(mc_cmd, mc.run);
    mc_cmd->add_option("--histogram", mc.histogram, "Write a bin_left,bin_right,count CSV here");
    mc_cmd->add_option("--bins", mc.bins, "Histogram bins");
    mc_cmd->add_option("--format", mc.format, "json or csv")->check(CLI::IsMember(formats));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*weak_cmd) return cmd_weak(weak, out, err);
        if (*sweep_cmd) return cmd_sweep(sweep, out);
        if (*bell_cmd) return cmd_bell(bell, out, err);
        if (*mc_cmd) return cmd_mc(mc, out, err);
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        out << json{{"error", e.kind()}, {"message", e.what()}}.dump(2) << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace weak_arrival
