// Copyright 2026 The qnoise Authors
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

#include "qnoise/pipeline.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "qnoise/csv.h"
#include "qnoise/errors.h"
#include "qnoise/noise_model.h"
#include "qnoise/pulse_sequence.h"
#include "qnoise/svg_plot.h"

namespace qnoise {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

const NoiseModel &require_noise(const ExperimentConfig &config, const char *command) {
    if (!config.noise) {
        throw ConfigError(fmt::format("noise: required by '{}'", command));
    }
    return *config.noise;
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class OutputDir {
 public:
    explicit OutputDir(const std::string &dir) : dir_(dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw std::runtime_error(fmt::format("cannot create output directory '{}': {}", dir, ec.message()));
        }
    }

    std::ofstream open(const std::string &name) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) {
            throw std::runtime_error(fmt::format("cannot write '{}'", (dir_ / name).string()));
        }
        written_.push_back(name);
        return out;
    }

    void save_svg(const std::string &name, const SvgPlot &plot) {
        plot.save((dir_ / name).string());
        written_.push_back(name);
    }

    // Merges this run into manifest.json so one directory can hold several commands.
    void record(const std::string &command, const ExperimentConfig &config, json extra = json::object()) {
        const fs::path path = dir_ / "manifest.json";
        json manifest = json::object();
        if (fs::exists(path)) {
            try {
                manifest = json::parse(read_file(path));
            } catch (const json::exception &) {
                manifest = json::object();
            }
        }
        if (!manifest.is_object() || !manifest.contains("runs") || !manifest["runs"].is_object()) {
            manifest = json::object();
            manifest["runs"] = json::object();
        }
        manifest["tool"] = "qnoise";
        manifest["version"] = kVersion;
        // The output directory is where a run landed, not part of the experiment.
        json experiment = json::parse(config_to_json(config));
        experiment.erase("output_dir");
        const std::string canonical = experiment.dump();
        json outputs = json::object();
        for (const auto &name : written_) {
            outputs[name] = fnv1a_hex(read_file(dir_ / name));
        }
        json run = {{"seed", config.seed},
                    {"config_hash", fnv1a_hex(canonical)},
                    {"config", experiment},
                    {"outputs", outputs},
                    {"eigen_version", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION,
                                                  EIGEN_MINOR_VERSION)}};
        for (auto &[key, value] : extra.items()) {
            run[key] = value;
        }
        manifest["runs"][command] = run;
        std::ofstream out(path, std::ios::binary);
        out << manifest.dump(2) << '\n';
    }

 private:
    fs::path dir_;
    std::vector<std::string> written_;
};

// Pulse width for a measured family, taken from the matching campaign row.
double pulse_width_for(const ExperimentConfig &config, const std::string &family) {
    for (const auto &row : config.campaign) {
        if (make_sequence(row.family, 1.0, 0.0).name == family) {
            return row.pulse_width;
        }
    }
    return 0.0;
}

void attach_short_time(const ExperimentConfig &config, ReconstructionResult &result) {
    if (result.chis.empty()) {
        return;
    }
    std::vector<PulseSequence> sequences;
    for (const auto &c : result.chis) {
        try {
            sequences.push_back(make_sequence(c.sequence_id, c.tau, pulse_width_for(config, c.sequence_id)));
        } catch (const std::invalid_argument &e) {
            throw DataError(fmt::format("sequence '{}' at tau={}: {}", c.sequence_id, c.tau, e.what()));
        }
    }
    const UniformGrid grid = common_grid(sequences, config.reconstruction.points_per_unit_time);
    for (const auto &seq : sequences) {
        result.filters.push_back(correlation_filter(seq, grid));
    }
    const OverlapMatrix overlap = overlap_matrix(result.filters);
    try {
        result.short_time = reconstruct_short_time(std::span<const CoherenceIntegral>(result.chis), result.filters,
                                                   overlap, config.reconstruction.rcond,
                                                   config.reconstruction.quality_ratio);
    } catch (const std::domain_error &e) {
        throw DataError(e.what());
    }
    result.boundary = reliable_boundary(result.short_time->grid, result.short_time->reliable);
}

void attach_long_time(const ExperimentConfig &config, const ReconstructionInput &input, ReconstructionResult &result) {
    try {
        if (input.long_records.size() >= 3) {
            const std::size_t max_lag = config.max_lag_for(input.long_records.size());
            result.long_time =
                long_time_correlators(input.long_records, max_lag, config.schedule.long_evolution_time);
            const LagWindow tail = config.tail_for(max_lag);
            if (tail.last <= max_lag) {
                result.tail = tail;
                result.offset = subtract_offset(result.long_time, tail);
            }
        }
        if (!input.variance_records.empty()) {
            result.variance = variance_estimate(input.variance_records, config.schedule.variance_evolution_time);
        }
    } catch (const std::invalid_argument &e) {
        throw DataError(e.what());
    }
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    std::vector<double> out(points);
    const double a = std::log10(lo), b = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    return out;
}

json long_time_json(const ReconstructionResult &r) {
    json j = json::object();
    j["lags"] = r.long_time.size();
    if (r.offset) {
        j["tail_window"] = {r.tail->first, r.tail->last};
        j["offset_squared"] = r.offset->offset_squared;
        j["offset_stderr"] = r.offset->offset_standard_error;
    }
    return j;
}

}  // namespace

SimulationResult simulate(const ExperimentConfig &config) {
    const NoiseModel &model = require_noise(config, "simulate");
    MeasurementChain chain(model, config.schedule.spacing, RandomStream(config.seed));
    SimulationResult result;
    if (config.schedule.long_count > 0) {
        result.long_records =
            run_long_time_chain(chain, config.schedule.long_count, config.schedule.long_evolution_time, Basis::kY);
    }
    if (config.schedule.variance_count > 0) {
        result.variance_records = run_long_time_chain(chain, config.schedule.variance_count,
                                                      config.schedule.variance_evolution_time, Basis::kX);
    }
    if (!config.campaign.empty()) {
        result.campaign = run_dd_campaign(chain, config.campaign);
    }
    return result;
}

ReconstructionResult reconstruct(const ExperimentConfig &config, const ReconstructionInput &input) {
    ReconstructionResult result;
    attach_long_time(config, input, result);
    for (const auto &est : input.coherences) {
        if (auto chi = chi_from_coherence(est, config.reconstruction.floor_sigmas)) {
            result.chis.push_back(*chi);
        } else {
            const std::string reason = est.coherence <= 0 ? "non-positive coherence" : "coherence below noise floor";
            fmt::print(stderr, "warning: discarding {}@{:g}: {} (m={:g}, stderr={:g})\n", est.family, est.tau, reason,
                       est.coherence, est.standard_error);
            result.discarded.push_back({est, reason});
        }
    }
    if (!input.coherences.empty() && result.chis.empty()) {
        throw DataError("every coherence point was discarded; no short-time estimate possible");
    }
    attach_short_time(config, result);
    return result;
}

std::vector<CoherenceIntegral> analytic_chis(const ExperimentConfig &config) {
    const NoiseModel &model = require_noise(config, "reconstruct --analytic-chi");
    auto correlation = [&model](double t) { return analytic_correlation(model, t); };
    std::vector<CoherenceIntegral> out;
    for (const auto &seq : config.campaign_sequences()) {
        out.push_back({seq.name, seq.duration, coherence_integral(seq, correlation), 0.0});
    }
    return out;
}

ReconstructionResult reconstruct_analytic(const ExperimentConfig &config, const ReconstructionInput &input) {
    ReconstructionResult result;
    attach_long_time(config, input, result);
    result.chis = analytic_chis(config);
    attach_short_time(config, result);
    return result;
}

ReconstructionInput load_shots(const std::string &input_dir) {
    const fs::path dir(input_dir);
    if (!fs::is_directory(dir)) {
        throw DataError(fmt::format("input directory '{}' does not exist", input_dir));
    }
    ReconstructionInput input;
    const fs::path long_path = dir / "shots_long.csv";
    if (fs::exists(long_path)) {
        input.long_records = read_shots(read_csv_file(long_path.string()));
        for (const auto &r : input.long_records) {
            if (r.basis != Basis::kY) {
                throw DataError(fmt::format("shots_long.csv: shot {} is not a y-basis measurement", r.index));
            }
        }
    }
    const fs::path variance_path = dir / "shots_variance.csv";
    if (fs::exists(variance_path)) {
        input.variance_records = read_shots(read_csv_file(variance_path.string()));
        for (const auto &r : input.variance_records) {
            if (r.basis != Basis::kX) {
                throw DataError(fmt::format("shots_variance.csv: shot {} is not an x-basis measurement", r.index));
            }
        }
    }
    const fs::path dd_path = dir / "shots_dd.csv";
    if (fs::exists(dd_path)) {
        const auto records = read_shots(read_csv_file(dd_path.string()));
        try {
            input.coherences = estimate_coherences(records);
        } catch (const std::invalid_argument &e) {
            throw DataError(fmt::format("shots_dd.csv: {}", e.what()));
        }
    }
    if (input.long_records.empty() && input.coherences.empty()) {
        throw DataError(fmt::format("no shot data in '{}' (expected shots_long.csv and/or shots_dd.csv)", input_dir));
    }
    return input;
}

void cmd_simulate(const ExperimentConfig &config, const std::string &out_dir) {
    const SimulationResult sim = simulate(config);
    OutputDir out(out_dir);
    {
        auto f = out.open("shots_long.csv");
        write_shots_csv(f, sim.long_records, config.seed);
    }
    if (!sim.variance_records.empty()) {
        auto f = out.open("shots_variance.csv");
        write_shots_csv(f, sim.variance_records, config.seed);
    }
    {
        auto f = out.open("shots_dd.csv");
        write_shots_csv(f, sim.campaign.records, config.seed);
    }
    {
        auto f = out.open("coherence.csv");
        write_coherence_csv(f, sim.campaign.estimates, config.seed);
    }
    out.record("simulate", config,
               {{"long_shots", sim.long_records.size()},
                {"variance_shots", sim.variance_records.size()},
                {"dd_shots", sim.campaign.records.size()}});
}

void cmd_reconstruct(const ExperimentConfig &config,
                     const std::string &input_dir,
                     const std::string &out_dir,
                     bool analytic_chi) {
    ReconstructionInput input;
    if (analytic_chi) {
        if (fs::exists(fs::path(input_dir) / "shots_long.csv")) {
            input = load_shots(input_dir);
        }
    } else {
        input = load_shots(input_dir);
    }
    const ReconstructionResult r = analytic_chi ? reconstruct_analytic(config, input) : reconstruct(config, input);

    OutputDir out(out_dir);
    {
        auto f = out.open("long_time.csv");
        const std::vector<std::string> header{"k", "t", "C_est", "stderr"};
        CsvWriter w(f, config.seed, header);
        for (const auto &e : r.long_time) {
            const std::vector<std::string> cells{std::to_string(e.lag), format_double(e.time),
                                                 format_double(e.value), format_double(e.standard_error)};
            w.row(cells);
        }
    }
    {
        auto f = out.open("coherence_integrals.csv");
        const std::vector<std::string> header{"family", "tau", "chi", "uncertainty"};
        CsvWriter w(f, config.seed, header);
        for (const auto &c : r.chis) {
            const std::vector<std::string> cells{c.sequence_id, format_double(c.tau), format_double(c.chi),
                                                 format_double(c.uncertainty)};
            w.row(cells);
        }
    }
    {
        auto f = out.open("short_time.csv");
        const std::vector<std::string> header{"u", "C_eta_est", "Q", "reliable"};
        if (!r.short_time) {
            CsvWriter(f, config.seed, header).comment("no short-time estimate");
        } else {
            CsvWriter w(f, config.seed, header);
            const ShortTimeEstimate &s = *r.short_time;
            for (std::size_t i = 0; i < s.grid.size(); ++i) {
                const std::vector<std::string> cells{format_double(s.grid.at(i)), format_double(s.estimate[i]),
                                                     format_double(s.quality[i]), s.reliable[i] ? "1" : "0"};
                w.row(cells);
            }
        }
    }

    json meta = json::object();
    meta["seed"] = config.seed;
    meta["mode"] = analytic_chi ? "analytic_chi" : "shots";
    meta["rcond"] = config.reconstruction.rcond;
    meta["quality_ratio"] = config.reconstruction.quality_ratio;
    meta["long_time"] = long_time_json(r);
    if (r.variance) {
        meta["variance"] = {{"value", r.variance->value},
                            {"stderr", r.variance->standard_error},
                            {"shots", r.variance->shots}};
    }
    json discarded = json::array();
    for (const auto &d : r.discarded) {
        discarded.push_back({{"family", d.estimate.family},
                             {"tau", d.estimate.tau},
                             {"coherence", d.estimate.coherence},
                             {"stderr", d.estimate.standard_error},
                             {"reason", d.reason}});
    }
    meta["discarded_points"] = discarded;
    if (r.short_time) {
        const ShortTimeEstimate &s = *r.short_time;
        json singular = json::array();
        for (Eigen::Index i = 0; i < s.singular_values.size(); ++i) {
            singular.push_back(s.singular_values[i]);
        }
        meta["short_time"] = {{"status", "ok"},
                              {"sequences", r.chis.size()},
                              {"retained_rank", s.rank},
                              {"singular_values", singular},
                              {"grid_step", s.grid.step},
                              {"grid_points", s.grid.size()},
                              {"reliable_boundary", r.boundary}};
    } else {
        meta["short_time"] = {{"status", "no short-time estimate"}};
    }
    {
        auto f = out.open("reconstruction.json");
        f << meta.dump(2) << '\n';
    }

    SvgPlot fig("Correlation function reconstruction", "t", "C(t)");
    fig.log_x();
    std::optional<double> t_hi;
    if (!r.long_time.empty()) {
        t_hi = r.long_time.back().time;
    }
    const double t_lo = r.short_time ? std::max(r.short_time->grid.step, 1e-4) : 1e-3;
    if (config.noise) {
        const double hi = t_hi.value_or(r.short_time ? r.short_time->grid.end() : 1.0);
        const auto ts = log_grid(t_lo, std::max(hi, 10 * t_lo), 400);
        std::vector<double> cs;
        for (double t : ts) {
            cs.push_back(stochastic_correlation(*config.noise, t));
        }
        fig.series("analytic", ts, cs, "black", SvgPlot::Style::kDashed);
    }
    if (r.short_time) {
        const ShortTimeEstimate &s = *r.short_time;
        std::vector<double> u, good, bad;
        for (std::size_t i = 1; i < s.grid.size(); ++i) {
            u.push_back(s.grid.at(i));
            good.push_back(s.reliable[i] ? s.estimate[i] : NAN);
            bad.push_back(s.reliable[i] ? NAN : s.estimate[i]);
        }
        fig.series("short-time", u, good, "#1f77b4");
        fig.series("", u, bad, "#b0c4de");
        fig.vertical_line(r.boundary, "#555555");
    }
    if (!r.long_time.empty()) {
        std::vector<double> t, c;
        const auto &points = r.offset ? r.offset->stochastic : r.long_time;
        for (const auto &e : points) {
            t.push_back(e.time);
            c.push_back(e.value);
        }
        fig.series("long-time", t, c, "black", SvgPlot::Style::kDots);
    }
    out.save_svg("reconstruction.svg", fig);

    if (r.short_time) {
        const ShortTimeEstimate &s = *r.short_time;
        const double q_max = *std::max_element(s.quality.begin(), s.quality.end());
        std::vector<double> u, q;
        for (std::size_t i = 0; i < s.grid.size(); ++i) {
            u.push_back(s.grid.at(i));
            q.push_back(q_max > 0 ? s.quality[i] / q_max : 0.0);
        }
        SvgPlot quality("Quality function", "u", "Q(u) / max Q");
        quality.series("Q", u, q, "#d62728");
        const double level = 1.0 / config.reconstruction.quality_ratio;
        const std::vector<double> lx{0.0, s.grid.end()}, ly{level, level};
        quality.series("threshold", lx, ly, "#555555", SvgPlot::Style::kDashed);
        out.save_svg("quality.svg", quality);
    }
    out.record("reconstruct", config, {{"input_dir", input_dir}, {"analytic_chi", analytic_chi}});
}

void cmd_filters(const ExperimentConfig &config, const std::string &out_dir) {
    const std::vector<PulseSequence> sequences = config.filter_sequences();
    if (sequences.empty()) {
        throw ConfigError("filters: no sequences (give a filters list or campaign rows)");
    }
    const double ppu = config.reconstruction.points_per_unit_time;
    const UniformGrid grid = common_grid(sequences, ppu);
    std::vector<FilterFunctionCurve> curves;
    for (const auto &seq : sequences) {
        curves.push_back(correlation_filter(seq, grid));
    }
    const OverlapMatrix overlap = overlap_matrix(curves);

    OutputDir out(out_dir);
    {
        auto f = out.open("sequences.csv");
        const std::vector<std::string> header{"index", "sequence", "tau", "pulses", "integral", "y_integral_sq"};
        CsvWriter w(f, config.seed, header);
        for (std::size_t i = 0; i < sequences.size(); ++i) {
            const double y_int = pulse_function(sequences[i]).integral();
            const std::vector<std::string> cells{
                std::to_string(i), sequences[i].name, format_double(sequences[i].duration),
                std::to_string(sequences[i].pulse_count()), format_double(trapezoid(curves[i].values, grid.step)),
                format_double(y_int * y_int)};
            w.row(cells);
        }
    }
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        const PulseSequence &seq = sequences[i];
        const auto intervals = static_cast<std::size_t>(std::max(1.0, std::ceil(seq.duration * ppu - 1e-9)));
        const FilterFunctionCurve curve = correlation_filter(seq, intervals);
        auto f = out.open(fmt::format("filter_{:03d}.csv", i));
        const std::vector<std::string> header{"u", "F"};
        CsvWriter w(f, config.seed, header);
        w.comment(fmt::format("sequence={} tau={}", seq.name, format_double(seq.duration)));
        for (std::size_t k = 0; k < curve.grid.size(); ++k) {
            const std::vector<std::string> cells{format_double(curve.grid.at(k)), format_double(curve.values[k])};
            w.row(cells);
        }
    }
    {
        auto f = out.open("overlap.csv");
        const std::vector<std::string> header{"i", "j", "F_ij"};
        CsvWriter w(f, config.seed, header);
        for (Eigen::Index i = 0; i < overlap.values.rows(); ++i) {
            for (Eigen::Index j = 0; j < overlap.values.cols(); ++j) {
                const std::vector<std::string> cells{std::to_string(i), std::to_string(j),
                                                     format_double(overlap.values(i, j))};
                w.row(cells);
            }
        }
    }
    if (config.frequency) {
        const auto omegas = log_grid(config.frequency->omega_min, config.frequency->omega_max, config.frequency->points);
        auto f = out.open("frequency.csv");
        const std::vector<std::string> header{"index", "omega", "F_omega"};
        CsvWriter w(f, config.seed, header);
        for (std::size_t i = 0; i < sequences.size(); ++i) {
            for (double omega : omegas) {
                const std::vector<std::string> cells{std::to_string(i), format_double(omega),
                                                     format_double(frequency_filter(sequences[i], omega))};
                w.row(cells);
            }
        }
    }

    SvgPlot plot("Correlation filter functions", "u", "F(u)");
    std::vector<double> u(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        u[k] = grid.at(k);
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string label = sequences.size() <= 8 ? sequences[i].name : "";
        plot.series(label, u, curves[i].values, kPalette[i % std::size(kPalette)]);
    }
    out.save_svg("filters.svg", plot);
    out.record("filters", config, {{"sequences", sequences.size()}, {"grid_step", grid.step}});
}

void cmd_oracle(const ExperimentConfig &config, const std::string &out_dir) {
    const NoiseModel &model = require_noise(config, "oracle");
    const auto ts = log_grid(config.oracle.t_min, config.oracle.t_max, config.oracle.points);
    OutputDir out(out_dir);
    std::vector<double> c_full, c_eta;
    {
        auto f = out.open("oracle_correlation.csv");
        const std::vector<std::string> header{"t", "C", "C_eta"};
        CsvWriter w(f, config.seed, header);
        for (double t : ts) {
            c_full.push_back(analytic_correlation(model, t));
            c_eta.push_back(stochastic_correlation(model, t));
            const std::vector<std::string> cells{format_double(t), format_double(c_full.back()),
                                                 format_double(c_eta.back())};
            w.row(cells);
        }
    }
    {
        auto f = out.open("oracle_chi.csv");
        const std::vector<std::string> header{"family", "tau", "chi", "coherence"};
        CsvWriter w(f, config.seed, header);
        auto correlation = [&model](double t) { return analytic_correlation(model, t); };
        for (const auto &seq : config.filter_sequences()) {
            const double chi = coherence_integral(seq, correlation);
            const std::vector<std::string> cells{seq.name, format_double(seq.duration), format_double(chi),
                                                 format_double(coherence_from_chi(chi))};
            w.row(cells);
        }
    }
    SvgPlot plot("Analytic correlation function", "t", "C(t)");
    plot.log_x().series("C", ts, c_full, "black").series("C_eta", ts, c_eta, "#1f77b4", SvgPlot::Style::kDashed);
    out.save_svg("oracle.svg", plot);
    out.record("oracle", config);
}

}  // namespace qnoise
