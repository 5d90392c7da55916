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

#include "qnoise/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "qnoise/errors.h"

namespace qnoise {

namespace {

using nlohmann::json;

void check_keys(const json &j, const std::string &where, const std::set<std::string> &allowed) {
    if (!j.is_object()) {
        throw ConfigError(fmt::format("{}: expected an object", where));
    }
    for (const auto &[key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw ConfigError(fmt::format("{}.{}: unknown key", where, key));
        }
    }
}

std::string join(const std::string &where, const std::string &key) {
    return where.empty() ? key : where + "." + key;
}

double get_number(const json &j, const std::string &where, const std::string &key, double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json &v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError(fmt::format("{}: expected a number", join(where, key)));
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(fmt::format("{}: must be finite", join(where, key)));
    }
    return x;
}

std::size_t get_count(const json &j, const std::string &where, const std::string &key, std::size_t fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json &v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(fmt::format("{}: expected a non-negative integer", join(where, key)));
    }
    return v.get<std::size_t>();
}

std::string get_string(const json &j, const std::string &where, const std::string &key, std::string fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const json &v = j.at(key);
    if (!v.is_string()) {
        throw ConfigError(fmt::format("{}: expected a string", join(where, key)));
    }
    return v.get<std::string>();
}

const json &require(const json &j, const std::string &where, const std::string &key) {
    if (!j.contains(key)) {
        throw ConfigError(fmt::format("{}: required", join(where, key)));
    }
    return j.at(key);
}

void require_positive(double x, const std::string &field) {
    if (!(x > 0)) {
        throw ConfigError(fmt::format("{}: must be positive (got {})", field, x));
    }
}

NoiseModel parse_noise(const json &j) {
    check_keys(j, "noise", {"offset", "fluctuators"});
    NoiseModel model;
    model.offset = get_number(j, "noise", "offset", 0.0);
    if (j.contains("fluctuators")) {
        const json &list = j.at("fluctuators");
        if (!list.is_array()) {
            throw ConfigError("noise.fluctuators: expected an array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = fmt::format("noise.fluctuators[{}]", i);
            check_keys(list[i], where, {"amplitude", "rate", "label"});
            Fluctuator f;
            f.amplitude = get_number(list[i], where, "amplitude", 0.0);
            f.rate = get_number(list[i], where, "rate", 0.0);
            f.label = get_string(list[i], where, "label", "");
            if (!list[i].contains("amplitude")) {
                throw ConfigError(where + ".amplitude: required");
            }
            if (!list[i].contains("rate")) {
                throw ConfigError(where + ".rate: required");
            }
            if (f.rate < 0) {
                throw ConfigError(where + ".rate: must be non-negative");
            }
            model.fluctuators.push_back(f);
        }
    }
    return model;
}

ScheduleConfig parse_schedule(const json &j) {
    check_keys(j, "schedule", {"spacing", "long_count", "long_evolution_time", "variance_count",
                               "variance_evolution_time"});
    ScheduleConfig s;
    s.spacing = get_number(j, "schedule", "spacing", s.spacing);
    s.long_count = get_count(j, "schedule", "long_count", s.long_count);
    s.long_evolution_time = get_number(j, "schedule", "long_evolution_time", s.long_evolution_time);
    s.variance_count = get_count(j, "schedule", "variance_count", s.variance_count);
    s.variance_evolution_time = get_number(j, "schedule", "variance_evolution_time", s.variance_evolution_time);
    return s;
}

CampaignRow parse_row(const json &j, const std::string &where) {
    check_keys(j, where, {"family", "time_range", "divisions", "repetitions", "pulse_width"});
    CampaignRow row;
    const json &family = require(j, where, "family");
    if (!family.is_string()) {
        throw ConfigError(where + ".family: expected a string");
    }
    row.family = family.get<std::string>();
    const json &range = require(j, where, "time_range");
    if (!range.is_array() || range.size() != 2 || !range[0].is_number() || !range[1].is_number()) {
        throw ConfigError(where + ".time_range: expected [t_min, t_max]");
    }
    row.t_min = range[0].get<double>();
    row.t_max = range[1].get<double>();
    const json &divisions = require(j, where, "divisions");
    if (!divisions.is_number_integer() || divisions.get<long long>() < 1) {
        throw ConfigError(where + ".divisions: must be an integer >= 1");
    }
    row.divisions = divisions.get<int>();
    const json &repetitions = require(j, where, "repetitions");
    if (!repetitions.is_number_integer() || repetitions.get<long long>() < 1) {
        throw ConfigError(where + ".repetitions: must be an integer >= 1");
    }
    row.repetitions = repetitions.get<int>();
    row.pulse_width = get_number(j, where, "pulse_width", 0.0);
    return row;
}

ReconstructionConfig parse_reconstruction(const json &j) {
    const std::string where = "reconstruction";
    check_keys(j, where, {"points_per_unit_time", "rcond", "quality_ratio", "max_lag", "tail_window", "floor_sigmas"});
    ReconstructionConfig r;
    r.points_per_unit_time = get_number(j, where, "points_per_unit_time", r.points_per_unit_time);
    r.rcond = get_number(j, where, "rcond", r.rcond);
    r.quality_ratio = get_number(j, where, "quality_ratio", r.quality_ratio);
    r.max_lag = get_count(j, where, "max_lag", r.max_lag);
    r.floor_sigmas = get_number(j, where, "floor_sigmas", r.floor_sigmas);
    if (j.contains("tail_window")) {
        const json &w = j.at("tail_window");
        if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer() ||
            w[0].get<long long>() < 1 || w[1].get<long long>() < w[0].get<long long>()) {
            throw ConfigError("reconstruction.tail_window: expected [first_lag, last_lag] with 1 <= first <= last");
        }
        r.tail_window = LagWindow{w[0].get<std::size_t>(), w[1].get<std::size_t>()};
    }
    return r;
}

json noise_to_json(const NoiseModel &m) {
    json list = json::array();
    for (const auto &f : m.fluctuators) {
        list.push_back({{"amplitude", f.amplitude}, {"rate", f.rate}, {"label", f.label}});
    }
    return {{"offset", m.offset}, {"fluctuators", list}};
}

}  // namespace

std::vector<PulseSequence> ExperimentConfig::campaign_sequences() const {
    std::vector<PulseSequence> out;
    for (const auto &row : campaign) {
        for (double tau : row.durations()) {
            out.push_back(make_sequence(row.family, tau, row.pulse_width));
        }
    }
    return out;
}

std::vector<PulseSequence> ExperimentConfig::filter_sequences() const {
    if (filters.empty()) {
        return campaign_sequences();
    }
    std::vector<PulseSequence> out;
    for (const auto &f : filters) {
        out.push_back(make_sequence(f.family, f.duration, f.pulse_width));
    }
    return out;
}

std::size_t ExperimentConfig::max_lag_for(std::size_t long_count) const {
    std::size_t lag = reconstruction.max_lag != 0 ? reconstruction.max_lag : long_count / 2;
    if (long_count >= 3) {
        lag = std::min(lag, long_count - 2);
    }
    return lag;
}

LagWindow ExperimentConfig::tail_for(std::size_t max_lag) const {
    if (reconstruction.tail_window) {
        return *reconstruction.tail_window;
    }
    const std::size_t first = std::max<std::size_t>(1, max_lag - max_lag / 10);
    return LagWindow{first, max_lag};
}

void validate(const ExperimentConfig &c) {
    if (c.noise) {
        try {
            c.noise->validate();
        } catch (const std::invalid_argument &e) {
            throw ConfigError(fmt::format("noise: {}", e.what()));
        }
    }
    const ScheduleConfig &s = c.schedule;
    require_positive(s.spacing, "schedule.spacing");
    require_positive(s.long_evolution_time, "schedule.long_evolution_time");
    require_positive(s.variance_evolution_time, "schedule.variance_evolution_time");
    if (s.long_evolution_time > s.spacing) {
        throw ConfigError("schedule.long_evolution_time: exceeds schedule.spacing");
    }
    if (s.variance_evolution_time > s.spacing) {
        throw ConfigError("schedule.variance_evolution_time: exceeds schedule.spacing");
    }
    if (s.long_count == 1 || s.long_count == 2) {
        throw ConfigError("schedule.long_count: need 0 or at least 3 measurements");
    }
    for (std::size_t i = 0; i < c.campaign.size(); ++i) {
        const CampaignRow &row = c.campaign[i];
        const std::string where = fmt::format("campaign[{}]", i);
        require_positive(row.t_min, where + ".time_range[0]");
        if (row.t_max < row.t_min) {
            throw ConfigError(where + ".time_range: t_max below t_min");
        }
        if (row.t_max > s.spacing) {
            throw ConfigError(fmt::format("{}.time_range: duration {} exceeds schedule.spacing {}", where, row.t_max,
                                          s.spacing));
        }
        if (row.divisions == 1 && row.t_max != row.t_min) {
            throw ConfigError(where + ".divisions: a single division needs t_min == t_max");
        }
        if (row.pulse_width < 0) {
            throw ConfigError(where + ".pulse_width: must be non-negative");
        }
        try {
            for (double tau : row.durations()) {
                make_sequence(row.family, tau, row.pulse_width).validate();
            }
        } catch (const std::invalid_argument &e) {
            throw ConfigError(fmt::format("{}: {}", where, e.what()));
        }
    }
    const ReconstructionConfig &r = c.reconstruction;
    require_positive(r.points_per_unit_time, "reconstruction.points_per_unit_time");
    if (!(r.rcond > 0 && r.rcond < 1)) {
        throw ConfigError("reconstruction.rcond: must lie in (0, 1)");
    }
    if (!(r.quality_ratio >= 1)) {
        throw ConfigError("reconstruction.quality_ratio: must be at least 1");
    }
    if (r.floor_sigmas < 0) {
        throw ConfigError("reconstruction.floor_sigmas: must be non-negative");
    }
    if (r.tail_window && s.long_count >= 3 && r.tail_window->last > c.max_lag_for(s.long_count)) {
        throw ConfigError("reconstruction.tail_window: last lag exceeds the computed lags");
    }
    for (std::size_t i = 0; i < c.filters.size(); ++i) {
        const std::string where = fmt::format("filters[{}]", i);
        try {
            make_sequence(c.filters[i].family, c.filters[i].duration, c.filters[i].pulse_width).validate();
        } catch (const std::invalid_argument &e) {
            throw ConfigError(fmt::format("{}: {}", where, e.what()));
        }
    }
    if (c.frequency) {
        require_positive(c.frequency->omega_min, "frequency.omega_min");
        if (!(c.frequency->omega_max > c.frequency->omega_min)) {
            throw ConfigError("frequency.omega_max: must exceed omega_min");
        }
        if (c.frequency->points < 2) {
            throw ConfigError("frequency.points: need at least 2");
        }
    }
    require_positive(c.oracle.t_min, "oracle.t_min");
    if (!(c.oracle.t_max > c.oracle.t_min)) {
        throw ConfigError("oracle.t_max: must exceed t_min");
    }
    if (c.oracle.points < 2) {
        throw ConfigError("oracle.points: need at least 2");
    }
}

ExperimentConfig parse_config(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(fmt::format("not valid JSON: {}", e.what()));
    }
    check_keys(j, "config",
               {"seed", "output_dir", "noise", "schedule", "campaign", "reconstruction", "filters", "frequency",
                "oracle"});
    ExperimentConfig c;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            throw ConfigError("seed: expected a non-negative integer");
        }
        c.seed = j["seed"].get<std::uint64_t>();
    }
    c.output_dir = get_string(j, "", "output_dir", c.output_dir);
    if (j.contains("noise")) {
        c.noise = parse_noise(j["noise"]);
    }
    if (j.contains("schedule")) {
        c.schedule = parse_schedule(j["schedule"]);
    }
    if (j.contains("campaign")) {
        if (!j["campaign"].is_array()) {
            throw ConfigError("campaign: expected an array of rows");
        }
        for (std::size_t i = 0; i < j["campaign"].size(); ++i) {
            c.campaign.push_back(parse_row(j["campaign"][i], fmt::format("campaign[{}]", i)));
        }
    }
    if (j.contains("reconstruction")) {
        c.reconstruction = parse_reconstruction(j["reconstruction"]);
    }
    if (j.contains("filters")) {
        if (!j["filters"].is_array()) {
            throw ConfigError("filters: expected an array");
        }
        for (std::size_t i = 0; i < j["filters"].size(); ++i) {
            const std::string where = fmt::format("filters[{}]", i);
            const json &f = j["filters"][i];
            check_keys(f, where, {"family", "duration", "pulse_width"});
            FilterEntry e;
            const json &family = require(f, where, "family");
            if (!family.is_string()) {
                throw ConfigError(where + ".family: expected a string");
            }
            e.family = family.get<std::string>();
            e.duration = get_number(f, where, "duration", e.duration);
            e.pulse_width = get_number(f, where, "pulse_width", e.pulse_width);
            c.filters.push_back(e);
        }
    }
    if (j.contains("frequency")) {
        check_keys(j["frequency"], "frequency", {"omega_min", "omega_max", "points"});
        FrequencyConfig f;
        f.omega_min = get_number(j["frequency"], "frequency", "omega_min", f.omega_min);
        f.omega_max = get_number(j["frequency"], "frequency", "omega_max", f.omega_max);
        f.points = get_count(j["frequency"], "frequency", "points", f.points);
        c.frequency = f;
    }
    if (j.contains("oracle")) {
        check_keys(j["oracle"], "oracle", {"t_min", "t_max", "points"});
        c.oracle.t_min = get_number(j["oracle"], "oracle", "t_min", c.oracle.t_min);
        c.oracle.t_max = get_number(j["oracle"], "oracle", "t_max", c.oracle.t_max);
        c.oracle.points = get_count(j["oracle"], "oracle", "points", c.oracle.points);
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot read config '{}'", path));
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string config_to_json(const ExperimentConfig &c) {
    json j;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    if (c.noise) {
        j["noise"] = noise_to_json(*c.noise);
    }
    const ScheduleConfig &s = c.schedule;
    j["schedule"] = {{"spacing", s.spacing},
                     {"long_count", s.long_count},
                     {"long_evolution_time", s.long_evolution_time},
                     {"variance_count", s.variance_count},
                     {"variance_evolution_time", s.variance_evolution_time}};
    json rows = json::array();
    for (const auto &row : c.campaign) {
        rows.push_back({{"family", row.family},
                        {"time_range", {row.t_min, row.t_max}},
                        {"divisions", row.divisions},
                        {"repetitions", row.repetitions},
                        {"pulse_width", row.pulse_width}});
    }
    j["campaign"] = rows;
    const ReconstructionConfig &r = c.reconstruction;
    j["reconstruction"] = {{"points_per_unit_time", r.points_per_unit_time},
                           {"rcond", r.rcond},
                           {"quality_ratio", r.quality_ratio},
                           {"max_lag", r.max_lag},
                           {"floor_sigmas", r.floor_sigmas}};
    if (r.tail_window) {
        j["reconstruction"]["tail_window"] = {r.tail_window->first, r.tail_window->last};
    }
    if (!c.filters.empty()) {
        json list = json::array();
        for (const auto &f : c.filters) {
            list.push_back({{"family", f.family}, {"duration", f.duration}, {"pulse_width", f.pulse_width}});
        }
        j["filters"] = list;
    }
    if (c.frequency) {
        j["frequency"] = {{"omega_min", c.frequency->omega_min},
                          {"omega_max", c.frequency->omega_max},
                          {"points", c.frequency->points}};
    }
    j["oracle"] = {{"t_min", c.oracle.t_min}, {"t_max", c.oracle.t_max}, {"points", c.oracle.points}};
    return j.dump(2);
}

std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

}  // namespace qnoise
