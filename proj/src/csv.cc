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

#include "qnoise/csv.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "qnoise/errors.h"

namespace qnoise {

namespace {

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') {
        s.pop_back();
    }
    return s;
}

}  // namespace

std::size_t CsvTable::column(const std::string &name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw DataError(fmt::format("missing CSV column '{}'", name));
}

std::optional<std::uint64_t> CsvTable::seed() const {
    for (const auto &c : comments) {
        if (c.rfind("seed=", 0) == 0) {
            return std::stoull(c.substr(5));
        }
    }
    return std::nullopt;
}

CsvTable read_csv(std::istream &in) {
    CsvTable table;
    std::string line;
    bool have_header = false;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            std::size_t start = line.find_first_not_of("# ");
            table.comments.push_back(start == std::string::npos ? "" : line.substr(start));
            continue;
        }
        auto cells = split_line(line);
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw DataError(fmt::format("CSV line {} has {} cells, expected {}", line_number, cells.size(),
                                        table.header.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (!have_header) {
        throw DataError("CSV input has no header");
    }
    return table;
}

CsvTable read_csv_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError(fmt::format("cannot open '{}'", path));
    }
    try {
        return read_csv(in);
    } catch (const DataError &e) {
        throw DataError(fmt::format("{}: {}", path, e.what()));
    }
}

std::string format_double(double x) {
    return fmt::format("{:.17g}", x);
}

CsvWriter::CsvWriter(std::ostream &out, std::uint64_t seed, std::span<const std::string> header) : out_(out) {
    out_ << "# seed=" << seed << '\n';
    row(header);
}

CsvWriter &CsvWriter::comment(const std::string &text) {
    out_ << "# " << text << '\n';
    return *this;
}

CsvWriter &CsvWriter::row(std::span<const std::string> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        out_ << cells[i];
    }
    out_ << '\n';
    return *this;
}

double parse_double_cell(const std::string &cell, const std::string &what) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(cell, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != cell.size()) {
        throw DataError(fmt::format("{}: '{}' is not a number", what, cell));
    }
    return value;
}

long long parse_int_cell(const std::string &cell, const std::string &what) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(cell, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != cell.size()) {
        throw DataError(fmt::format("{}: '{}' is not an integer", what, cell));
    }
    return value;
}

void write_shots_csv(std::ostream &out, std::span<const MeasurementRecord> records, std::uint64_t seed) {
    const std::vector<std::string> header{"index", "t_start", "spec_id", "basis", "outcome"};
    CsvWriter w(out, seed, header);
    for (const auto &r : records) {
        const std::vector<std::string> cells{std::to_string(r.index), format_double(r.start_time), r.spec_id,
                                             std::string(basis_name(r.basis)), std::to_string(r.outcome)};
        w.row(cells);
    }
}

std::vector<MeasurementRecord> read_shots(const CsvTable &table) {
    const std::size_t c_index = table.column("index");
    const std::size_t c_start = table.column("t_start");
    const std::size_t c_spec = table.column("spec_id");
    const std::size_t c_basis = table.column("basis");
    const std::size_t c_outcome = table.column("outcome");
    std::vector<MeasurementRecord> out;
    out.reserve(table.rows.size());
    for (const auto &row : table.rows) {
        MeasurementRecord r;
        const long long index = parse_int_cell(row[c_index], "index");
        if (index < 0) {
            throw DataError("shot index must be non-negative");
        }
        r.index = static_cast<std::size_t>(index);
        r.start_time = parse_double_cell(row[c_start], "t_start");
        r.spec_id = row[c_spec];
        try {
            r.basis = parse_basis(row[c_basis]);
        } catch (const std::invalid_argument &e) {
            throw DataError(e.what());
        }
        const long long outcome = parse_int_cell(row[c_outcome], "outcome");
        if (outcome != 1 && outcome != -1) {
            throw DataError(fmt::format("shot {}: outcome must be +1 or -1", r.index));
        }
        r.outcome = static_cast<int>(outcome);
        out.push_back(std::move(r));
    }
    return out;
}

void write_coherence_csv(std::ostream &out, std::span<const CoherenceEstimate> estimates, std::uint64_t seed) {
    const std::vector<std::string> header{"family", "tau", "coherence", "stderr", "shots"};
    CsvWriter w(out, seed, header);
    for (const auto &e : estimates) {
        const std::vector<std::string> cells{e.family, format_double(e.tau), format_double(e.coherence),
                                             format_double(e.standard_error), std::to_string(e.shots)};
        w.row(cells);
    }
}

std::vector<CoherenceEstimate> read_coherences(const CsvTable &table) {
    const std::size_t c_family = table.column("family");
    const std::size_t c_tau = table.column("tau");
    const std::size_t c_coherence = table.column("coherence");
    const std::size_t c_stderr = table.column("stderr");
    const std::size_t c_shots = table.column("shots");
    std::vector<CoherenceEstimate> out;
    for (const auto &row : table.rows) {
        CoherenceEstimate e;
        e.family = row[c_family];
        e.tau = parse_double_cell(row[c_tau], "tau");
        e.coherence = parse_double_cell(row[c_coherence], "coherence");
        e.standard_error = parse_double_cell(row[c_stderr], "stderr");
        const long long shots = parse_int_cell(row[c_shots], "shots");
        if (shots < 0) {
            throw DataError("shot count must be non-negative");
        }
        e.shots = static_cast<std::size_t>(shots);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace qnoise
