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

#ifndef QNOISE_CSV_H
#define QNOISE_CSV_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnoise/qubit_simulator.h"

namespace qnoise {

/// Plain comma-separated table. Lines starting with '#' are comments; the
/// writer emits a "# seed=<n>" line first so every file carries its seed.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments;

    /// Column index by name; throws DataError if absent.
    std::size_t column(const std::string &name) const;
    std::optional<std::uint64_t> seed() const;
};

CsvTable read_csv(std::istream &in);
CsvTable read_csv_file(const std::string &path);

/// Formats a double so that it reads back bit-identically.
std::string format_double(double x);

class CsvWriter {
 public:
    CsvWriter(std::ostream &out, std::uint64_t seed, std::span<const std::string> header);

    CsvWriter &comment(const std::string &text);
    CsvWriter &row(std::span<const std::string> cells);

 private:
    std::ostream &out_;
};

double parse_double_cell(const std::string &cell, const std::string &what);
long long parse_int_cell(const std::string &cell, const std::string &what);

/// Shot table: index, t_start, spec_id, basis, outcome.
void write_shots_csv(std::ostream &out, std::span<const MeasurementRecord> records, std::uint64_t seed);
std::vector<MeasurementRecord> read_shots(const CsvTable &table);

/// Coherence table: family, tau, coherence, stderr, shots.
void write_coherence_csv(std::ostream &out, std::span<const CoherenceEstimate> estimates, std::uint64_t seed);
std::vector<CoherenceEstimate> read_coherences(const CsvTable &table);

}  // namespace qnoise

#endif  // QNOISE_CSV_H
