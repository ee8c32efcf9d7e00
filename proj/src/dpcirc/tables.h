// Copyright 2026 The dpcirc Authors
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

#ifndef DPCIRC_TABLES_H
#define DPCIRC_TABLES_H

#include <iosfwd>
#include <string>
#include <vector>

#include "dpcirc/dp_model.h"
#include "dpcirc/experiments.h"

namespace dpcirc {

/// A CSV-shaped result. Cells are stored already formatted so that writing is
/// byte-reproducible and 64-bit seeds survive untouched.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of a column; throws std::invalid_argument naming it if absent.
    size_t column(const std::string &name) const;
    /// Cell parsed as a double ("nan" for censored values).
    double number(size_t row, size_t col) const;

    void write_csv(std::ostream &out) const;
    /// Writes to `path`; the file is removed again if writing fails.
    void write_csv_file(const std::string &path) const;
    static Table read_csv(std::istream &in);
    static Table read_csv_file(const std::string &path);
};

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

// Exact column orders of the emitted files.
inline const std::vector<std::string> kDecayColumns = {"t", "s_mean", "s_stderr", "n", "p", "q", "h", "realizations", "seed"};
inline const std::vector<std::string> kSweepColumns = {"n",          "p", "tau_mean", "tau_stderr", "censored_fraction",
                                                       "realizations", "seed"};
inline const std::vector<std::string> kMiColumns = {"n", "p", "q", "t_eval", "mi_mean", "mi_stderr"};
inline const std::vector<std::string> kPhaseColumns = {"n", "p", "q", "timescale_mean", "timescale_stderr",
                                                       "capped_fraction"};
inline const std::vector<std::string> kDpColumns = {"t", "density_mean", "survival_prob", "qbar_estimate", "qbar_stderr"};

/// One row per t = 0..depth. Appends to `table` when it already has decay columns.
void append_decay_rows(Table &table, const ExperimentRecord &record);
Table decay_table(const ExperimentRecord &record);
Table sweep_table(const std::vector<SweepPoint> &points);
/// Sweep columns with tau read at the doubled cutoff. The error column reuses
/// the bootstrap error at t0 and censored_fraction is 0 or 1.
Table sweep_table_double_t0(const std::vector<SweepPoint> &points);
Table mi_table(const std::vector<AntipodalPoint> &points);
Table phase_table(const std::vector<TimescalePoint> &points);
Table dp_table(const DPSeries &series);

}  // namespace dpcirc

#endif
