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

#include "dpcirc/tables.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpcirc {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string fmt(uint64_t v) {
    return std::to_string(v);
}
std::string fmt(double v) {
    return format_number(v);
}

template <class... Args>
std::vector<std::string> row(const Args &...args) {
    return {fmt(args)...};
}

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

}  // namespace

size_t Table::column(const std::string &name) const {
    for (size_t i = 0; i < columns.size(); i++) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw std::invalid_argument("missing column '" + name + "'");
}

double Table::number(size_t r, size_t c) const {
    const std::string &s = rows.at(r).at(c);
    if (s == "nan" || s.empty()) {
        return NAN;
    }
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

void Table::write_csv(std::ostream &out) const {
    auto line = [&](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); i++) {
            out << (i ? "," : "") << cells[i];
        }
        out << '\n';
    };
    line(columns);
    for (const auto &r : rows) {
        line(r);
    }
}

void Table::write_csv_file(const std::string &path) const {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_csv(f);
    f.close();
    if (!f) {
        std::remove(path.c_str());
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

Table Table::read_csv(std::istream &in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty CSV");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    t.columns = split_line(line);
    size_t lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto cells = split_line(line);
        if (cells.size() != t.columns.size()) {
            throw std::invalid_argument("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                                        " cells, expected " + std::to_string(t.columns.size()));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table Table::read_csv_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_csv(f);
}

void append_decay_rows(Table &table, const ExperimentRecord &r) {
    if (table.columns.empty()) {
        table.columns = kDecayColumns;
    }
    const auto &c = r.config;
    for (size_t t = 0; t < r.mean.size(); t++) {
        table.rows.push_back(row(uint64_t{t}, r.mean[t], r.std_error[t], uint64_t{c.n}, c.p, c.q, c.h,
                                 uint64_t{r.n_realizations}, r.master_seed));
    }
}

Table decay_table(const ExperimentRecord &record) {
    Table t;
    append_decay_rows(t, record);
    return t;
}

Table sweep_table(const std::vector<SweepPoint> &points) {
    Table t{kSweepColumns, {}};
    for (const auto &p : points) {
        t.rows.push_back(row(uint64_t{p.n}, p.p, p.tau_mean, p.tau_stderr, p.censored_fraction,
                             uint64_t{p.realizations}, p.seed));
    }
    return t;
}

Table sweep_table_double_t0(const std::vector<SweepPoint> &points) {
    Table t{kSweepColumns, {}};
    for (const auto &p : points) {
        double censored = std::isnan(p.tau_double_t0) ? 1.0 : 0.0;
        t.rows.push_back(row(uint64_t{p.n}, p.p, p.tau_double_t0, p.tau_stderr, censored, uint64_t{p.realizations},
                             p.seed));
    }
    return t;
}

Table mi_table(const std::vector<AntipodalPoint> &points) {
    Table t{kMiColumns, {}};
    for (const auto &p : points) {
        t.rows.push_back(row(uint64_t{p.n}, p.p, p.q, uint64_t{p.t_eval}, p.mi_mean, p.mi_stderr));
    }
    return t;
}

Table phase_table(const std::vector<TimescalePoint> &points) {
    Table t{kPhaseColumns, {}};
    for (const auto &p : points) {
        t.rows.push_back(
            row(uint64_t{p.n}, p.p, p.q, p.timescale_mean, p.timescale_stderr, p.capped_fraction));
    }
    return t;
}

Table dp_table(const DPSeries &s) {
    Table t{kDpColumns, {}};
    for (size_t i = 0; i < s.density_mean.size(); i++) {
        t.rows.push_back(row(uint64_t{i}, s.density_mean[i], s.survival_prob[i], s.qbar_estimate[i], s.qbar_stderr[i]));
    }
    return t;
}

}  // namespace dpcirc
