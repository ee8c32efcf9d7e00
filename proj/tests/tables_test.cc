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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace dpcirc;

TEST(format_number, shortest_round_trip) {
    EXPECT_EQ(format_number(0.081), "0.081");
    EXPECT_EQ(format_number(40), "40");
    EXPECT_EQ(format_number(NAN), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    for (double v : {0.1 + 0.2, 1e-300, 123456.789, -2.5e17}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
}

TEST(Table, csv_round_trip) {
    Table t{{"a", "b"}, {{"1", "nan"}, {"0.5", "18446744073709551615"}}};
    std::stringstream ss;
    t.write_csv(ss);
    EXPECT_EQ(ss.str(), "a,b\n1,nan\n0.5,18446744073709551615\n");
    Table back = Table::read_csv(ss);
    EXPECT_EQ(back.columns, t.columns);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_TRUE(std::isnan(back.number(0, 1)));
    EXPECT_EQ(back.number(1, 0), 0.5);
    EXPECT_EQ(back.column("b"), 1u);
    EXPECT_THROW(back.column("c"), std::invalid_argument);
}

TEST(Table, rejects_ragged_rows) {
    std::stringstream ss("a,b\n1,2\n3\n");
    EXPECT_THROW(Table::read_csv(ss), std::invalid_argument);
    std::stringstream empty;
    EXPECT_THROW(Table::read_csv(empty), std::invalid_argument);
}

TEST(decay_table, columns_and_rows) {
    ExperimentRecord r;
    r.config.n = 40;
    r.config.p = 0.081;
    r.config.depth = 3;
    r.master_seed = 7;
    r.n_realizations = 50;
    r.mean = {40, 30, 20, 10};
    r.std_error = {0, 1, 1, 1};
    Table t = decay_table(r);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"t", "s_mean", "s_stderr", "n", "p", "q", "h", "realizations", "seed"}));
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.rows[1], (std::vector<std::string>{"1", "30", "1", "40", "0.081", "0", "0", "50", "7"}));
    append_decay_rows(t, r);
    EXPECT_EQ(t.rows.size(), 8u);
}

TEST(tables, schemas) {
    EXPECT_EQ(sweep_table({}).columns,
              (std::vector<std::string>{"n", "p", "tau_mean", "tau_stderr", "censored_fraction", "realizations", "seed"}));
    EXPECT_EQ(mi_table({}).columns, (std::vector<std::string>{"n", "p", "q", "t_eval", "mi_mean", "mi_stderr"}));
    EXPECT_EQ(phase_table({}).columns, (std::vector<std::string>{"n", "p", "q", "timescale_mean", "timescale_stderr",
                                                                 "capped_fraction"}));
    DPSeries s;
    s.density_mean = {0.5};
    s.density_stderr = {0.0};
    s.survival_prob = {1};
    s.qbar_estimate = {0};
    s.qbar_stderr = {0};
    Table dp = dp_table(s);
    EXPECT_EQ(dp.columns,
              (std::vector<std::string>{"t", "density_mean", "survival_prob", "qbar_estimate", "qbar_stderr"}));
    EXPECT_EQ(dp.rows[0], (std::vector<std::string>{"0", "0.5", "1", "0", "0"}));
    SweepPoint censored;
    censored.n = 20;
    censored.p = 0.06;
    censored.tau_mean = NAN;
    censored.censored_fraction = 1;
    censored.realizations = 200;
    censored.seed = 18446744073709551615ULL;
    EXPECT_EQ(sweep_table({censored}).rows[0],
              (std::vector<std::string>{"20", "0.06", "nan", "0", "1", "200", "18446744073709551615"}));
}
