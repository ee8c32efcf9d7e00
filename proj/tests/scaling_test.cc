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

#include "dpcirc/scaling.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dpcirc/rng.h"

using namespace dpcirc;

namespace {

std::vector<TauSeries> synthetic_table(double z, double p_c, double nu, std::vector<size_t> ns) {
    std::vector<TauSeries> table;
    for (size_t n : ns) {
        TauSeries s;
        s.n = n;
        for (int i = 0; i <= 40; i++) {
            double p = 0.06 + 0.001 * i;
            double x = (p - p_c) * std::pow(static_cast<double>(n), 1 / nu);
            s.ps.push_back(p);
            s.taus.push_back(std::pow(static_cast<double>(n), z) * 3.0 * std::exp(-4.0 * x));
            s.std_errors.push_back(0.0);
        }
        table.push_back(s);
    }
    return table;
}

std::vector<LabeledCurve> crossover_family(double g, double zeta) {
    std::vector<LabeledCurve> curves;
    for (double q : {0.01, 0.02, 0.04, 0.08}) {
        LabeledCurve c;
        c.q = q;
        c.n = 64;
        for (int t = 1; t <= 400; t++) {
            double u = t * std::pow(q, zeta);
            c.x.push_back(t);
            c.y.push_back(std::pow(q, g) * (1 + 2 / (1 + u * u)));
            c.y_err.push_back(0);
        }
        curves.push_back(c);
    }
    return curves;
}

}  // namespace

TEST(extract_tau, examples) {
    std::vector<double> constant(50, 3.0);
    EXPECT_FALSE(extract_tau(constant, 10).has_value());

    std::vector<double> drop = {5, 5, 5, 0, 0};
    auto tau = extract_tau(drop, 2);
    ASSERT_TRUE(tau.has_value());
    EXPECT_LE(*tau, 1.0);
    EXPECT_GT(*tau, 0.0);

    std::vector<double> dead = {4, 0, 0, 0};
    EXPECT_FALSE(extract_tau(dead, 1).has_value());
    EXPECT_THROW(extract_tau(dead, 9), std::invalid_argument);
}

TEST(extract_tau, exponential_closed_form) {
    for (double c : {5.0, 10.0, 40.0}) {
        const size_t t0 = 7;
        std::vector<double> v(t0 + 400);
        for (size_t t = 0; t < v.size(); t++) {
            v[t] = 50 * std::pow(2.0, -(static_cast<double>(t) - t0) / c);
        }
        auto tau = extract_tau(v, t0);
        ASSERT_TRUE(tau.has_value());
        double expected = c * std::log2(1 / 0.15);
        EXPECT_NEAR(expected / c, 2.737, 1e-3);
        // Linear interpolation of a convex curve overshoots by < 1 sample.
        EXPECT_NEAR(*tau, expected, 1.0);
    }
}

TEST(extract_tau, decay_curve_with_times) {
    DecayCurve curve;
    curve.times = {0, 2, 4, 6};
    curve.values = {10, 10, 5, 0};
    auto tau = extract_tau(curve, 2);
    ASSERT_TRUE(tau.has_value());
    // 1.5 is reached at t = 4 + 2 * (5 - 1.5) / 5 = 5.4.
    EXPECT_NEAR(*tau, 3.4, 1e-12);
    DecayCurve bad = curve;
    bad.times = {0, 2, 2, 6};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    EXPECT_THROW(extract_tau(curve, 3), std::invalid_argument);
}

TEST(extract_tau, monotone_under_pointwise_order) {
    Rng rng(4);
    for (int trial = 0; trial < 500; trial++) {
        std::vector<double> a(60), b(60);
        double v = 20;
        for (size_t t = 0; t < a.size(); t++) {
            v *= 0.9 + 0.15 * rng.uniform();
            a[t] = v;
            b[t] = t <= 10 ? v : v * rng.uniform();
        }
        auto ta = extract_tau(a, 10), tb = extract_tau(b, 10);
        if (ta) {
            ASSERT_TRUE(tb.has_value());
            EXPECT_LE(*tb, *ta + 1e-12);
        }
    }
}

TEST(fit_crossing, synthetic_round_trip) {
    auto fit = fit_crossing(synthetic_table(1.5, 0.08, 1.1, {20, 40, 60, 80}));
    EXPECT_NEAR(fit.z, 1.5, 0.015);
    EXPECT_NEAR(fit.p_c, 0.08, 0.0008);
    EXPECT_EQ(fit.crossings.size(), 6u);
    EXPECT_GE(fit.cov_pp, 0.0);
    EXPECT_GE(fit.cov_zz, 0.0);
}

TEST(fit_crossing, deterministic) {
    auto table = synthetic_table(1.3, 0.09, 1.0, {16, 32, 64});
    for (auto &s : table) {
        for (size_t i = 0; i < s.taus.size(); i++) {
            s.std_errors[i] = 0.02 * s.taus[i];
        }
    }
    auto a = fit_crossing(table), b = fit_crossing(table);
    EXPECT_EQ(a.p_c, b.p_c);
    EXPECT_EQ(a.z, b.z);
    EXPECT_EQ(a.cov_pz, b.cov_pz);
    EXPECT_GT(a.bootstrap_used, 0u);
}

TEST(fit_crossing, errors) {
    auto table = synthetic_table(1.5, 0.08, 1.1, {20, 40, 60});
    auto dup = table;
    dup[2].n = 20;
    EXPECT_THROW(fit_crossing(dup), std::invalid_argument);
    auto two = table;
    two.pop_back();
    EXPECT_THROW(fit_crossing(two), std::invalid_argument);
    // Shift one curve far above the others so it never crosses.
    auto apart = table;
    for (double &t : apart[1].taus) {
        t *= 1e6;
    }
    try {
        fit_crossing(apart);
        FAIL() << "expected an error";
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("N=40"), std::string::npos) << e.what();
    }
}

TEST(collapse_objective, identity_symmetry_and_errors) {
    auto curves = crossover_family(0, 0);
    std::vector<double> lower = {-1, -1, -1, -1}, upper = {1, 1, 1, 1};
    auto spec = generic_collapse_spec(lower, upper);
    std::vector<double> zero = {0, 0, 0, 0};
    EXPECT_EQ(collapse_objective(curves, spec, zero), 0.0);

    auto family = crossover_family(0.32, 0.675);
    auto cross = crossover_collapse_spec();
    std::vector<double> guess = {0.2, 0.5};
    double forward = collapse_objective(family, cross, guess);
    std::reverse(family.begin(), family.end());
    EXPECT_NEAR(collapse_objective(family, cross, guess), forward, 1e-12 * forward);
    EXPECT_GT(forward, 0.0);

    std::vector<LabeledCurve> one = {family[0]};
    EXPECT_THROW(collapse_objective(one, cross, guess), std::invalid_argument);
    std::vector<double> outside = {2.0, 0.5};
    EXPECT_THROW(collapse_objective(family, cross, outside), std::invalid_argument);

    LabeledCurve far = family[0];
    for (double &x : far.x) {
        x += 1e9;
    }
    std::vector<LabeledCurve> disjoint = {family[0], far};
    EXPECT_THROW(collapse_objective(disjoint, generic_collapse_spec(lower, upper), zero), std::invalid_argument);
}

TEST(collapse_objective, minimized_at_planted_exponents) {
    auto family = crossover_family(0.32, 0.675);
    auto spec = crossover_collapse_spec();
    std::vector<double> planted = {0.32, 0.675};
    double best = collapse_objective(family, spec, planted);
    for (double dg : {-0.05, 0.0, 0.05}) {
        for (double dz : {-0.05, 0.0, 0.05}) {
            if (dg == 0 && dz == 0) {
                continue;
            }
            std::vector<double> off = {0.32 + dg, 0.675 + dz};
            EXPECT_GT(collapse_objective(family, spec, off), best);
        }
    }
}

TEST(fit_collapse, crossover_round_trip) {
    auto fit = fit_collapse(crossover_family(0.32, 0.675), crossover_collapse_spec());
    ASSERT_EQ(fit.exponents.size(), 2u);
    EXPECT_NEAR(fit.exponents[0], 0.32, 0.05 * 0.32);
    EXPECT_NEAR(fit.exponents[1], 0.675, 0.05 * 0.675);
    EXPECT_TRUE(fit.converged);
    EXPECT_FALSE(fit.degenerate);
}

TEST(fit_collapse, tau_round_trip) {
    std::vector<LabeledCurve> curves;
    for (const auto &s : synthetic_table(1.5, 0.08, 1.1, {20, 40, 60, 80})) {
        LabeledCurve c;
        c.n = static_cast<double>(s.n);
        c.x = s.ps;
        c.y = s.taus;
        c.y_err = s.std_errors;
        curves.push_back(c);
    }
    auto fit = fit_collapse(curves, tau_collapse_spec());
    EXPECT_NEAR(fit.exponents[0], 1.5, 0.05 * 1.5);
    EXPECT_NEAR(fit.exponents[1], 1.1, 0.05 * 1.1);
    EXPECT_NEAR(fit.exponents[2], 0.08, 0.05 * 0.08);
}

TEST(fit_collapse, single_curve_is_degenerate) {
    auto family = crossover_family(0.32, 0.675);
    std::vector<LabeledCurve> one = {family[0]};
    auto fit = fit_collapse(one, crossover_collapse_spec());
    EXPECT_TRUE(fit.degenerate);
    EXPECT_EQ(fit.objective, 0.0);
}

TEST(fit_collapse, deterministic) {
    auto family = crossover_family(0.3, 0.6);
    auto a = fit_collapse(family, crossover_collapse_spec());
    auto b = fit_collapse(family, crossover_collapse_spec());
    EXPECT_EQ(a.exponents, b.exponents);
    EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(nelder_mead, quadratic_in_box) {
    std::vector<double> lo = {-5, -5}, hi = {5, 5};
    auto r = nelder_mead([](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1) + 3 * (x[1] + 2) * (x[1] + 2); },
                         {0, 0}, lo, hi, 2000, 1e-14);
    EXPECT_NEAR(r.x[0], 1, 1e-5);
    EXPECT_NEAR(r.x[1], -2, 1e-5);
    // Minimum outside the box lands on the boundary.
    auto edge = nelder_mead([](std::span<const double> x) { return (x[0] - 9) * (x[0] - 9) + x[1] * x[1]; }, {0, 0},
                            lo, hi, 2000, 1e-14);
    EXPECT_NEAR(edge.x[0], 5, 1e-5);
}
