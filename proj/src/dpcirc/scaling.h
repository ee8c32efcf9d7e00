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

#ifndef DPCIRC_SCALING_H
#define DPCIRC_SCALING_H

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dpcirc {

/// Reference directed-percolation exponents, for comparison only.
namespace dp_exponents {
constexpr double kZ = 1.58;
constexpr double kNu = 1.09;
constexpr double kGamma = 0.75;
constexpr double kEta = 2.34;
}  // namespace dp_exponents

struct DecayCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> std_errors;
    size_t n = 0;
    double p = 0;
    double q = 0;
    double h = 0;

    /// Times strictly increasing, values nonnegative, matching lengths.
    void validate() const;
    static DecayCurve from_series(std::span<const double> values, std::span<const double> std_errors = {});
};

/// Elapsed time after t0 until the curve first falls to fraction * value(t0),
/// linearly interpolated between samples. nullopt (censored) if it never does or
/// if value(t0) is already 0. t0 must be a sample time; throws otherwise.
std::optional<double> extract_tau(const DecayCurve &curve, double t0, double fraction = 0.15);

/// Integer-time convenience: values[t] at t = 0, 1, ...
std::optional<double> extract_tau(std::span<const double> values, size_t t0, double fraction = 0.15);

/// tau(p) for one system size, sorted by p.
struct TauSeries {
    size_t n = 0;
    std::vector<double> ps;
    std::vector<double> taus;
    std::vector<double> std_errors;
};

struct CrossingOptions {
    double z_min = 0.5;
    double z_max = 3.0;
    size_t z_grid = 251;
    size_t bootstrap = 200;
    uint64_t seed = 1;
};

struct CrossingFit {
    double p_c = 0;
    double z = 0;
    double spread = 0;
    /// Covariance of (p_c, z) over parametric resamples of tau within errors.
    double cov_pp = 0;
    double cov_pz = 0;
    double cov_zz = 0;
    size_t bootstrap_used = 0;
    /// Intersection p of each size pair at the best z.
    std::vector<double> crossings;
};

/// Intersection of two tau(p)/N^z curves: the first sign change of the
/// difference on the common p range, linearly interpolated. nullopt if none.
std::optional<double> pair_crossing(const TauSeries &a, const TauSeries &b, double z);

/// Chooses z to minimize the spread (max - min) of pairwise crossings, then
/// p_c as their mean. Needs >= 3 distinct sizes with >= 5 finite points each.
/// Throws std::invalid_argument on degenerate input and std::runtime_error
/// naming the size pair when two curves never cross.
CrossingFit fit_crossing(const std::vector<TauSeries> &table, const CrossingOptions &options = {});

/// One labelled curve for collapse analysis.
struct LabeledCurve {
    double n = 0;  // system size
    double p = 0;
    double q = 0;  // generic control parameter (q or h)
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_err;
};

/// Power-law rescaling of x and y as a function of named exponents. Each
/// transform maps (curve, exponents, x or y) to the rescaled value.
struct CollapseSpec {
    std::vector<std::string> names;
    std::vector<double> lower;
    std::vector<double> upper;
    std::function<double(const LabeledCurve &, std::span<const double>, double)> x_transform;
    std::function<double(const LabeledCurve &, std::span<const double>, double)> y_transform;
    /// Multiplier applied to y errors (the derivative of y_transform in y).
    std::function<double(const LabeledCurve &, std::span<const double>)> y_scale;
    /// Take logarithms of the rescaled x before interpolation.
    bool log_x = false;

    void check(std::span<const double> exponents) const;
};

/// x = (p - p_c) N^{1/nu}, y = tau / N^z with exponents (z, nu, p_c); curves use
/// x = p and y = tau.
CollapseSpec tau_collapse_spec(double z_lo = 1.0, double z_hi = 2.2, double nu_lo = 0.5, double nu_hi = 2.5,
                               double pc_lo = 0.05, double pc_hi = 0.12);

/// x = t q^{z/eta}, y = S q^{-gamma/eta} with exponents (gamma/eta, z/eta);
/// curves use x = t, y = S and carry q.
CollapseSpec crossover_collapse_spec(double g_lo = 0.0, double g_hi = 1.0, double z_lo = 0.2, double z_hi = 1.5);

/// x' = x n^ax q^bx, y' = y n^ay q^by with exponents (ax, bx, ay, by), for
/// axis choices not covered by the named ansatzes.
CollapseSpec generic_collapse_spec(std::span<const double> lower, std::span<const double> upper);

/// Weighted mean squared deviation of every rescaled point from the master
/// curve built by linear interpolation of each other curve, over overlapping x.
/// Weights 1 / (e_i^2 + E_i^2 + (0.01 y)^2), normalized by the mean squared y so
/// the value is scale invariant. 0 when all rescaled curves coincide. Throws
/// std::invalid_argument for < 2 curves or no overlap.
double collapse_objective(const std::vector<LabeledCurve> &curves, const CollapseSpec &spec,
                          std::span<const double> exponents);

struct CollapseOptions {
    size_t restarts = 12;
    size_t max_iterations = 2000;
    double tolerance = 1e-10;
    uint64_t seed = 1;
};

struct CollapseFit {
    std::vector<double> exponents;
    double objective = 0;
    bool converged = false;
    bool degenerate = false;
    size_t best_restart = 0;
};

/// Bounded Nelder-Mead from the bounds center plus seeded random starts.
/// A single curve is degenerate: objective 0 and degenerate = true.
CollapseFit fit_collapse(const std::vector<LabeledCurve> &curves, const CollapseSpec &spec,
                         const CollapseOptions &options = {});

/// Plain bounded Nelder-Mead (parameters clamped into the box).
struct SimplexResult {
    std::vector<double> x;
    double value = 0;
    size_t iterations = 0;
};
SimplexResult nelder_mead(const std::function<double(std::span<const double>)> &f, std::vector<double> start,
                          std::span<const double> lower, std::span<const double> upper, size_t max_iterations,
                          double tolerance);

}  // namespace dpcirc

#endif
