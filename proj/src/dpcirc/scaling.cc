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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dpcirc/rng.h"

namespace dpcirc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal(Rng &rng) {
    // Box-Muller on the portable uniform.
    double u1 = 1.0 - rng.uniform();
    double u2 = rng.uniform();
    return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

}  // namespace

void DecayCurve::validate() const {
    if (times.size() != values.size() || (!std_errors.empty() && std_errors.size() != values.size())) {
        throw std::invalid_argument("DecayCurve: column lengths differ");
    }
    for (size_t i = 1; i < times.size(); i++) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("DecayCurve: times must be strictly increasing");
        }
    }
    for (double v : values) {
        if (!(v >= 0)) {
            throw std::invalid_argument("DecayCurve: values must be nonnegative");
        }
    }
}

DecayCurve DecayCurve::from_series(std::span<const double> values, std::span<const double> std_errors) {
    DecayCurve c;
    c.values.assign(values.begin(), values.end());
    c.std_errors.assign(std_errors.begin(), std_errors.end());
    c.times.resize(values.size());
    std::iota(c.times.begin(), c.times.end(), 0.0);
    return c;
}

std::optional<double> extract_tau(const DecayCurve &curve, double t0, double fraction) {
    curve.validate();
    auto it = std::find(curve.times.begin(), curve.times.end(), t0);
    if (it == curve.times.end()) {
        throw std::invalid_argument("extract_tau: t0 is not a sample time of the curve");
    }
    size_t i0 = static_cast<size_t>(it - curve.times.begin());
    double v0 = curve.values[i0];
    if (v0 <= 0) {
        return std::nullopt;
    }
    double target = fraction * v0;
    for (size_t i = i0 + 1; i < curve.values.size(); i++) {
        if (curve.values[i] <= target) {
            double va = curve.values[i - 1], vb = curve.values[i];
            double ta = curve.times[i - 1], tb = curve.times[i];
            double t = va == vb ? tb : ta + (va - target) / (va - vb) * (tb - ta);
            return t - t0;
        }
    }
    return std::nullopt;
}

std::optional<double> extract_tau(std::span<const double> values, size_t t0, double fraction) {
    if (t0 >= values.size()) {
        throw std::invalid_argument("extract_tau: t0 beyond the end of the curve");
    }
    double v0 = values[t0];
    if (v0 <= 0) {
        return std::nullopt;
    }
    double target = fraction * v0;
    for (size_t t = t0 + 1; t < values.size(); t++) {
        if (values[t] <= target) {
            double va = values[t - 1], vb = values[t];
            double frac = va == vb ? 1.0 : (va - target) / (va - vb);
            return static_cast<double>(t - 1 - t0) + frac;
        }
    }
    return std::nullopt;
}

namespace {

double interpolate(const std::vector<double> &xs, const std::vector<double> &ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) {
        return ys.front();
    }
    if (it == xs.end()) {
        return ys.back();
    }
    size_t j = static_cast<size_t>(it - xs.begin());
    double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + w * (ys[j] - ys[j - 1]);
}

// Finite points of a series, sorted by p.
TauSeries finite_part(const TauSeries &s) {
    std::vector<size_t> order(s.ps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return s.ps[a] < s.ps[b]; });
    TauSeries out;
    out.n = s.n;
    for (size_t i : order) {
        if (std::isfinite(s.taus[i])) {
            out.ps.push_back(s.ps[i]);
            out.taus.push_back(s.taus[i]);
            out.std_errors.push_back(i < s.std_errors.size() ? s.std_errors[i] : 0.0);
        }
    }
    return out;
}

}  // namespace

std::optional<double> pair_crossing(const TauSeries &a, const TauSeries &b, double z) {
    if (a.ps.size() < 2 || b.ps.size() < 2) {
        return std::nullopt;
    }
    double lo = std::max(a.ps.front(), b.ps.front());
    double hi = std::min(a.ps.back(), b.ps.back());
    if (!(lo < hi)) {
        return std::nullopt;
    }
    std::vector<double> grid;
    for (const auto *s : {&a, &b}) {
        for (double p : s->ps) {
            if (p >= lo && p <= hi) {
                grid.push_back(p);
            }
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double sa = std::pow(static_cast<double>(a.n), -z);
    double sb = std::pow(static_cast<double>(b.n), -z);
    auto diff = [&](double p) { return interpolate(a.ps, a.taus, p) * sa - interpolate(b.ps, b.taus, p) * sb; };
    double prev = diff(grid[0]);
    if (prev == 0) {
        return grid[0];
    }
    for (size_t i = 1; i < grid.size(); i++) {
        double cur = diff(grid[i]);
        if (cur == 0) {
            return grid[i];
        }
        if ((prev < 0) != (cur < 0)) {
            return grid[i - 1] + prev / (prev - cur) * (grid[i] - grid[i - 1]);
        }
        prev = cur;
    }
    return std::nullopt;
}

namespace {

struct SpreadEval {
    double spread = kInf;
    double mean = 0;
    std::vector<double> crossings;
    size_t failed_a = 0;
    size_t failed_b = 0;
};

SpreadEval crossing_spread(const std::vector<TauSeries> &series, double z) {
    SpreadEval e;
    for (size_t i = 0; i < series.size(); i++) {
        for (size_t j = i + 1; j < series.size(); j++) {
            auto c = pair_crossing(series[i], series[j], z);
            if (!c) {
                e.failed_a = series[i].n;
                e.failed_b = series[j].n;
                e.crossings.clear();
                return e;
            }
            e.crossings.push_back(*c);
        }
    }
    auto [mn, mx] = std::minmax_element(e.crossings.begin(), e.crossings.end());
    e.spread = *mx - *mn;
    e.mean = std::accumulate(e.crossings.begin(), e.crossings.end(), 0.0) / static_cast<double>(e.crossings.size());
    return e;
}

// Grid scan followed by a finer local scan; ties go to the smaller z.
SpreadEval best_spread(const std::vector<TauSeries> &series, const CrossingOptions &o, double &z_best) {
    SpreadEval best;
    z_best = std::numeric_limits<double>::quiet_NaN();
    size_t grid = std::max<size_t>(o.z_grid, 2);
    double step = (o.z_max - o.z_min) / static_cast<double>(grid - 1);
    SpreadEval last_failure;
    for (size_t k = 0; k < grid; k++) {
        double z = o.z_min + step * static_cast<double>(k);
        SpreadEval e = crossing_spread(series, z);
        if (e.crossings.empty()) {
            last_failure = e;
        } else if (e.spread < best.spread) {
            best = e;
            z_best = z;
        }
    }
    if (!std::isfinite(best.spread)) {
        return last_failure;
    }
    double lo = std::max(o.z_min, z_best - step), hi = std::min(o.z_max, z_best + step);
    for (size_t k = 0; k <= 200; k++) {
        double z = lo + (hi - lo) * static_cast<double>(k) / 200.0;
        SpreadEval e = crossing_spread(series, z);
        if (!e.crossings.empty() && e.spread < best.spread) {
            best = e;
            z_best = z;
        }
    }
    return best;
}

}  // namespace

CrossingFit fit_crossing(const std::vector<TauSeries> &table, const CrossingOptions &options) {
    if (table.size() < 3) {
        throw std::invalid_argument("fit_crossing needs at least 3 system sizes");
    }
    std::vector<TauSeries> series;
    std::map<size_t, int> seen;
    for (const TauSeries &s : table) {
        if (s.ps.size() != s.taus.size()) {
            throw std::invalid_argument("fit_crossing: p and tau columns differ in length");
        }
        if (seen[s.n]++) {
            throw std::invalid_argument("fit_crossing: system size " + std::to_string(s.n) +
                                        " appears twice (degenerate input)");
        }
        series.push_back(finite_part(s));
        if (series.back().ps.size() < 5) {
            throw std::invalid_argument("fit_crossing: size " + std::to_string(s.n) +
                                        " has fewer than 5 uncensored p values");
        }
    }
    std::sort(series.begin(), series.end(), [](const TauSeries &a, const TauSeries &b) { return a.n < b.n; });

    double z = 0;
    SpreadEval best = best_spread(series, options, z);
    if (best.crossings.empty()) {
        throw std::runtime_error("fit_crossing: tau/N^z curves for N=" + std::to_string(best.failed_a) + " and N=" +
                                 std::to_string(best.failed_b) + " do not cross in the sampled p range");
    }
    CrossingFit fit;
    fit.p_c = best.mean;
    fit.z = z;
    fit.spread = best.spread;
    fit.crossings = best.crossings;

    Rng rng(derive_seed(options.seed, 0, StreamRole::kBootstrap));
    std::vector<double> bp, bz;
    for (size_t b = 0; b < options.bootstrap; b++) {
        std::vector<TauSeries> resampled = series;
        for (auto &s : resampled) {
            for (size_t i = 0; i < s.taus.size(); i++) {
                s.taus[i] = std::max(0.0, s.taus[i] + s.std_errors[i] * normal(rng));
            }
        }
        double zb = 0;
        SpreadEval e = best_spread(resampled, options, zb);
        if (!e.crossings.empty()) {
            bp.push_back(e.mean);
            bz.push_back(zb);
        }
    }
    fit.bootstrap_used = bp.size();
    if (bp.size() > 1) {
        double mp = std::accumulate(bp.begin(), bp.end(), 0.0) / static_cast<double>(bp.size());
        double mz = std::accumulate(bz.begin(), bz.end(), 0.0) / static_cast<double>(bz.size());
        for (size_t i = 0; i < bp.size(); i++) {
            fit.cov_pp += (bp[i] - mp) * (bp[i] - mp);
            fit.cov_pz += (bp[i] - mp) * (bz[i] - mz);
            fit.cov_zz += (bz[i] - mz) * (bz[i] - mz);
        }
        double d = static_cast<double>(bp.size() - 1);
        fit.cov_pp /= d;
        fit.cov_pz /= d;
        fit.cov_zz /= d;
    }
    return fit;
}

void CollapseSpec::check(std::span<const double> exponents) const {
    if (exponents.size() != names.size() || lower.size() != names.size() || upper.size() != names.size()) {
        throw std::invalid_argument("collapse: expected " + std::to_string(names.size()) + " exponents");
    }
    for (size_t i = 0; i < names.size(); i++) {
        if (!(exponents[i] >= lower[i] && exponents[i] <= upper[i])) {
            throw std::invalid_argument("collapse: exponent " + names[i] + " outside its bounds");
        }
    }
}

CollapseSpec tau_collapse_spec(double z_lo, double z_hi, double nu_lo, double nu_hi, double pc_lo, double pc_hi) {
    CollapseSpec s;
    s.names = {"z", "nu", "p_c"};
    s.lower = {z_lo, nu_lo, pc_lo};
    s.upper = {z_hi, nu_hi, pc_hi};
    s.x_transform = [](const LabeledCurve &c, std::span<const double> e, double x) {
        return (x - e[2]) * std::pow(c.n, 1.0 / e[1]);
    };
    s.y_transform = [](const LabeledCurve &c, std::span<const double> e, double y) { return y * std::pow(c.n, -e[0]); };
    s.y_scale = [](const LabeledCurve &c, std::span<const double> e) { return std::pow(c.n, -e[0]); };
    return s;
}

CollapseSpec crossover_collapse_spec(double g_lo, double g_hi, double z_lo, double z_hi) {
    CollapseSpec s;
    s.names = {"gamma_over_eta", "z_over_eta"};
    s.lower = {g_lo, z_lo};
    s.upper = {g_hi, z_hi};
    s.x_transform = [](const LabeledCurve &c, std::span<const double> e, double x) { return x * std::pow(c.q, e[1]); };
    s.y_transform = [](const LabeledCurve &c, std::span<const double> e, double y) { return y * std::pow(c.q, -e[0]); };
    s.y_scale = [](const LabeledCurve &c, std::span<const double> e) { return std::pow(c.q, -e[0]); };
    s.log_x = true;
    return s;
}

CollapseSpec generic_collapse_spec(std::span<const double> lower, std::span<const double> upper) {
    if (lower.size() != 4 || upper.size() != 4) {
        throw std::invalid_argument("generic collapse needs bounds for (ax, bx, ay, by)");
    }
    CollapseSpec s;
    s.names = {"ax", "bx", "ay", "by"};
    s.lower.assign(lower.begin(), lower.end());
    s.upper.assign(upper.begin(), upper.end());
    s.x_transform = [](const LabeledCurve &c, std::span<const double> e, double x) {
        return x * std::pow(c.n, e[0]) * std::pow(c.q, e[1]);
    };
    s.y_transform = [](const LabeledCurve &c, std::span<const double> e, double y) {
        return y * std::pow(c.n, e[2]) * std::pow(c.q, e[3]);
    };
    s.y_scale = [](const LabeledCurve &c, std::span<const double> e) {
        return std::pow(c.n, e[2]) * std::pow(c.q, e[3]);
    };
    return s;
}

namespace {

struct Rescaled {
    std::vector<double> x, y, e;
};

Rescaled rescale(const LabeledCurve &c, const CollapseSpec &spec, std::span<const double> exps) {
    Rescaled r;
    double ys = spec.y_scale ? std::abs(spec.y_scale(c, exps)) : 1.0;
    std::vector<size_t> order;
    std::vector<double> xs;
    for (size_t i = 0; i < c.x.size(); i++) {
        double x = spec.x_transform(c, exps, c.x[i]);
        if (spec.log_x) {
            if (!(x > 0)) {
                continue;
            }
            x = std::log(x);
        }
        if (!std::isfinite(x) || !std::isfinite(c.y[i])) {
            continue;
        }
        r.x.push_back(x);
        r.y.push_back(spec.y_transform(c, exps, c.y[i]));
        r.e.push_back(i < c.y_err.size() ? c.y_err[i] * ys : 0.0);
    }
    std::vector<size_t> idx(r.x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return r.x[a] < r.x[b]; });
    Rescaled sorted;
    for (size_t i : idx) {
        if (!sorted.x.empty() && sorted.x.back() == r.x[i]) {
            continue;
        }
        sorted.x.push_back(r.x[i]);
        sorted.y.push_back(r.y[i]);
        sorted.e.push_back(r.e[i]);
    }
    return sorted;
}

}  // namespace

double collapse_objective(const std::vector<LabeledCurve> &curves, const CollapseSpec &spec,
                          std::span<const double> exponents) {
    if (curves.size() < 2) {
        throw std::invalid_argument("collapse_objective needs at least 2 curves");
    }
    spec.check(exponents);
    std::vector<Rescaled> r;
    r.reserve(curves.size());
    for (const auto &c : curves) {
        r.push_back(rescale(c, spec, exponents));
    }
    double total = 0;
    size_t count = 0;
    for (size_t i = 0; i < r.size(); i++) {
        for (size_t k = 0; k < r.size(); k++) {
            if (k == i || r[k].x.size() < 2) {
                continue;
            }
            const Rescaled &m = r[k];
            for (size_t j = 0; j < r[i].x.size(); j++) {
                double x = r[i].x[j];
                if (x < m.x.front() || x > m.x.back()) {
                    continue;
                }
                double y_m = interpolate(m.x, m.y, x);
                double e_m = interpolate(m.x, m.e, x);
                double d = r[i].y[j] - y_m;
                double scale = 0.01 * std::max(std::abs(r[i].y[j]), std::abs(y_m));
                double var = r[i].e[j] * r[i].e[j] + e_m * e_m + scale * scale;
                total += d == 0 ? 0.0 : d * d / var;
                count++;
            }
        }
    }
    if (count == 0) {
        throw std::invalid_argument("collapse_objective: rescaled curves do not overlap");
    }
    return total / static_cast<double>(count);
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)> &f, std::vector<double> start,
                          std::span<const double> lower, std::span<const double> upper, size_t max_iterations,
                          double tolerance) {
    const size_t d = start.size();
    auto clamp = [&](std::vector<double> &x) {
        for (size_t i = 0; i < d; i++) {
            x[i] = std::clamp(x[i], lower[i], upper[i]);
        }
    };
    std::vector<std::vector<double>> simplex(d + 1, start);
    for (size_t i = 0; i < d; i++) {
        double step = 0.1 * (upper[i] - lower[i]);
        simplex[i + 1][i] += simplex[i + 1][i] + step <= upper[i] ? step : -step;
        clamp(simplex[i + 1]);
    }
    std::vector<double> values(d + 1);
    for (size_t i = 0; i <= d; i++) {
        values[i] = f(simplex[i]);
    }
    SimplexResult res;
    std::vector<size_t> order(d + 1);
    for (res.iterations = 0; res.iterations < max_iterations; res.iterations++) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
        size_t best = order[0], worst = order[d], second = order[d - 1];
        if (std::abs(values[worst] - values[best]) <= tolerance * (std::abs(values[best]) + tolerance)) {
            double size = 0;
            for (size_t i = 0; i <= d; i++) {
                for (size_t k = 0; k < d; k++) {
                    size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]) / (upper[k] - lower[k]));
                }
            }
            if (size < 1e-7) {
                break;
            }
        }
        std::vector<double> centroid(d, 0.0);
        for (size_t i = 0; i <= d; i++) {
            if (i != worst) {
                for (size_t k = 0; k < d; k++) {
                    centroid[k] += simplex[i][k] / static_cast<double>(d);
                }
            }
        }
        auto along = [&](double t) {
            std::vector<double> x(d);
            for (size_t k = 0; k < d; k++) {
                x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            }
            clamp(x);
            return x;
        };
        std::vector<double> xr = along(-1);
        double fr = f(xr);
        if (fr < values[best]) {
            std::vector<double> xe = along(-2);
            double fe = f(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                values[worst] = fe;
            } else {
                simplex[worst] = xr;
                values[worst] = fr;
            }
        } else if (fr < values[second]) {
            simplex[worst] = xr;
            values[worst] = fr;
        } else {
            bool outside = fr < values[worst];
            std::vector<double> xc = along(outside ? -0.5 : 0.5);
            double fc = f(xc);
            if (fc < (outside ? fr : values[worst])) {
                simplex[worst] = xc;
                values[worst] = fc;
            } else {
                for (size_t i = 0; i <= d; i++) {
                    if (i == best) {
                        continue;
                    }
                    for (size_t k = 0; k < d; k++) {
                        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    }
                    values[i] = f(simplex[i]);
                }
            }
        }
    }
    size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    res.x = simplex[best];
    res.value = values[best];
    return res;
}

CollapseFit fit_collapse(const std::vector<LabeledCurve> &curves, const CollapseSpec &spec,
                         const CollapseOptions &options) {
    const size_t d = spec.names.size();
    CollapseFit fit;
    std::vector<double> center(d);
    for (size_t i = 0; i < d; i++) {
        center[i] = 0.5 * (spec.lower[i] + spec.upper[i]);
    }
    if (curves.size() < 2) {
        fit.exponents = center;
        fit.degenerate = true;
        return fit;
    }
    auto objective = [&](std::span<const double> e) {
        try {
            return collapse_objective(curves, spec, e);
        } catch (const std::invalid_argument &) {
            return kInf;
        }
    };
    double f_center = objective(center);
    Rng rng(derive_seed(options.seed, 0, StreamRole::kBootstrap));
    fit.objective = kInf;
    for (size_t r = 0; r < std::max<size_t>(options.restarts, 1); r++) {
        std::vector<double> start = center;
        if (r > 0) {
            for (size_t i = 0; i < d; i++) {
                start[i] = spec.lower[i] + (spec.upper[i] - spec.lower[i]) * rng.uniform();
            }
        }
        SimplexResult res =
            nelder_mead(objective, start, spec.lower, spec.upper, options.max_iterations, options.tolerance);
        // Strict improvement keeps the earliest restart on ties.
        if (res.value < fit.objective) {
            fit.objective = res.value;
            fit.exponents = res.x;
            fit.best_restart = r;
        }
    }
    fit.converged = std::isfinite(fit.objective) && (fit.objective < f_center || fit.objective == 0);
    return fit;
}

}  // namespace dpcirc
