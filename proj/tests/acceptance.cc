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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion followed
// by the measured numbers. All protocol constants and tolerances live at the
// top of each check so they can be audited in one place.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpcirc/dp_model.h"
#include "dpcirc/experiments.h"
#include "dpcirc/scaling.h"
#include "dpcirc/verify.h"

namespace {

using namespace dpcirc;

constexpr uint64_t kSeed = 20260101;

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

CheckResult timed(const std::string &name, const std::function<void(CheckResult &)> &body) {
    CheckResult r;
    r.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception &e) {
        r.passed = false;
        r.detail += std::string(" exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

bool within_rel(double value, double target, double rel) {
    return std::abs(value / target - 1) <= rel;
}

std::vector<double> grid(double lo, double hi, size_t count) {
    std::vector<double> out(count);
    for (size_t i = 0; i < count; i++) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

// Critical point of the circuit from the tau crossing, plus the reduced
// precision collapse test: the fitted exponents must beat every +-0.5 shift of
// z or nu by a factor of 5 in the collapse objective.
CheckResult critical_point(int threads) {
    return timed("critical_point", [&](CheckResult &r) {
        const double kPc = 0.081, kPcTol = 0.010, kZ = 1.5, kZTol = 0.2, kShift = 0.5, kGain = 5;
        SweepConfig c;
        c.ns = {20, 40, 60};
        c.ps = grid(0.06, 0.10, 9);
        c.realizations = 400;
        c.bootstrap = 200;
        auto points = run_sweep(c, kSeed, threads);
        std::vector<TauSeries> table;
        std::vector<LabeledCurve> curves;
        for (size_t n : c.ns) {
            TauSeries s;
            s.n = n;
            LabeledCurve lc;
            lc.n = static_cast<double>(n);
            for (const auto &pt : points) {
                if (pt.n != n) {
                    continue;
                }
                s.ps.push_back(pt.p);
                s.taus.push_back(pt.tau_mean);
                s.std_errors.push_back(std::isfinite(pt.tau_stderr) ? pt.tau_stderr : 0);
                if (std::isfinite(pt.tau_mean)) {
                    lc.x.push_back(pt.p);
                    lc.y.push_back(pt.tau_mean);
                    lc.y_err.push_back(s.std_errors.back());
                }
            }
            table.push_back(std::move(s));
            curves.push_back(std::move(lc));
        }
        CrossingFit f = fit_crossing(table);
        r.detail = fmt("p_c=%.4f (target %.3f+-%.3f) z=%.3f (target %.2f+-%.2f) sd(z)=%.3f crossings=", f.p_c, kPc,
                       kPcTol, f.z, kZ, kZTol, std::sqrt(f.cov_zz));
        for (double x : f.crossings) {
            r.detail += fmt("%.4f ", x);
        }
        bool crossing_ok = std::abs(f.p_c - kPc) <= kPcTol && std::abs(f.z - kZ) <= kZTol;

        CollapseSpec spec = tau_collapse_spec();
        CollapseFit cf = fit_collapse(curves, spec);
        // Shifted exponents may leave the fit box; only nu <= 0 is meaningless.
        CollapseSpec open = spec;
        std::fill(open.lower.begin(), open.lower.end(), -INFINITY);
        std::fill(open.upper.begin(), open.upper.end(), INFINITY);
        double worst = INFINITY;
        for (size_t k : {0, 1}) {
            for (double d : {-kShift, kShift}) {
                auto e = cf.exponents;
                e[k] += d;
                if (e[1] > 0) {
                    worst = std::min(worst, collapse_objective(curves, open, e));
                }
            }
        }
        double gain = worst / cf.objective;
        bool collapse_ok = gain >= kGain;
        r.detail += fmt("| collapse z=%.3f nu=%.3f p_c=%.4f objective=%.4g, best shifted/fitted=%.2f (need >= %.0f)",
                        cf.exponents[0], cf.exponents[1], cf.exponents[2], cf.objective, gain, kGain);
        r.passed = crossing_ok && collapse_ok;
    });
}

// Lattice model alone: censored-exponential decay time from a full lattice,
// sizes 64..256, a window around the lattice critical point, cap 5 N^1.58.
CheckResult dp_exponent(int threads) {
    return timed("dp_exponent", [&](CheckResult &r) {
        const double kZ = 1.58, kZTol = 0.10, kCap = 5;
        const size_t kTrajectories = 2000;
        std::vector<TauSeries> table;
        for (size_t n : {64, 128, 256}) {
            TauSeries s;
            s.n = n;
            auto cap = static_cast<size_t>(kCap * std::pow(static_cast<double>(n), 1.58));
            for (double p : grid(0.088, 0.0955, 6)) {
                auto times = dp_absorption_times(n, p, cap, kTrajectories, DPStart::kFull, kSeed, threads);
                auto tau = censored_exponential_time(times, cap);
                s.ps.push_back(p);
                s.taus.push_back(tau ? tau->time : NAN);
                s.std_errors.push_back(tau ? tau->std_error : 0);
            }
            table.push_back(std::move(s));
        }
        CrossingFit f = fit_crossing(table);
        r.detail = fmt("z=%.3f (target %.2f+-%.2f) sd(z)=%.3f lattice p_c=%.4f", f.z, kZ, kZTol, std::sqrt(f.cov_zz),
                       f.p_c);
        r.passed = std::abs(f.z - kZ) <= kZTol;
    });
}

// Saturation ratios and crossover collapse for one swept perturbation.
bool perturbation_family(SweepVariable variable, const char *label, int threads, std::string &detail) {
    const double kRel = 0.2, kGammaEta = dp_exponents::kGamma / dp_exponents::kEta,
                 kZEta = dp_exponents::kZ / dp_exponents::kEta;
    const std::vector<double> values = {0.01, 0.02, 0.04};
    CircuitConfig c;
    c.n = 64;
    c.p = 0.081;
    c.depth = 2000;
    auto family = run_perturbation(c, variable, values, kSeed, 100, threads);
    double target = std::pow(2.0, kGammaEta);
    bool ok = true;
    detail += fmt("%s: saturation", label);
    for (const auto &m : family) {
        detail += fmt(" %.3f", m.saturation);
    }
    detail += " ratios";
    for (size_t i = 1; i < family.size(); i++) {
        double ratio = family[i].saturation / family[i - 1].saturation;
        ok = ok && within_rel(ratio, target, kRel);
        detail += fmt(" %.3f", ratio);
    }
    std::vector<LabeledCurve> curves;
    for (const auto &m : family) {
        LabeledCurve lc;
        lc.n = 64;
        lc.p = c.p;
        lc.q = m.value;
        for (size_t t = 1; t < m.record.mean.size(); t++) {
            lc.x.push_back(static_cast<double>(t));
            lc.y.push_back(m.record.mean[t]);
            lc.y_err.push_back(m.record.std_error[t]);
        }
        curves.push_back(std::move(lc));
    }
    CollapseFit f = fit_collapse(curves, crossover_collapse_spec());
    bool collapse_ok = within_rel(f.exponents[0], kGammaEta, kRel) && within_rel(f.exponents[1], kZEta, kRel);
    detail += fmt(" (target %.3f) collapse gamma/eta=%.3f z/eta=%.3f (targets %.3f, %.3f); ", target, f.exponents[0],
                  f.exponents[1], kGammaEta, kZEta);
    return ok && collapse_ok;
}

CheckResult perturbation(int threads) {
    return timed("perturbation_scaling", [&](CheckResult &r) {
        bool q_ok = perturbation_family(SweepVariable::kQ, "q", threads, r.detail);
        bool h_ok = perturbation_family(SweepVariable::kH, "h", threads, r.detail);
        r.passed = q_ok && h_ok;
    });
}

// Peak of the antipodal MI at t = N^1.51. The location is the vertex of a
// least-squares parabola through the argmax and its two neighbours on each
// side. Unimodality: the argmax is interior and no point sits significantly
// (3 combined errors) below both an earlier and a later point.
CheckResult antipodal(int threads) {
    return timed("antipodal_mi_peak", [&](CheckResult &r) {
        const double kCenter = 0.081, kTol = 0.02, kSigmas = 3;
        const size_t kRealizations = 400;
        auto ps = grid(0.04, 0.12, 17);
        bool ok = true;
        for (size_t n : {40, 60}) {
            std::vector<double> mi, err;
            for (double p : ps) {
                CircuitConfig c;
                c.n = n;
                c.p = p;
                auto a = run_antipodal_mi(c, kSeed, kRealizations, kDefaultAntipodalZ, threads);
                mi.push_back(a.mi_mean);
                err.push_back(a.mi_stderr);
            }
            size_t k = static_cast<size_t>(std::max_element(mi.begin(), mi.end()) - mi.begin());
            bool interior = k > 0 && k + 1 < mi.size();
            bool dip = false;
            for (size_t j = 1; j + 1 < mi.size(); j++) {
                double left = 0, left_err = 0, right = 0, right_err = 0;
                for (size_t i = 0; i < j; i++) {
                    if (mi[i] > left) {
                        left = mi[i];
                        left_err = err[i];
                    }
                }
                for (size_t i = j + 1; i < mi.size(); i++) {
                    if (mi[i] > right) {
                        right = mi[i];
                        right_err = err[i];
                    }
                }
                double lo = std::min(left, right);
                double lo_err = left < right ? left_err : right_err;
                dip = dip || mi[j] < lo - kSigmas * std::hypot(err[j], lo_err);
            }
            // Quadratic fit over the window (normal equations in centered p).
            size_t a = k >= 2 ? k - 2 : 0, b = std::min(mi.size() - 1, k + 2);
            double peak = ps[k];
            if (b - a >= 2) {
                double s[5] = {}, t[3] = {};
                for (size_t i = a; i <= b; i++) {
                    double x = ps[i] - ps[k], xp = 1;
                    for (double &v : s) {
                        v += xp;
                        xp *= x;
                    }
                    t[0] += mi[i];
                    t[1] += x * mi[i];
                    t[2] += x * x * mi[i];
                }
                double m[3][4] = {{s[0], s[1], s[2], t[0]}, {s[1], s[2], s[3], t[1]}, {s[2], s[3], s[4], t[2]}};
                for (int col = 0; col < 3; col++) {
                    for (int row = col + 1; row < 3; row++) {
                        double f = m[row][col] / m[col][col];
                        for (int j = col; j < 4; j++) {
                            m[row][j] -= f * m[col][j];
                        }
                    }
                }
                double c2 = m[2][3] / m[2][2];
                double c1 = (m[1][3] - m[1][2] * c2) / m[1][1];
                if (c2 < 0) {
                    peak = std::clamp(ps[k] - c1 / (2 * c2), ps[a], ps[b]);
                }
            }
            bool this_ok = interior && !dip && std::abs(peak - kCenter) <= kTol;
            ok = ok && this_ok;
            r.detail += fmt("N=%zu argmax p=%.3f peak=%.4f (target %.3f+-%.2f) interior=%d dip=%d; ", n, ps[k], peak,
                            kCenter, kTol, interior, dip);
        }
        r.passed = ok;
    });
}

// Noise-free synthetic families with planted exponents.
CheckResult synthetic(int) {
    return timed("synthetic_round_trips", [&](CheckResult &r) {
        const double kCrossTol = 0.01, kCollapseTol = 0.05;
        const double z = 1.5, nu = 1.1, pc = 0.08, g = 0.32, ze = 0.675;
        std::vector<TauSeries> table;
        std::vector<LabeledCurve> tau_curves;
        for (size_t n : {20, 40, 60, 80}) {
            TauSeries s;
            s.n = n;
            LabeledCurve lc;
            lc.n = static_cast<double>(n);
            for (double p : grid(0.06, 0.10, 41)) {
                double tau = std::pow(n, z) * 3 * std::exp(-4 * (p - pc) * std::pow(n, 1 / nu));
                s.ps.push_back(p);
                s.taus.push_back(tau);
                s.std_errors.push_back(0);
                lc.x.push_back(p);
                lc.y.push_back(tau);
                lc.y_err.push_back(0);
            }
            table.push_back(std::move(s));
            tau_curves.push_back(std::move(lc));
        }
        CrossingFit f = fit_crossing(table);
        bool cross_ok = within_rel(f.p_c, pc, kCrossTol) && within_rel(f.z, z, kCrossTol);
        CollapseFit tc = fit_collapse(tau_curves, tau_collapse_spec());
        bool tau_ok = within_rel(tc.exponents[0], z, kCollapseTol) && within_rel(tc.exponents[1], nu, kCollapseTol) &&
                      within_rel(tc.exponents[2], pc, kCollapseTol);

        std::vector<LabeledCurve> decay;
        for (double q : {0.01, 0.02, 0.04, 0.08}) {
            LabeledCurve lc;
            lc.n = 64;
            lc.p = 0.081;
            lc.q = q;
            for (int t = 1; t <= 400; t++) {
                double u = t * std::pow(q, ze);
                lc.x.push_back(t);
                lc.y.push_back(std::pow(q, g) * (1 + 2 / (1 + u * u)));
                lc.y_err.push_back(0);
            }
            decay.push_back(std::move(lc));
        }
        CollapseFit dc = fit_collapse(decay, crossover_collapse_spec());
        bool decay_ok = within_rel(dc.exponents[0], g, kCollapseTol) && within_rel(dc.exponents[1], ze, kCollapseTol);
        r.detail = fmt(
            "crossing p_c=%.5f z=%.4f (planted %.2f, %.2f, tol %.0f%%) | tau collapse z=%.4f nu=%.4f p_c=%.5f | "
            "decay collapse %.4f %.4f (planted %.3f, %.3f, tol %.0f%%)",
            f.p_c, f.z, pc, z, 100 * kCrossTol, tc.exponents[0], tc.exponents[1], tc.exponents[2], dc.exponents[0],
            dc.exponents[1], g, ze, 100 * kCollapseTol);
        r.passed = cross_ok && tau_ok && decay_ok;
    });
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"dpcirc acceptance run"};
    bool report_only = false;
    int threads = 0;
    std::vector<int> only;
    app.add_flag("--report-only", report_only, "exit 0 once every check has reported, even on FAIL lines");
    app.add_option("--threads", threads, "worker threads (0: hardware concurrency)");
    app.add_option("--only", only, "run only these check numbers (1-based)")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    VerifyOptions v;
    v.threads = threads;
    std::vector<std::function<CheckResult()>> checks = {
        [] { return check_gate_average_identity(); },
        [] { return check_gate_set_completeness(); },
        [&] { return check_oracle_equivalence(v); },
        [&] { return check_s2_equivalence(v); },
        [&] { return check_absorbing_state(v); },
        [&] { return check_qbar_consistency(v); },
        [&] { return critical_point(threads); },
        [&] { return dp_exponent(threads); },
        [&] { return perturbation(threads); },
        [&] { return antipodal(threads); },
        [&] { return synthetic(threads); },
    };
    std::set<int> selected(only.begin(), only.end());
    int failures = 0;
    for (size_t i = 0; i < checks.size(); i++) {
        if (!selected.empty() && !selected.count(static_cast<int>(i + 1))) {
            continue;
        }
        CheckResult r = checks[i]();
        failures += !r.passed;
        std::printf("%s %2zu %-26s %8.1fs  %s\n", r.passed ? "PASS" : "FAIL", i + 1, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d check(s) failed\n", failures);
    return report_only || failures == 0 ? 0 : 1;
}
