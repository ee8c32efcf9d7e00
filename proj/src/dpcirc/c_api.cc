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

#include "dpcirc.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcirc/dp_model.h"
#include "dpcirc/experiments.h"
#include "dpcirc/scaling.h"
#include "dpcirc/tables.h"
#include "dpcirc/verify.h"

struct dpcirc_table {
    dpcirc::Table table;
};

struct dpcirc_report {
    std::vector<dpcirc::CheckResult> checks;
};

namespace {

thread_local std::string last_error;

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

template <class F>
dpcirc_status guarded(F &&body) {
    last_error.clear();
    try {
        return body();
    } catch (const std::invalid_argument &e) {
        last_error = e.what();
        return DPCIRC_USAGE_ERROR;
    } catch (const std::out_of_range &e) {
        last_error = e.what();
        return DPCIRC_USAGE_ERROR;
    } catch (const std::exception &e) {
        last_error = e.what();
        return DPCIRC_RUNTIME_ERROR;
    } catch (...) {
        last_error = "unknown error";
        return DPCIRC_RUNTIME_ERROR;
    }
}

template <class T>
T &require(T *p, const char *what) {
    if (p == nullptr) {
        throw UsageError(std::string(what) + " must not be NULL");
    }
    return *p;
}

const char *require_str(const char *s, const char *what) {
    if (s == nullptr) {
        throw UsageError(std::string(what) + " must not be NULL");
    }
    return s;
}

template <class T>
std::vector<T> list(const T *data, size_t count, const char *what) {
    if (count > 0 && data == nullptr) {
        throw UsageError(std::string(what) + " must not be NULL");
    }
    return std::vector<T>(data, data + count);
}

dpcirc::CircuitConfig to_config(const dpcirc_circuit_config &c) {
    dpcirc::CircuitConfig out;
    out.n = c.n;
    out.p = c.p;
    out.q = c.q;
    out.h = c.h;
    out.depth = c.depth;
    if (c.initial_state != nullptr) {
        out.initial_state = dpcirc::parse_initial_state(c.initial_state);
    }
    out.validate();
    return out;
}

dpcirc_table *wrap(dpcirc::Table t) {
    return new dpcirc_table{std::move(t)};
}

const dpcirc::Table &table_of(const dpcirc_table *t) {
    return require(t, "table").table;
}

std::vector<dpcirc::TauSeries> tau_series(const dpcirc::Table &t) {
    size_t cn = t.column("n"), cp = t.column("p"), ct = t.column("tau_mean"), ce = t.column("tau_stderr");
    std::map<size_t, std::vector<std::array<double, 3>>> by_n;
    for (size_t r = 0; r < t.rows.size(); r++) {
        by_n[static_cast<size_t>(t.number(r, cn))].push_back({t.number(r, cp), t.number(r, ct), t.number(r, ce)});
    }
    std::vector<dpcirc::TauSeries> out;
    for (auto &[n, pts] : by_n) {
        std::sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) { return a[0] < b[0]; });
        dpcirc::TauSeries s;
        s.n = n;
        for (const auto &pt : pts) {
            s.ps.push_back(pt[0]);
            s.taus.push_back(pt[1]);
            s.std_errors.push_back(std::isnan(pt[2]) ? 0.0 : pt[2]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<dpcirc::LabeledCurve> collapse_curves(const dpcirc::Table &t, const std::string &ansatz) {
    std::vector<dpcirc::LabeledCurve> curves;
    if (ansatz == "tau") {
        for (const auto &s : tau_series(t)) {
            dpcirc::LabeledCurve c;
            c.n = static_cast<double>(s.n);
            for (size_t i = 0; i < s.ps.size(); i++) {
                if (std::isfinite(s.taus[i])) {
                    c.x.push_back(s.ps[i]);
                    c.y.push_back(s.taus[i]);
                    c.y_err.push_back(s.std_errors[i]);
                }
            }
            curves.push_back(std::move(c));
        }
        return curves;
    }
    if (ansatz != "crossover" && ansatz != "generic") {
        throw UsageError("unknown ansatz '" + ansatz + "' (expected tau, crossover or generic)");
    }
    size_t ct = t.column("t"), cs = t.column("s_mean"), ce = t.column("s_stderr"), cn = t.column("n"),
           cp = t.column("p"), cq = t.column("q"), ch = t.column("h");
    bool varies_q = false, varies_h = false;
    for (size_t r = 0; r < t.rows.size(); r++) {
        varies_q = varies_q || t.number(r, cq) != t.number(0, cq);
        varies_h = varies_h || t.number(r, ch) != t.number(0, ch);
    }
    size_t control = varies_q ? cq : varies_h ? ch : ansatz == "generic" ? cp : (t.number(0, cq) != 0 ? cq : ch);
    std::map<std::array<double, 4>, size_t> index;
    for (size_t r = 0; r < t.rows.size(); r++) {
        std::array<double, 4> key = {t.number(r, cn), t.number(r, cp), t.number(r, cq), t.number(r, ch)};
        auto [it, inserted] = index.emplace(key, curves.size());
        if (inserted) {
            dpcirc::LabeledCurve c;
            c.n = key[0];
            c.p = key[1];
            c.q = t.number(r, control);
            curves.push_back(std::move(c));
        }
        auto &c = curves[it->second];
        c.x.push_back(t.number(r, ct));
        c.y.push_back(t.number(r, cs));
        c.y_err.push_back(t.number(r, ce));
    }
    if (ansatz == "crossover") {
        std::erase_if(curves, [](const dpcirc::LabeledCurve &c) { return c.q <= 0; });
    }
    return curves;
}

dpcirc::CollapseSpec collapse_spec(const std::string &ansatz, const double *lower, const double *upper,
                                   size_t count) {
    dpcirc::CollapseSpec spec;
    if (ansatz == "tau") {
        spec = dpcirc::tau_collapse_spec();
    } else if (ansatz == "crossover") {
        spec = dpcirc::crossover_collapse_spec();
    } else {
        std::vector<double> lo = {-3, -3, -3, -3}, hi = {3, 3, 3, 3};
        spec = dpcirc::generic_collapse_spec(lo, hi);
    }
    if (count > 0) {
        if (count != spec.names.size()) {
            throw UsageError("ansatz '" + ansatz + "' takes " + std::to_string(spec.names.size()) + " bounds, got " +
                             std::to_string(count));
        }
        spec.lower = list(lower, count, "lower");
        spec.upper = list(upper, count, "upper");
        for (size_t i = 0; i < count; i++) {
            if (!(spec.lower[i] <= spec.upper[i])) {
                throw UsageError("bounds for " + spec.names[i] + " are empty");
            }
        }
    }
    return spec;
}

}  // namespace

extern "C" {

const char *dpcirc_version(void) {
    return DPCIRC_VERSION;
}

const char *dpcirc_last_error(void) {
    return last_error.c_str();
}

size_t dpcirc_table_rows(const dpcirc_table *t) {
    return t ? t->table.rows.size() : 0;
}

size_t dpcirc_table_columns(const dpcirc_table *t) {
    return t ? t->table.columns.size() : 0;
}

const char *dpcirc_table_column_name(const dpcirc_table *t, size_t col) {
    if (!t || col >= t->table.columns.size()) {
        return nullptr;
    }
    return t->table.columns[col].c_str();
}

const char *dpcirc_table_cell(const dpcirc_table *t, size_t row, size_t col) {
    if (!t || row >= t->table.rows.size() || col >= t->table.columns.size()) {
        return nullptr;
    }
    return t->table.rows[row][col].c_str();
}

double dpcirc_table_value(const dpcirc_table *t, size_t row, size_t col) {
    if (!t || row >= t->table.rows.size() || col >= t->table.columns.size()) {
        return NAN;
    }
    try {
        return t->table.number(row, col);
    } catch (const std::exception &) {
        return NAN;
    }
}

dpcirc_status dpcirc_table_write_csv(const dpcirc_table *t, const char *path) {
    return guarded([&] {
        table_of(t).write_csv_file(require_str(path, "path"));
        return DPCIRC_OK;
    });
}

dpcirc_status dpcirc_table_read_csv(const char *path, dpcirc_table **out) {
    return guarded([&] {
        require(out, "out") = wrap(dpcirc::Table::read_csv_file(require_str(path, "path")));
        return DPCIRC_OK;
    });
}

void dpcirc_table_free(dpcirc_table *t) {
    delete t;
}

dpcirc_status dpcirc_run_decay(const dpcirc_circuit_config *config, uint64_t seed, size_t realizations, int threads,
                               dpcirc_table **out) {
    return guarded([&] {
        auto c = to_config(require(config, "config"));
        auto &dst = require(out, "out");
        if (realizations == 0) {
            throw UsageError("realizations must be positive");
        }
        dst = wrap(dpcirc::decay_table(dpcirc::run_entropy_decay(c, seed, realizations, threads)));
        return DPCIRC_OK;
    });
}

void dpcirc_sweep_config_default(dpcirc_sweep_config *config) {
    if (!config) {
        return;
    }
    dpcirc::SweepConfig d;
    *config = dpcirc_sweep_config{};
    config->q = d.q;
    config->h = d.h;
    config->depth_coeff = d.depth_coeff;
    config->depth_exponent = d.depth_exponent;
    config->depth_min = d.depth_min;
    config->realizations = d.realizations;
    config->bootstrap = d.bootstrap;
    config->t0_min = d.tau.t0_min;
    config->t0_coeff = d.tau.t0_coeff;
    config->t0_exponent = d.tau.t0_exponent;
    config->fraction = d.tau.fraction;
}

dpcirc_status dpcirc_run_sweep(const dpcirc_sweep_config *config, uint64_t seed, int threads, dpcirc_table **out,
                               dpcirc_table **double_t0) {
    return guarded([&] {
        const auto &c = require(config, "config");
        auto &dst = require(out, "out");
        dpcirc::SweepConfig s;
        s.ns = list(c.ns, c.n_count, "ns");
        s.ps = list(c.ps, c.p_count, "ps");
        s.q = c.q;
        s.h = c.h;
        s.depth_coeff = c.depth_coeff;
        s.depth_exponent = c.depth_exponent;
        s.depth_min = c.depth_min;
        s.realizations = c.realizations;
        s.bootstrap = c.bootstrap;
        s.tau.t0_min = c.t0_min;
        s.tau.t0_coeff = c.t0_coeff;
        s.tau.t0_exponent = c.t0_exponent;
        s.tau.fraction = c.fraction;
        s.validate();
        auto points = dpcirc::run_sweep(s, seed, threads);
        dst = wrap(dpcirc::sweep_table(points));
        if (double_t0) {
            *double_t0 = wrap(dpcirc::sweep_table_double_t0(points));
        }
        return DPCIRC_OK;
    });
}

dpcirc_status dpcirc_fit_crossing(const dpcirc_table *sweep, size_t bootstrap, uint64_t seed, dpcirc_crossing *out) {
    return guarded([&] {
        auto &dst = require(out, "out");
        dpcirc::CrossingOptions o;
        o.bootstrap = bootstrap;
        o.seed = seed;
        auto fit = dpcirc::fit_crossing(tau_series(table_of(sweep)), o);
        dst = dpcirc_crossing{fit.p_c, fit.z, fit.spread, fit.cov_pp, fit.cov_pz, fit.cov_zz, fit.bootstrap_used};
        return DPCIRC_OK;
    });
}

dpcirc_status dpcirc_run_dp(size_t n, double p, size_t depth, size_t trajectories, const char *start, uint64_t seed,
                            int threads, dpcirc_table **out) {
    return guarded([&] {
        auto &dst = require(out, "out");
        dpcirc::DPConfig c;
        c.n = n;
        c.p = p;
        c.depth = depth;
        c.trajectories = trajectories;
        std::string s = start ? start : "random_half";
        if (s == "random_half") {
            c.start = dpcirc::DPStart::kRandomHalf;
        } else if (s == "full") {
            c.start = dpcirc::DPStart::kFull;
        } else {
            throw UsageError("unknown start '" + s + "' (expected random_half or full)");
        }
        c.validate();
        dst = wrap(dpcirc::dp_table(dpcirc::dp_observables(c, seed, threads)));
        return DPCIRC_OK;
    });
}

dpcirc_status dpcirc_run_mi(size_t n, const double *ps, size_t p_count, double q, double h, size_t realizations,
                            double z, uint64_t seed, int threads, dpcirc_table **out) {
    return guarded([&] {
        auto &dst = require(out, "out");
        auto plist = list(ps, p_count, "ps");
        if (plist.empty()) {
            throw UsageError("at least one p is required");
        }
        if (realizations == 0) {
            throw UsageError("realizations must be positive");
        }
        std::vector<dpcirc::AntipodalPoint> points;
        for (double p : plist) {
            dpcirc::CircuitConfig c;
            c.n = n;
            c.p = p;
            c.q = q;
            c.h = h;
            c.depth = 1;
            c.validate();
            points.push_back(dpcirc::run_antipodal_mi(c, seed, realizations, z, threads));
        }
        dst = wrap(dpcirc::mi_table(points));
        return DPCIRC_OK;
    });
}

dpcirc_status dpcirc_run_perturb(const dpcirc_circuit_config *config, char variable, const double *values,
                                 size_t value_count, uint64_t seed, size_t realizations, int threads,
                                 dpcirc_table **curves, dpcirc_table **saturation) {
    return guarded([&] {
        auto c = to_config(require(config, "config"));
        auto &dst_curves = require(curves, "curves");
        auto v = list(values, value_count, "values");
        if (v.empty()) {
            throw UsageError("at least one sweep value is required");
        }
        if (variable != 'q' && variable != 'h') {
            throw UsageError("variable must be 'q' or 'h'");
        }
        auto family = dpcirc::run_perturbation(c, variable == 'q' ? dpcirc::SweepVariable::kQ : dpcirc::SweepVariable::kH,
                                               v, seed, realizations, threads);
        dpcirc::Table all;
        dpcirc::Table sat{{"value", "saturation", "saturation_stderr"}, {}};
        for (const auto &member : family) {
            dpcirc::append_decay_rows(all, member.record);
            sat.rows.push_back({dpcirc::format_number(member.value), dpcirc::format_number(member.saturation),
                                dpcirc::format_number(member.saturation_stderr)});
        }
        dst_curves = wrap(std::move(all));
        if (saturation) {
            *saturation = wrap(std::move(sat));
        }
        return DPCIRC_OK;
    });
}

dpcirc_status dpcirc_run_phase_diagram(const dpcirc_phase_config *config, uint64_t seed, int threads,
                                       dpcirc_table **out) {
    return guarded([&] {
        const auto &c = require(config, "config");
        auto &dst = require(out, "out");
        dpcirc::PhaseDiagramConfig pd;
        pd.n = c.n;
        pd.ps = list(c.ps, c.p_count, "ps");
        pd.qs = list(c.qs, c.q_count, "qs");
        pd.depth = c.depth;
        pd.realizations = c.realizations;
        pd.threshold = c.threshold;
        if (c.initial_state) {
            pd.initial_state = dpcirc::parse_initial_state(c.initial_state);
        }
        if (pd.ps.empty() || pd.qs.empty()) {
            throw UsageError("the p and q grids must be nonempty");
        }
        dst = wrap(dpcirc::phase_table(dpcirc::run_phase_diagram(pd, seed, threads)));
        return DPCIRC_OK;
    });
}

dpcirc_status dpcirc_fit_collapse(const dpcirc_table *data, const char *ansatz, const double *lower,
                                  const double *upper, size_t bound_count, size_t restarts, uint64_t seed,
                                  dpcirc_collapse_result *out, dpcirc_table **rescaled) {
    return guarded([&] {
        auto &dst = require(out, "out");
        std::string name = require_str(ansatz, "ansatz");
        auto curves = collapse_curves(table_of(data), name);
        auto spec = collapse_spec(name, lower, upper, bound_count);
        if (curves.empty()) {
            throw UsageError("no usable curves in the input table");
        }
        dpcirc::CollapseOptions o;
        if (restarts > 0) {
            o.restarts = restarts;
        }
        o.seed = seed;
        auto fit = dpcirc::fit_collapse(curves, spec, o);
        dst = dpcirc_collapse_result{};
        dst.exponent_count = fit.exponents.size();
        for (size_t i = 0; i < fit.exponents.size() && i < DPCIRC_MAX_EXPONENTS; i++) {
            dst.exponents[i] = fit.exponents[i];
            std::strncpy(dst.names[i], spec.names[i].c_str(), sizeof(dst.names[i]) - 1);
        }
        dst.objective = fit.objective;
        dst.converged = fit.converged;
        dst.degenerate = fit.degenerate;
        if (rescaled) {
            dpcirc::Table t{{"curve", "n", "control", "x", "y", "y_err"}, {}};
            double ys = 1;
            for (size_t k = 0; k < curves.size(); k++) {
                const auto &c = curves[k];
                ys = spec.y_scale ? std::abs(spec.y_scale(c, fit.exponents)) : 1.0;
                double control = name == "tau" ? c.n : c.q;
                for (size_t i = 0; i < c.x.size(); i++) {
                    t.rows.push_back({std::to_string(k), dpcirc::format_number(c.n), dpcirc::format_number(control),
                                      dpcirc::format_number(spec.x_transform(c, fit.exponents, c.x[i])),
                                      dpcirc::format_number(spec.y_transform(c, fit.exponents, c.y[i])),
                                      dpcirc::format_number(i < c.y_err.size() ? c.y_err[i] * ys : 0.0)});
                }
            }
            *rescaled = wrap(std::move(t));
        }
        return DPCIRC_OK;
    });
}

void dpcirc_verify_options_default(dpcirc_verify_options *options) {
    if (!options) {
        return;
    }
    dpcirc::VerifyOptions d;
    *options = dpcirc_verify_options{d.seed, d.oracle_schedules, d.s2_realizations, d.absorbing_trajectories,
                                     d.qbar_samples};
}

dpcirc_status dpcirc_verify(const dpcirc_verify_options *options, int threads, dpcirc_report **out) {
    return guarded([&] {
        auto &dst = require(out, "out");
        dpcirc::VerifyOptions o;
        if (options) {
            o.seed = options->seed;
            o.oracle_schedules = options->oracle_schedules;
            o.s2_realizations = options->s2_realizations;
            o.absorbing_trajectories = options->absorbing_trajectories;
            o.qbar_samples = options->qbar_samples;
        }
        o.threads = threads;
        auto report = new dpcirc_report{dpcirc::run_verify(o)};
        dst = report;
        for (const auto &c : report->checks) {
            if (!c.passed) {
                last_error = "check failed: " + c.name;
                return DPCIRC_VERIFICATION_FAILED;
            }
        }
        return DPCIRC_OK;
    });
}

size_t dpcirc_report_count(const dpcirc_report *r) {
    return r ? r->checks.size() : 0;
}

const char *dpcirc_report_name(const dpcirc_report *r, size_t i) {
    return r && i < r->checks.size() ? r->checks[i].name.c_str() : nullptr;
}

int dpcirc_report_passed(const dpcirc_report *r, size_t i) {
    return r && i < r->checks.size() && r->checks[i].passed;
}

const char *dpcirc_report_detail(const dpcirc_report *r, size_t i) {
    return r && i < r->checks.size() ? r->checks[i].detail.c_str() : nullptr;
}

double dpcirc_report_seconds(const dpcirc_report *r, size_t i) {
    return r && i < r->checks.size() ? r->checks[i].seconds : NAN;
}

void dpcirc_report_free(dpcirc_report *r) {
    delete r;
}

}  // extern "C"
