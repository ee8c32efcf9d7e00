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

#include "dpcirc/experiments.h"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dpcirc/classical_state.h"
#include "dpcirc/parallel.h"
#include "dpcirc/scaling.h"
#include "dpcirc/stabilizer_state.h"

namespace dpcirc {

namespace {

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

template <class State>
void entropy_series(State &state, const CircuitConfig &config, uint64_t seed, std::vector<uint32_t> &out) {
    // A pure Z-sector state without junk noise can never regain entropy.
    const bool absorbing = config.classical_sector() && config.h == 0;
    ScheduleStream stream(config, seed);
    Layer layer;
    out.assign(config.depth + 1, 0);
    out[0] = static_cast<uint32_t>(state.entropy());
    for (size_t t = 1; t <= config.depth; t++) {
        if (absorbing && out[t - 1] == 0) {
            return;
        }
        stream.next(layer);
        apply_layer(state, layer, config.n);
        out[t] = static_cast<uint32_t>(state.entropy());
    }
}

template <class State>
double io_mi(const State &state, size_t n) {
    std::vector<size_t> system(n), reference(n);
    std::iota(system.begin(), system.end(), 0);
    std::iota(reference.begin(), reference.end(), n);
    return static_cast<double>(state.mutual_information(system, reference));
}

ReferenceKind reference_kind(InitialState s) {
    if (s == InitialState::kReferencedClassical) {
        return ReferenceKind::kClassical;
    }
    if (s == InitialState::kReferencedBell) {
        return ReferenceKind::kBell;
    }
    throw std::invalid_argument("input:output mutual information needs a referenced initial state");
}

// Calls observe(t, mi) for t = 0..depth until it returns false.
template <class State, class Observe>
void run_io(State state, const CircuitConfig &config, uint64_t seed, Observe observe) {
    ScheduleStream stream(config, seed);
    Layer layer;
    if (!observe(0, io_mi(state, config.n))) {
        return;
    }
    for (size_t t = 1; t <= config.depth; t++) {
        stream.next(layer);
        apply_layer(state, layer, config.n);
        if (!observe(t, io_mi(state, config.n))) {
            return;
        }
    }
}

template <class Observe>
void dispatch_io(const CircuitConfig &config, uint64_t seed, Observe observe) {
    ReferenceKind kind = reference_kind(config.initial_state);
    if (config.classical_sector()) {
        run_io(ClassicalState::referenced(config.n), config, seed, observe);
    } else {
        run_io(StabilizerState::referenced(config.n, kind), config, seed, observe);
    }
}

void mean_and_stderr(const std::vector<double> &v, double &mean, double &err) {
    mean = 0;
    err = 0;
    if (v.empty()) {
        return;
    }
    for (double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0;
        for (double x : v) {
            ss += (x - mean) * (x - mean);
        }
        err = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    }
}

}  // namespace

std::vector<std::vector<uint32_t>> entropy_trajectories(
    const CircuitConfig &config, uint64_t master_seed, size_t n_realizations, int threads) {
    config.validate();
    if (config.initial_state != InitialState::kMaximallyMixed) {
        throw std::invalid_argument("entropy decay runs start from the maximally mixed state");
    }
    std::vector<std::vector<uint32_t>> rows(n_realizations);
    parallel_for(n_realizations, threads, [&](size_t r) {
        uint64_t seed = trajectory_seed(master_seed, r);
        if (config.classical_sector()) {
            ClassicalState s = ClassicalState::maximally_mixed(config.n);
            entropy_series(s, config, seed, rows[r]);
        } else {
            StabilizerState s = StabilizerState::maximally_mixed(config.n);
            entropy_series(s, config, seed, rows[r]);
        }
    });
    return rows;
}

void summarize_series(const std::vector<std::vector<uint32_t>> &rows, std::vector<double> &mean, std::vector<double> &err) {
    mean.clear();
    err.clear();
    if (rows.empty()) {
        return;
    }
    const size_t len = rows[0].size();
    const double r = static_cast<double>(rows.size());
    for (size_t t = 0; t < len; t++) {
        // Integer sums keep the reduction exact.
        uint64_t s1 = 0, s2 = 0;
        for (const auto &row : rows) {
            s1 += row[t];
            s2 += uint64_t{row[t]} * row[t];
        }
        double m = static_cast<double>(s1) / r;
        double var = rows.size() > 1 ? std::max(0.0, (static_cast<double>(s2) - r * m * m) / (r - 1)) : 0.0;
        mean.push_back(m);
        err.push_back(std::sqrt(var / r));
    }
}

ExperimentRecord run_entropy_decay(
    const CircuitConfig &config, uint64_t master_seed, size_t n_realizations, int threads) {
    if (n_realizations == 0) {
        throw std::invalid_argument("need at least one realization");
    }
    auto rows = entropy_trajectories(config, master_seed, n_realizations, threads);
    ExperimentRecord rec;
    rec.config = config;
    rec.master_seed = master_seed;
    rec.n_realizations = n_realizations;
    summarize_series(rows, rec.mean, rec.std_error);
    rec.timestamp = utc_timestamp();
    rec.version = DPCIRC_VERSION;
    return rec;
}

size_t TauPolicy::t0(size_t n) const {
    double v = std::max(t0_min, t0_coeff * std::pow(static_cast<double>(n), t0_exponent));
    return static_cast<size_t>(std::llround(v));
}

size_t SweepConfig::depth(size_t n) const {
    double v = depth_coeff * std::pow(static_cast<double>(n), depth_exponent);
    return std::max(depth_min, static_cast<size_t>(std::llround(v)));
}

void SweepConfig::validate() const {
    if (ns.empty() || ps.empty()) {
        throw std::invalid_argument("sweep needs at least one N and one p");
    }
    if (realizations == 0) {
        throw std::invalid_argument("need at least one realization");
    }
    if (!(tau.fraction > 0 && tau.fraction < 1)) {
        throw std::invalid_argument("decay fraction must lie in (0, 1)");
    }
    for (size_t n : ns) {
        if (tau.t0(n) >= depth(n)) {
            throw std::invalid_argument("t0 >= depth for N=" + std::to_string(n));
        }
    }
}

std::vector<SweepPoint> run_sweep(const SweepConfig &config, uint64_t master_seed, int threads) {
    config.validate();
    std::vector<SweepPoint> out;
    for (size_t ni = 0; ni < config.ns.size(); ni++) {
        for (size_t pi = 0; pi < config.ps.size(); pi++) {
            CircuitConfig c;
            c.n = config.ns[ni];
            c.p = config.ps[pi];
            c.q = config.q;
            c.h = config.h;
            c.depth = config.depth(c.n);
            auto rows = entropy_trajectories(c, master_seed, config.realizations, threads);
            std::vector<double> mean, err;
            summarize_series(rows, mean, err);
            SweepPoint pt;
            pt.n = c.n;
            pt.p = c.p;
            pt.realizations = config.realizations;
            pt.seed = master_seed;
            pt.depth = c.depth;
            // Far above p_c every realization can die before t0. The cutoff
            // then moves back to the last time the mean is still positive, so
            // such points report a short decay time instead of being censored.
            const size_t policy_t0 = std::min(config.tau.t0(c.n), c.depth);
            auto cutoff = [&](const std::vector<double> &curve, size_t from) {
                size_t t0 = from;
                while (t0 > 0 && curve[t0] == 0) {
                    t0--;
                }
                return t0;
            };
            pt.t0 = cutoff(mean, policy_t0);
            auto tau = extract_tau(mean, pt.t0, config.tau.fraction);
            pt.tau_mean = tau ? *tau : std::numeric_limits<double>::quiet_NaN();
            pt.double_t0 = cutoff(mean, std::min(2 * config.tau.t0(c.n), c.depth));
            auto tau2 = extract_tau(mean, pt.double_t0, config.tau.fraction);
            pt.tau_double_t0 = tau2 ? *tau2 : std::numeric_limits<double>::quiet_NaN();

            Rng rng(derive_seed(master_seed, ni * config.ps.size() + pi, StreamRole::kBootstrap));
            std::vector<double> boot_taus;
            size_t censored = 0;
            std::vector<uint32_t> counts(rows.size());
            std::vector<double> boot_mean(mean.size());
            for (size_t b = 0; b < config.bootstrap; b++) {
                std::fill(counts.begin(), counts.end(), 0);
                for (size_t k = 0; k < rows.size(); k++) {
                    counts[rng.below(static_cast<uint32_t>(rows.size()))]++;
                }
                std::fill(boot_mean.begin(), boot_mean.end(), 0.0);
                for (size_t r = 0; r < rows.size(); r++) {
                    if (counts[r]) {
                        for (size_t t = 0; t < boot_mean.size(); t++) {
                            boot_mean[t] += counts[r] * static_cast<double>(rows[r][t]);
                        }
                    }
                }
                auto bt = extract_tau(boot_mean, cutoff(boot_mean, policy_t0), config.tau.fraction);
                if (bt) {
                    boot_taus.push_back(*bt);
                } else {
                    censored++;
                }
            }
            if (config.bootstrap > 0) {
                pt.censored_fraction = static_cast<double>(censored) / static_cast<double>(config.bootstrap);
                double m = 0;
                mean_and_stderr(boot_taus, m, pt.tau_stderr);
                // mean_and_stderr returns the error of the mean; the bootstrap
                // spread itself is the standard error of tau.
                pt.tau_stderr *= std::sqrt(static_cast<double>(boot_taus.size()));
            } else {
                pt.censored_fraction = tau ? 0.0 : 1.0;
            }
            out.push_back(pt);
        }
    }
    return out;
}

std::vector<double> io_mi_series(const CircuitConfig &config, uint64_t trajectory_seed) {
    config.validate();
    std::vector<double> out;
    dispatch_io(config, trajectory_seed, [&](size_t, double mi) {
        out.push_back(mi);
        return true;
    });
    return out;
}

TimescalePoint run_io_mi_decay(
    const CircuitConfig &config, uint64_t master_seed, size_t n_realizations, double threshold, int threads) {
    config.validate();
    reference_kind(config.initial_state);
    if (n_realizations == 0) {
        throw std::invalid_argument("need at least one realization");
    }
    std::vector<double> times(n_realizations);
    std::vector<char> capped(n_realizations, 1);
    parallel_for(n_realizations, threads, [&](size_t r) {
        times[r] = static_cast<double>(config.depth);
        dispatch_io(config, trajectory_seed(master_seed, r), [&](size_t t, double mi) {
            if (mi < threshold) {
                times[r] = static_cast<double>(t);
                capped[r] = 0;
                return false;
            }
            return true;
        });
    });
    TimescalePoint pt;
    pt.n = config.n;
    pt.p = config.p;
    pt.q = config.q;
    std::vector<double> finished;
    for (size_t r = 0; r < n_realizations; r++) {
        if (!capped[r]) {
            finished.push_back(times[r]);
        }
    }
    pt.capped_fraction = 1.0 - static_cast<double>(finished.size()) / static_cast<double>(n_realizations);
    if (finished.empty()) {
        pt.timescale_mean = static_cast<double>(config.depth);
    } else {
        mean_and_stderr(finished, pt.timescale_mean, pt.timescale_stderr);
    }
    return pt;
}

std::vector<TimescalePoint> run_phase_diagram(const PhaseDiagramConfig &config, uint64_t master_seed, int threads) {
    if (config.ps.empty() || config.qs.empty()) {
        throw std::invalid_argument("phase diagram needs non-empty p and q grids");
    }
    std::vector<TimescalePoint> out;
    for (double p : config.ps) {
        for (double q : config.qs) {
            CircuitConfig c;
            c.n = config.n;
            c.p = p;
            c.q = q;
            c.depth = config.depth ? config.depth
                                   : static_cast<size_t>(std::llround(4 * std::pow(static_cast<double>(config.n), 1.6)));
            c.initial_state = config.initial_state;
            out.push_back(run_io_mi_decay(c, master_seed, config.realizations, config.threshold, threads));
        }
    }
    return out;
}

AntipodalPoint run_antipodal_mi(
    const CircuitConfig &config, uint64_t master_seed, size_t n_realizations, double z, int threads) {
    if (config.n % 4 != 0) {
        throw std::invalid_argument("antipodal MI needs N divisible by 4 (got " + std::to_string(config.n) + ")");
    }
    if (n_realizations == 0) {
        throw std::invalid_argument("need at least one realization");
    }
    CircuitConfig c = config;
    c.initial_state = InitialState::kMaximallyMixed;
    size_t t_eval = static_cast<size_t>(std::llround(std::pow(static_cast<double>(c.n), z)));
    c.depth = std::max<size_t>(t_eval, 1);
    c.validate();
    const size_t quarter = c.n / 4;
    std::vector<size_t> a(quarter), b(quarter);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), c.n / 2);
    std::vector<double> mi(n_realizations);
    parallel_for(n_realizations, threads, [&](size_t r) {
        ScheduleStream stream(c, trajectory_seed(master_seed, r));
        Layer layer;
        auto run = [&](auto state) {
            for (size_t t = 0; t < t_eval; t++) {
                stream.next(layer);
                apply_layer(state, layer, c.n);
            }
            mi[r] = static_cast<double>(state.mutual_information(a, b));
        };
        if (c.classical_sector()) {
            run(ClassicalState::maximally_mixed(c.n));
        } else {
            run(StabilizerState::maximally_mixed(c.n));
        }
    });
    AntipodalPoint pt;
    pt.n = c.n;
    pt.p = c.p;
    pt.q = c.q;
    pt.t_eval = t_eval;
    mean_and_stderr(mi, pt.mi_mean, pt.mi_stderr);
    return pt;
}

void saturation_of(const std::vector<std::vector<uint32_t>> &rows, double &mean, double &err) {
    std::vector<double> per;
    per.reserve(rows.size());
    for (const auto &row : rows) {
        size_t steps = row.size() - 1;
        size_t window = std::max<size_t>(1, static_cast<size_t>(std::llround(0.1 * static_cast<double>(steps))));
        double s = 0;
        for (size_t t = row.size() - window; t < row.size(); t++) {
            s += row[t];
        }
        per.push_back(s / static_cast<double>(window));
    }
    mean_and_stderr(per, mean, err);
}

std::vector<PerturbationCurve> run_perturbation(
    const CircuitConfig &config, SweepVariable variable, const std::vector<double> &values, uint64_t master_seed,
    size_t n_realizations, int threads) {
    if ((variable == SweepVariable::kQ && config.h != 0) || (variable == SweepVariable::kH && config.q != 0)) {
        throw std::invalid_argument("perturbation sweeps exactly one of q and h; set the other to 0");
    }
    if (n_realizations == 0) {
        throw std::invalid_argument("need at least one realization");
    }
    std::vector<PerturbationCurve> out;
    for (double v : values) {
        CircuitConfig c = config;
        (variable == SweepVariable::kQ ? c.q : c.h) = v;
        auto rows = entropy_trajectories(c, master_seed, n_realizations, threads);
        PerturbationCurve curve;
        curve.value = v;
        curve.record.config = c;
        curve.record.master_seed = master_seed;
        curve.record.n_realizations = n_realizations;
        curve.record.timestamp = utc_timestamp();
        curve.record.version = DPCIRC_VERSION;
        summarize_series(rows, curve.record.mean, curve.record.std_error);
        saturation_of(rows, curve.saturation, curve.saturation_stderr);
        out.push_back(std::move(curve));
    }
    return out;
}

}  // namespace dpcirc
