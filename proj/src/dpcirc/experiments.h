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

#ifndef DPCIRC_EXPERIMENTS_H
#define DPCIRC_EXPERIMENTS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpcirc/schedule.h"

namespace dpcirc {

/// Mean and standard error of one observable at t = 0..depth.
struct ExperimentRecord {
    CircuitConfig config;
    uint64_t master_seed = 0;
    size_t n_realizations = 0;
    std::vector<double> mean;
    std::vector<double> std_error;
    std::string timestamp;
    std::string version;
};

/// Entropy S(t) of every realization: row r holds S at t = 0..depth. Realization
/// r uses materialize_schedule(config, trajectory_seed(master_seed, r)). Runs on
/// the Z-sector fast path whenever the config allows it.
std::vector<std::vector<uint32_t>> entropy_trajectories(
    const CircuitConfig &config, uint64_t master_seed, size_t n_realizations, int threads = 0);

/// Mean system entropy from a maximally mixed start.
ExperimentRecord run_entropy_decay(
    const CircuitConfig &config, uint64_t master_seed, size_t n_realizations, int threads = 0);

/// Reduces integer per-realization series to mean and standard error.
void summarize_series(const std::vector<std::vector<uint32_t>> &rows, std::vector<double> &mean, std::vector<double> &err);

/// How the transient cutoff and the decay fraction are chosen for one N:
/// t0 = max(t0_min, t0_coeff * N^t0_exponent).
struct TauPolicy {
    double t0_min = 10;
    double t0_coeff = 0.25;
    double t0_exponent = 1;
    double fraction = 0.15;

    size_t t0(size_t n) const;
};

struct SweepConfig {
    std::vector<size_t> ns;
    std::vector<double> ps;
    double q = 0;
    double h = 0;
    /// depth = max(depth_min, round(depth_coeff * N^depth_exponent)).
    double depth_coeff = 4;
    double depth_exponent = 1.6;
    size_t depth_min = 1;
    size_t realizations = 200;
    size_t bootstrap = 200;
    TauPolicy tau;

    size_t depth(size_t n) const;
    void validate() const;
};

/// tau is read off the realization-averaged curve; its error and the censored
/// fraction come from bootstrap resampling of realizations.
struct SweepPoint {
    size_t n = 0;
    double p = 0;
    double tau_mean = 0;  // NaN when censored
    double tau_stderr = 0;
    double censored_fraction = 0;
    size_t realizations = 0;
    uint64_t seed = 0;
    size_t t0 = 0;  // effective cutoff; earlier than the policy value if S(t0) = 0
    size_t depth = 0;
    /// tau of the same mean curve with the policy cutoff doubled (clipped to
    /// the depth), for judging sensitivity to t0. NaN when censored.
    double tau_double_t0 = 0;
    size_t double_t0 = 0;
};

/// Every grid point uses the same master seed, so gate choices and erasure
/// uniforms are shared across p (common random numbers).
std::vector<SweepPoint> run_sweep(const SweepConfig &config, uint64_t master_seed, int threads = 0);

/// One (p, q) point of the input:output mutual-information decay.
struct TimescalePoint {
    size_t n = 0;
    double p = 0;
    double q = 0;
    /// Mean first time with I(S:R) < threshold over uncapped realizations; the
    /// depth itself when every realization hit the cap.
    double timescale_mean = 0;
    double timescale_stderr = 0;
    double capped_fraction = 0;
};

/// config.initial_state must be referenced; channels act on the system only.
TimescalePoint run_io_mi_decay(
    const CircuitConfig &config, uint64_t master_seed, size_t n_realizations, double threshold = 1.0, int threads = 0);

/// I(S:R) at every step for one realization (exposed for oracle tests).
std::vector<double> io_mi_series(const CircuitConfig &config, uint64_t trajectory_seed);

struct PhaseDiagramConfig {
    size_t n = 24;
    std::vector<double> ps;
    std::vector<double> qs;
    size_t depth = 0;  // 0 means 4 * N^1.6
    size_t realizations = 50;
    double threshold = 1;
    InitialState initial_state = InitialState::kReferencedClassical;
};

std::vector<TimescalePoint> run_phase_diagram(const PhaseDiagramConfig &config, uint64_t master_seed, int threads = 0);

struct AntipodalPoint {
    size_t n = 0;
    double p = 0;
    double q = 0;
    size_t t_eval = 0;
    double mi_mean = 0;
    double mi_stderr = 0;
};

constexpr double kDefaultAntipodalZ = 1.51;

/// MI between [0, N/4) and [N/2, 3N/4) at t = round(N^z); config.depth is
/// ignored. Throws std::invalid_argument unless N % 4 == 0.
AntipodalPoint run_antipodal_mi(
    const CircuitConfig &config, uint64_t master_seed, size_t n_realizations, double z = kDefaultAntipodalZ,
    int threads = 0);

enum class SweepVariable {
    kQ,
    kH,
};

struct PerturbationCurve {
    double value = 0;
    ExperimentRecord record;
    double saturation = 0;
    double saturation_stderr = 0;
};

/// Mean over the final 10% of steps (at least one step), computed per
/// realization and then averaged.
void saturation_of(const std::vector<std::vector<uint32_t>> &rows, double &mean, double &err);

/// One S(t) family with config.q and config.h replaced by the swept value.
/// Throws std::invalid_argument if the non-swept variable is nonzero.
std::vector<PerturbationCurve> run_perturbation(
    const CircuitConfig &config, SweepVariable variable, const std::vector<double> &values, uint64_t master_seed,
    size_t n_realizations, int threads = 0);

}  // namespace dpcirc

#endif
