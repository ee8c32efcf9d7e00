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

#ifndef DPCIRC_DP_MODEL_H
#define DPCIRC_DP_MODEL_H

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpcirc/gf2.h"
#include "dpcirc/rng.h"

namespace dpcirc {

/// Reaction-diffusion lattice on a ring. Bit 1 is a particle, bit 0 an empty
/// site. The all-empty configuration is absorbing.
class DPLattice {
   public:
    explicit DPLattice(size_t n_sites);
    static DPLattice full(size_t n_sites);
    /// Each site occupied independently with probability 1/2.
    static DPLattice random_half(size_t n_sites, Rng &rng);

    size_t n_sites() const {
        return occupancy_.size();
    }
    bool occupied(size_t i) const {
        return occupancy_.get(i);
    }
    void set(size_t i, bool value) {
        occupancy_.set(i, value);
    }
    size_t count() const {
        return occupancy_.popcount();
    }
    bool empty() const {
        return !occupancy_.any();
    }
    const BitVector &occupancy() const {
        return occupancy_;
    }
    BitVector &occupancy() {
        return occupancy_;
    }

   private:
    BitVector occupancy_;
};

/// (0,0) stays put; any occupied pair becomes (0,1), (1,0) or (1,1) with
/// probability 1/3 each. Draws from rng only for occupied pairs.
std::pair<bool, bool> pair_update(bool left, bool right, Rng &rng);

/// pair_update on the brickwork pairs of `parity`, then each particle is
/// removed independently with probability p.
void step_lattice(DPLattice &lattice, double p, int parity, Rng &rng);

enum class DPStart {
    kRandomHalf,
    kFull,
};

struct DPConfig {
    size_t n = 0;
    double p = 0;
    size_t depth = 1;
    size_t trajectories = 1;
    DPStart start = DPStart::kRandomHalf;

    void validate() const;
};

/// Per time step t = 0..depth. qbar is the all-empty fraction, which for a
/// random-half start estimates the mean collision probability.
struct DPSeries {
    std::vector<double> density_mean;
    std::vector<double> density_stderr;
    std::vector<double> survival_prob;
    std::vector<double> qbar_estimate;
    std::vector<double> qbar_stderr;
};

struct QBarEstimate {
    double estimate = 0;
    double std_error = 0;
};

/// Trajectory i draws its start from derive_seed(seed, i, kInitial) and its
/// dynamics from derive_seed(seed, i, kLattice). Results do not depend on the
/// worker count.
DPSeries dp_observables(const DPConfig &config, uint64_t seed, int threads = 0);

QBarEstimate estimate_q_bar(size_t n, size_t depth, double p, size_t trajectories, uint64_t seed, int threads = 0);

/// First step at which each trajectory is all-empty (0 if it starts empty), or
/// nullopt if it survives max_depth steps.
std::vector<std::optional<uint32_t>> dp_absorption_times(
    size_t n, double p, size_t max_depth, size_t trajectories, DPStart start, uint64_t seed, int threads = 0);

/// Median absorption time with survivors counted as +infinity, so it stays
/// defined while fewer than half the trajectories are censored. nullopt
/// otherwise, or for an empty input.
std::optional<double> median_absorption_time(const std::vector<std::optional<uint32_t>> &times);

/// Maximum-likelihood decay time of an exponential law right-censored at
/// max_depth: total observed time divided by the number of absorptions. Uses
/// every trajectory, survivors included. nullopt when nothing was absorbed.
struct CensoredTime {
    double time = 0;
    double std_error = 0;  // time / sqrt(absorbed)
    size_t absorbed = 0;
};
std::optional<CensoredTime> censored_exponential_time(const std::vector<std::optional<uint32_t>> &times,
                                                      size_t max_depth);

using Rational = boost::rational<int64_t>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// The 4x4 weight matrix in configuration order (1,1),(1,x),(x,1),(x,x).
using WeightMatrixM = std::array<std::array<Rational, 4>, 4>;
WeightMatrixM weight_matrix_m();

/// (1/24) sum_g T_g (x) T_g with row alpha + 4 alpha', column beta + 4 beta',
/// where alpha and alpha' index the two copies.
RationalMatrix gate_average_lhs();

/// sum M[(t1,t2),(s1,s2)] tau_1 (x) tau_2 (x) sigma_1 (x) sigma_2 in the same
/// indexing: tau matrices join the two copies of each output bit, sigma
/// matrices the two copies of each input bit; tau = I/2 or X/2, sigma = I or X.
RationalMatrix gate_average_rhs(const WeightMatrixM &m);

struct IdentityCheck {
    bool pass = false;
    double max_deviation = 0;
    int row = -1;
    int col = -1;
    std::string message;
};

/// Compares both sides entrywise in exact arithmetic; fails on any deviation
/// above 1e-12 and names the worst entry.
IdentityCheck verify_gate_average_identity(const WeightMatrixM &m);

}  // namespace dpcirc

#endif
