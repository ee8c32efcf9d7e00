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

#include "dpcirc/dp_model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpcirc/gateset.h"
#include "dpcirc/parallel.h"

namespace dpcirc {

DPLattice::DPLattice(size_t n_sites) : occupancy_(n_sites) {
    if (n_sites < 2 || n_sites % 2) {
        throw std::invalid_argument("DPLattice needs an even number of sites, at least 2");
    }
}

DPLattice DPLattice::full(size_t n_sites) {
    DPLattice l(n_sites);
    for (size_t i = 0; i < n_sites; i++) {
        l.set(i, true);
    }
    return l;
}

DPLattice DPLattice::random_half(size_t n_sites, Rng &rng) {
    DPLattice l(n_sites);
    auto words = l.occupancy_.words();
    for (size_t w = 0; w < words.size(); w++) {
        words[w] = rng.next();
    }
    size_t tail = n_sites % kWordBits;
    if (tail) {
        words.back() &= (uint64_t{1} << tail) - 1;
    }
    return l;
}

std::pair<bool, bool> pair_update(bool left, bool right, Rng &rng) {
    if (!left && !right) {
        return {false, false};
    }
    switch (rng.below(3)) {
        case 0:
            return {false, true};
        case 1:
            return {true, false};
        default:
            return {true, true};
    }
}

void step_lattice(DPLattice &lattice, double p, int parity, Rng &rng) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    const size_t n = lattice.n_sites();
    BitVector &occ = lattice.occupancy();
    for (size_t k = 0; k < n / 2; k++) {
        size_t a = 2 * k + static_cast<size_t>(parity & 1);
        size_t b = (a + 1) % n;
        bool l = occ.get(a), r = occ.get(b);
        if (l || r) {
            auto [nl, nr] = pair_update(l, r, rng);
            occ.set(a, nl);
            occ.set(b, nr);
        }
    }
    if (p <= 0) {
        return;
    }
    auto words = occ.words();
    for (size_t w = 0; w < words.size(); w++) {
        for (uint64_t m = words[w]; m; m &= m - 1) {
            if (rng.bernoulli(p)) {
                words[w] &= ~(m & -m);
            }
        }
    }
}

void DPConfig::validate() const {
    if (n < 2 || n % 2) {
        throw std::invalid_argument("n must be even and at least 2");
    }
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    if (depth < 1) {
        throw std::invalid_argument("depth must be at least 1");
    }
    if (trajectories < 1) {
        throw std::invalid_argument("trajectories must be at least 1");
    }
}

namespace {

DPLattice initial_lattice(size_t n, DPStart start, uint64_t seed, size_t index) {
    if (start == DPStart::kFull) {
        return DPLattice::full(n);
    }
    Rng init(derive_seed(seed, index, StreamRole::kInitial));
    return DPLattice::random_half(n, init);
}

// Trajectories are processed in fixed blocks; per-block integer sums make the
// reduction exact and independent of scheduling.
constexpr size_t kBlock = 64;

}  // namespace

DPSeries dp_observables(const DPConfig &config, uint64_t seed, int threads) {
    config.validate();
    const size_t steps = config.depth + 1;
    const size_t blocks = (config.trajectories + kBlock - 1) / kBlock;
    std::vector<std::vector<uint64_t>> sum(blocks), sum_sq(blocks), alive(blocks);
    parallel_for(blocks, threads, [&](size_t b) {
        sum[b].assign(steps, 0);
        sum_sq[b].assign(steps, 0);
        alive[b].assign(steps, 0);
        size_t end = std::min(config.trajectories, (b + 1) * kBlock);
        for (size_t i = b * kBlock; i < end; i++) {
            DPLattice lattice = initial_lattice(config.n, config.start, seed, i);
            Rng rng(derive_seed(seed, i, StreamRole::kLattice));
            for (size_t t = 0; t < steps; t++) {
                if (t > 0) {
                    if (lattice.empty()) {
                        break;
                    }
                    step_lattice(lattice, config.p, static_cast<int>((t - 1) % 2), rng);
                }
                uint64_t c = lattice.count();
                sum[b][t] += c;
                sum_sq[b][t] += c * c;
                alive[b][t] += c > 0;
            }
        }
    });
    DPSeries s;
    const double trajectories = static_cast<double>(config.trajectories);
    const double n = static_cast<double>(config.n);
    for (size_t t = 0; t < steps; t++) {
        uint64_t s1 = 0, s2 = 0, a = 0;
        for (size_t b = 0; b < blocks; b++) {
            s1 += sum[b][t];
            s2 += sum_sq[b][t];
            a += alive[b][t];
        }
        double mean = static_cast<double>(s1) / trajectories;
        double var = 0;
        if (config.trajectories > 1) {
            var = std::max(0.0, (static_cast<double>(s2) - trajectories * mean * mean) / (trajectories - 1));
        }
        s.density_mean.push_back(mean / n);
        s.density_stderr.push_back(std::sqrt(var / trajectories) / n);
        double surv = static_cast<double>(a) / trajectories;
        s.survival_prob.push_back(surv);
        s.qbar_estimate.push_back(1 - surv);
        s.qbar_stderr.push_back(std::sqrt(surv * (1 - surv) / trajectories));
    }
    return s;
}

QBarEstimate estimate_q_bar(size_t n, size_t depth, double p, size_t trajectories, uint64_t seed, int threads) {
    auto times = dp_absorption_times(n, p, depth, trajectories, DPStart::kRandomHalf, seed, threads);
    size_t absorbed = 0;
    for (const auto &t : times) {
        absorbed += t.has_value();
    }
    double q = static_cast<double>(absorbed) / static_cast<double>(trajectories);
    return {q, std::sqrt(q * (1 - q) / static_cast<double>(trajectories))};
}

std::vector<std::optional<uint32_t>> dp_absorption_times(
    size_t n, double p, size_t max_depth, size_t trajectories, DPStart start, uint64_t seed, int threads) {
    DPConfig config{n, p, max_depth, trajectories, start};
    config.validate();
    std::vector<std::optional<uint32_t>> out(trajectories);
    parallel_for(trajectories, threads, [&](size_t i) {
        DPLattice lattice = initial_lattice(n, start, seed, i);
        Rng rng(derive_seed(seed, i, StreamRole::kLattice));
        for (size_t t = 0; t <= max_depth; t++) {
            if (lattice.empty()) {
                out[i] = static_cast<uint32_t>(t);
                return;
            }
            if (t < max_depth) {
                step_lattice(lattice, p, static_cast<int>(t % 2), rng);
            }
        }
    });
    return out;
}

std::optional<double> median_absorption_time(const std::vector<std::optional<uint32_t>> &times) {
    if (times.empty()) {
        return std::nullopt;
    }
    std::vector<double> v;
    v.reserve(times.size());
    for (const auto &t : times) {
        v.push_back(t ? static_cast<double>(*t) : std::numeric_limits<double>::infinity());
    }
    std::sort(v.begin(), v.end());
    size_t m = v.size() / 2;
    double med = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    if (!std::isfinite(med)) {
        return std::nullopt;
    }
    return med;
}

std::optional<CensoredTime> censored_exponential_time(const std::vector<std::optional<uint32_t>> &times,
                                                      size_t max_depth) {
    CensoredTime out;
    double total = 0;
    for (const auto &t : times) {
        total += t ? static_cast<double>(*t) : static_cast<double>(max_depth);
        out.absorbed += t.has_value();
    }
    if (out.absorbed == 0) {
        return std::nullopt;
    }
    out.time = total / static_cast<double>(out.absorbed);
    out.std_error = out.time / std::sqrt(static_cast<double>(out.absorbed));
    return out;
}

WeightMatrixM weight_matrix_m() {
    WeightMatrixM m{};
    m[0][0] = 1;
    for (int r = 1; r < 4; r++) {
        for (int c = 1; c < 4; c++) {
            m[r][c] = Rational(1, 3);
        }
    }
    return m;
}

RationalMatrix gate_average_lhs() {
    RationalMatrix lhs(16, std::vector<Rational>(16, 0));
    for (const AffineGate &g : enumerate_gates()) {
        PermutationTable t = to_permutation(g);
        for (int beta = 0; beta < 4; beta++) {
            for (int beta2 = 0; beta2 < 4; beta2++) {
                lhs[t.map[beta] + 4 * t.map[beta2]][beta + 4 * beta2] += Rational(1, 24);
            }
        }
    }
    return lhs;
}

namespace {

// Entry (a, a2) of the 2x2 matrix attached to one configuration variable:
// 1 is the identity, x is Pauli X.
int pair_matrix(int occupied, int a, int a2) {
    return occupied ? (a != a2) : (a == a2);
}

}  // namespace

RationalMatrix gate_average_rhs(const WeightMatrixM &m) {
    RationalMatrix rhs(16, std::vector<Rational>(16, 0));
    for (int row = 0; row < 16; row++) {
        int alpha = row % 4, alpha2 = row / 4;
        for (int col = 0; col < 16; col++) {
            int beta = col % 4, beta2 = col / 4;
            Rational acc = 0;
            for (int tau = 0; tau < 4; tau++) {
                // Configuration index 2*first + second, first site = bit 0.
                int t1 = tau >> 1, t2 = tau & 1;
                int tau_weight = pair_matrix(t1, alpha & 1, alpha2 & 1) * pair_matrix(t2, alpha >> 1, alpha2 >> 1);
                if (!tau_weight) {
                    continue;
                }
                for (int sigma = 0; sigma < 4; sigma++) {
                    int s1 = sigma >> 1, s2 = sigma & 1;
                    int sigma_weight = pair_matrix(s1, beta & 1, beta2 & 1) * pair_matrix(s2, beta >> 1, beta2 >> 1);
                    if (sigma_weight) {
                        acc += m[tau][sigma] * Rational(1, 4);
                    }
                }
            }
            rhs[row][col] = acc;
        }
    }
    return rhs;
}

IdentityCheck verify_gate_average_identity(const WeightMatrixM &m) {
    RationalMatrix lhs = gate_average_lhs();
    RationalMatrix rhs = gate_average_rhs(m);
    IdentityCheck check;
    check.row = 0;
    check.col = 0;
    Rational worst = 0;
    for (int r = 0; r < 16; r++) {
        for (int c = 0; c < 16; c++) {
            Rational d = boost::abs(lhs[r][c] - rhs[r][c]);
            if (d > worst) {
                worst = d;
                check.row = r;
                check.col = c;
            }
        }
    }
    check.max_deviation = boost::rational_cast<double>(worst);
    check.pass = check.max_deviation <= 1e-12;
    if (check.pass) {
        check.message = "gate-average identity holds exactly";
    } else {
        const Rational &l = lhs[check.row][check.col];
        const Rational &r = rhs[check.row][check.col];
        check.message = "entry (" + std::to_string(check.row) + "," + std::to_string(check.col) + "): lhs " +
                        std::to_string(l.numerator()) + "/" + std::to_string(l.denominator()) + " vs rhs " +
                        std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    }
    return check;
}

}  // namespace dpcirc
