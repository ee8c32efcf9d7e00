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

#include "dpcirc/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "dpcirc/classical_state.h"
#include "dpcirc/dense_state.h"
#include "dpcirc/dp_model.h"
#include "dpcirc/exact_oracle.h"
#include "dpcirc/experiments.h"
#include "dpcirc/parallel.h"
#include "dpcirc/stabilizer_state.h"

namespace dpcirc {

namespace {

CheckResult timed(const std::string &name, const std::function<void(CheckResult &)> &body) {
    CheckResult r;
    r.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception &e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<size_t> sites_of(uint32_t mask, size_t offset = 0) {
    std::vector<size_t> out;
    for (size_t i = 0; i < 32; i++) {
        if ((mask >> i) & 1) {
            out.push_back(i + offset);
        }
    }
    return out;
}

PauliString pair_pauli(uint8_t x, uint8_t z, bool sign = false) {
    PauliString p(2);
    p.x.set(0, x & 1);
    p.x.set(1, (x >> 1) & 1);
    p.z.set(0, z & 1);
    p.z.set(1, (z >> 1) & 1);
    p.sign = sign;
    return p;
}

Eigen::MatrixXcd permutation_matrix(const AffineGate &g) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
    for (uint8_t beta = 0; beta < 4; beta++) {
        u(g.apply(beta), beta) = 1;
    }
    return u;
}

}  // namespace

CheckResult check_gate_average_identity() {
    return timed("gate_average_identity", [](CheckResult &r) {
        auto check = verify_gate_average_identity(weight_matrix_m());
        r.passed = check.pass;
        std::ostringstream s;
        s << "16x16 rational comparison, max deviation " << check.max_deviation;
        if (!check.pass) {
            s << "; " << check.message;
        }
        r.detail = s.str();
    });
}

CheckResult check_gate_set_completeness() {
    return timed("gate_set_completeness", [](CheckResult &r) {
        std::set<PermutationTable> tables;
        for (const auto &g : enumerate_gates()) {
            tables.insert(to_permutation(g));
        }
        std::set<PermutationTable> all;
        std::array<uint8_t, 4> perm = {0, 1, 2, 3};
        do {
            all.insert(PermutationTable{perm});
        } while (std::next_permutation(perm.begin(), perm.end()));

        size_t mismatches = 0;
        for (const auto &g : enumerate_gates()) {
            Eigen::MatrixXcd u = permutation_matrix(g);
            for (uint8_t x = 0; x < 4; x++) {
                for (uint8_t z = 0; z < 4; z++) {
                    PairPauli image = symplectic_action(g, x, z);
                    Eigen::MatrixXcd expected = u * pauli_matrix(pair_pauli(x, z)) * u.adjoint();
                    Eigen::MatrixXcd got = pauli_matrix(pair_pauli(image.x, image.z, image.sign_flip));
                    if ((expected - got).cwiseAbs().maxCoeff() > 1e-12) {
                        mismatches++;
                    }
                }
            }
        }
        r.passed = tables.size() == 24 && tables == all && mismatches == 0;
        std::ostringstream s;
        s << tables.size() << " distinct permutations" << (tables == all ? " (all of S4)" : " (not S4)") << ", "
          << mismatches << " of 384 conjugations mismatched";
        r.detail = s.str();
    });
}

CheckResult check_oracle_equivalence(const VerifyOptions &o) {
    return timed("oracle_equivalence", [&](CheckResult &r) {
        const double probs[] = {0, 0.2, 0.5, 1};
        const size_t n = 4;
        size_t compared = 0, failures = 0, classical = 0, classical_failures = 0;
        double worst = 0;
        std::string first_failure;
        for (size_t i = 0; i < o.oracle_schedules; i++) {
            CircuitConfig c;
            c.n = n;
            c.p = probs[i % 4];
            c.q = probs[(i / 4) % 4];
            c.h = probs[(i / 16) % 4];
            c.depth = 1 + i % 12;
            Schedule sch = materialize_schedule(c, trajectory_seed(o.seed, i));
            auto stab = StabilizerState::maximally_mixed(n);
            for (const auto &layer : sch.layers) {
                apply_layer(stab, layer, n);
            }
            auto dense = evolve_dense(DenseState::maximally_mixed(n), sch);
            auto note = [&](double a, double b, const char *what) {
                double d = std::abs(a - b);
                worst = std::max(worst, d);
                if (d > 1e-9) {
                    failures++;
                    if (first_failure.empty()) {
                        first_failure = std::string(what) + " at schedule " + std::to_string(i);
                    }
                }
            };
            for (uint32_t a = 0; a < 16; a++) {
                auto sa = sites_of(a);
                note(static_cast<double>(stab.subsystem_entropy(sa)), dense.subsystem_entropy(sa), "entropy");
                for (uint32_t b = 1; b < 16; b++) {
                    if (a == 0 || (a & b)) {
                        continue;
                    }
                    auto sb = sites_of(b);
                    note(static_cast<double>(stab.mutual_information(sa, sb)), dense.mutual_information(sa, sb),
                         "mutual information");
                }
            }
            compared++;
            if (c.q == 0) {
                classical++;
                auto fast = ClassicalState::maximally_mixed(n);
                for (const auto &layer : sch.layers) {
                    apply_layer(fast, layer, n);
                }
                double shannon = shannon_entropy(evolve_distribution(Distribution::uniform(n), sch));
                if (shannon != static_cast<double>(stab.entropy()) || fast.entropy() != stab.entropy()) {
                    classical_failures++;
                }
            }
        }
        r.passed = failures == 0 && classical_failures == 0 && compared >= 200;
        std::ostringstream s;
        s << compared << " schedules, max deviation " << worst << ", " << failures << " quantum mismatches, "
          << classical_failures << " of " << classical << " classical-sector mismatches";
        if (!first_failure.empty()) {
            s << " (first: " << first_failure << ")";
        }
        r.detail = s.str();
    });
}

CheckResult check_s2_equivalence(const VerifyOptions &o) {
    return timed("s2_equivalence", [&](CheckResult &r) {
        size_t failures = 0;
        double worst = 0;
        for (size_t i = 0; i < o.s2_realizations; i++) {
            CircuitConfig c;
            c.n = i % 2 ? 4 : 2;
            c.p = 0.05 * static_cast<double>(i % 11);
            c.depth = 1 + i % 10;
            c.initial_state = InitialState::kReferencedClassical;
            Schedule sch = materialize_schedule(c, trajectory_seed(o.seed ^ 0x5a5a, i));
            CircuitFunction f = circuit_function(sch);
            Distribution input = Distribution::uniform(c.n);
            std::vector<double> output(input.probs.size(), 0.0);
            for (size_t x = 0; x < f.map.size(); x++) {
                output[f.map[x]] += input.probs[x];
            }
            double ixy = io_mutual_information(f, input);
            double sy = shannon_entropy(output);
            // The referenced stabilizer simulation must give the same number.
            auto state = ClassicalState::referenced(c.n);
            for (const auto &layer : sch.layers) {
                apply_layer(state, layer, c.n);
            }
            std::vector<size_t> sys(c.n), ref(c.n);
            std::iota(sys.begin(), sys.end(), 0);
            std::iota(ref.begin(), ref.end(), c.n);
            double sim = static_cast<double>(state.mutual_information(sys, ref));
            double d = std::max(std::abs(ixy - sy), std::abs(sim - ixy));
            worst = std::max(worst, d);
            if (d > 1e-9) {
                failures++;
            }
        }
        r.passed = failures == 0 && o.s2_realizations >= 100;
        std::ostringstream s;
        s << o.s2_realizations << " realizations at N <= 4, max |I(X;Y) - S(Y)| " << worst << ", " << failures
          << " failures";
        r.detail = s.str();
    });
}

CheckResult check_absorbing_state(const VerifyOptions &o) {
    return timed("absorbing_state", [&](CheckResult &r) {
        size_t increases = 0, trajectories = 0;
        const double ps[] = {0.02, 0.081, 0.2};
        for (size_t k = 0; k < 3; k++) {
            CircuitConfig c;
            c.n = 16;
            c.p = ps[k];
            c.depth = 120;
            size_t count = o.absorbing_trajectories / 3 + (k < o.absorbing_trajectories % 3 ? 1 : 0);
            auto rows = entropy_trajectories(c, o.seed + k, count, o.threads);
            for (const auto &row : rows) {
                trajectories++;
                for (size_t t = 1; t < row.size(); t++) {
                    increases += row[t] > row[t - 1];
                }
            }
        }
        CircuitConfig noisy;
        noisy.n = 32;
        noisy.p = 0.2;
        noisy.q = 0.05;
        noisy.depth = 1000;
        auto rows = entropy_trajectories(noisy, o.seed + 7, 100, o.threads);
        double mean = 0, err = 0;
        saturation_of(rows, mean, err);
        r.passed = increases == 0 && trajectories >= 1000 && mean > 0;
        std::ostringstream s;
        s << trajectories << " classical trajectories, " << increases << " entropy increases; q=0.05 p=0.2 N=32 "
          << "long-time entropy " << mean << " +- " << err;
        r.detail = s.str();
    });
}

CheckResult check_qbar_consistency(const VerifyOptions &o) {
    return timed("qbar_consistency", [&](CheckResult &r) {
        const size_t n = 6, depth = 8;
        const double p = 0.2;
        auto dp = estimate_q_bar(n, depth, p, o.qbar_samples, o.seed, o.threads);

        CircuitConfig c;
        c.n = n;
        c.p = p;
        c.depth = depth;
        std::vector<double> q(o.qbar_samples);
        parallel_for(o.qbar_samples, o.threads, [&](size_t i) {
            q[i] = collision_probability(
                evolve_distribution(Distribution::uniform(n), materialize_schedule(c, trajectory_seed(o.seed + 1, i))));
        });
        double mean = 0;
        for (double v : q) {
            mean += v;
        }
        mean /= static_cast<double>(q.size());
        double var = 0;
        for (double v : q) {
            var += (v - mean) * (v - mean);
        }
        double se = std::sqrt(var / static_cast<double>(q.size() - 1) / static_cast<double>(q.size()));
        double combined = std::hypot(se, dp.std_error);
        bool agree = std::abs(dp.estimate - mean) <= 3 * combined;

        // Q >= 2^-N holds exactly for every realization; the lattice estimate
        // of its average gets a statistical allowance.
        const double floor = std::pow(2.0, -static_cast<double>(n));
        bool floor_ok = *std::min_element(q.begin(), q.end()) >= floor;
        for (double pp : {0.0, 0.05, 0.2}) {
            for (size_t d : {1, 4, 8}) {
                auto e = estimate_q_bar(n, d, pp, 20000, o.seed + 2, o.threads);
                floor_ok = floor_ok && e.estimate >= floor - 3 * e.std_error;
            }
        }
        bool full_ok = true;
        for (size_t d : {1, 3, 8}) {
            full_ok = full_ok && estimate_q_bar(n, d, 1.0, 1000, o.seed + 3, o.threads).estimate == 1.0;
            c.p = 1.0;
            c.depth = d;
            full_ok = full_ok && collision_probability(evolve_distribution(
                                     Distribution::uniform(n), materialize_schedule(c, o.seed + d))) == 1.0;
        }
        r.passed = agree && floor_ok && full_ok && o.qbar_samples >= 100000;
        std::ostringstream s;
        s << "dp " << dp.estimate << " +- " << dp.std_error << " vs oracle " << mean << " +- " << se << " ("
          << std::abs(dp.estimate - mean) / combined << " sigma); floor " << (floor_ok ? "ok" : "violated")
          << "; p=1 " << (full_ok ? "ok" : "violated");
        r.detail = s.str();
    });
}

std::vector<CheckResult> run_verify(const VerifyOptions &options) {
    return {
        check_gate_average_identity(),
        check_gate_set_completeness(),
        check_oracle_equivalence(options),
        check_s2_equivalence(options),
        check_absorbing_state(options),
        check_qbar_consistency(options),
    };
}

}  // namespace dpcirc
