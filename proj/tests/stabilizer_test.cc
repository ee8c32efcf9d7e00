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

#include "dpcirc/stabilizer_state.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "dpcirc/classical_state.h"
#include "dpcirc/dense_state.h"
#include "dpcirc/schedule.h"

using namespace dpcirc;

namespace {

StabilizerState from_strings(std::initializer_list<const char *> gens) {
    std::vector<PauliString> ps;
    for (const char *g : gens) {
        ps.push_back(PauliString::from_string(g));
    }
    return StabilizerState::from_generators(ps.front().x.size(), ps);
}

StabilizerState zero_state(size_t n) {
    std::vector<PauliString> ps;
    for (size_t q = 0; q < n; q++) {
        PauliString p(n);
        p.z.set(q, true);
        ps.push_back(p);
    }
    return StabilizerState::from_generators(n, ps);
}

// Random mixed state reached by a random channel sequence from |0...0>.
StabilizerState random_state(size_t n, Rng &rng) {
    StabilizerState s = zero_state(n);
    auto gates = enumerate_gates();
    for (int step = 0; step < 12; step++) {
        size_t a = rng.below(static_cast<uint32_t>(n));
        size_t b = (a + 1 + rng.below(static_cast<uint32_t>(n - 1))) % n;
        switch (rng.below(6)) {
            case 0:
            case 1:
                s.apply_gate(gates[rng.below(24)], a, b);
                break;
            case 2:
            case 3:
                s.apply_hadamard(a);
                break;
            case 4:
                s.apply_erasure(a);
                break;
            default:
                s.apply_junk_noise(a);
        }
    }
    return s;
}

void expect_matches_dense(const StabilizerState &s, const DenseState &d) {
    ASSERT_TRUE(s.check_invariants());
    EXPECT_NEAR(static_cast<double>(s.entropy()), d.von_neumann_entropy(), 1e-9);
    Eigen::MatrixXcd rho = DenseState::from_stabilizer(s).rho();
    EXPECT_LT((rho - d.rho()).cwiseAbs().maxCoeff(), 1e-9);
}

std::vector<size_t> range(size_t a, size_t b) {
    std::vector<size_t> v(b - a);
    std::iota(v.begin(), v.end(), a);
    return v;
}

}  // namespace

TEST(StabilizerState, maximally_mixed) {
    EXPECT_EQ(StabilizerState::maximally_mixed(5).entropy(), 5u);
    EXPECT_EQ(StabilizerState::maximally_mixed(1).num_generators(), 0u);
    EXPECT_THROW(StabilizerState::maximally_mixed(0), std::invalid_argument);
    for (size_t n = 1; n <= 4; n++) {
        auto d = DenseState::from_stabilizer(StabilizerState::maximally_mixed(n));
        size_t dim = size_t{1} << n;
        EXPECT_LT((d.rho() - Eigen::MatrixXcd::Identity(dim, dim) / double(dim)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(StabilizerState, referenced_mutual_information) {
    auto c = StabilizerState::referenced(3, ReferenceKind::kClassical);
    EXPECT_EQ(c.mutual_information(range(0, 3), range(3, 6)), 3u);
    auto b = StabilizerState::referenced(1, ReferenceKind::kBell);
    EXPECT_EQ(b.mutual_information(range(0, 1), range(1, 2)), 2u);
    auto e = StabilizerState::referenced(2, ReferenceKind::kClassical);
    e.apply_erasure(0);
    e.apply_erasure(1);
    EXPECT_EQ(e.mutual_information(range(0, 2), range(2, 4)), 0u);
}

TEST(StabilizerState, from_generators_validates) {
    std::vector<PauliString> anti = {PauliString::from_string("X"), PauliString::from_string("Z")};
    EXPECT_THROW(StabilizerState::from_generators(1, anti), std::invalid_argument);
    std::vector<PauliString> dep = {PauliString::from_string("ZZ"), PauliString::from_string("ZZ")};
    EXPECT_THROW(StabilizerState::from_generators(2, dep), std::invalid_argument);
    std::vector<PauliString> len = {PauliString::from_string("ZZ")};
    EXPECT_THROW(StabilizerState::from_generators(3, len), std::invalid_argument);
}

TEST(apply_gate, identity_and_entropy_preserved) {
    Rng rng(7);
    for (int trial = 0; trial < 50; trial++) {
        StabilizerState s = random_state(4, rng);
        auto before = DenseState::from_stabilizer(s).rho();
        s.apply_gate(enumerate_gates()[0], 1, 2);
        EXPECT_LT((DenseState::from_stabilizer(s).rho() - before).cwiseAbs().maxCoeff(), 1e-12);
        size_t e = s.entropy();
        s.apply_gate(enumerate_gates()[rng.below(24)], 3, 0);
        EXPECT_EQ(s.entropy(), e);
    }
}

TEST(apply_gate, matches_dense_conjugation) {
    Rng rng(8);
    auto gates = enumerate_gates();
    for (int trial = 0; trial < 200; trial++) {
        StabilizerState s = random_state(4, rng);
        DenseState d = DenseState::from_stabilizer(s);
        size_t a = rng.below(4), b = (a + 1 + rng.below(3)) % 4;
        const AffineGate &g = gates[rng.below(24)];
        s.apply_gate(g, a, b);
        d.apply_gate(g, a, b);
        expect_matches_dense(s, d);
    }
}

TEST(apply_gate, bad_sites_throw) {
    auto s = StabilizerState::maximally_mixed(3);
    EXPECT_THROW(s.apply_gate(enumerate_gates()[1], 0, 3), std::out_of_range);
    EXPECT_THROW(s.apply_gate(enumerate_gates()[1], 1, 1), std::invalid_argument);
    EXPECT_THROW(s.apply_hadamard(5), std::out_of_range);
}

TEST(apply_hadamard, examples_and_dense) {
    auto s = from_strings({"Z"});
    s.apply_hadamard(0);
    EXPECT_EQ(s.generators()[0].str(), "+X");

    Rng rng(9);
    for (int trial = 0; trial < 100; trial++) {
        StabilizerState t = random_state(3, rng);
        auto before = DenseState::from_stabilizer(t).rho();
        DenseState d = DenseState::from_stabilizer(t);
        size_t q = rng.below(3);
        t.apply_hadamard(q);
        d.apply_hadamard(q);
        expect_matches_dense(t, d);
        t.apply_hadamard(q);
        EXPECT_LT((DenseState::from_stabilizer(t).rho() - before).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(apply_erasure, examples) {
    auto zero = from_strings({"Z_", "_Z"});
    zero.apply_erasure(0);
    EXPECT_EQ(zero.entropy(), 0u);
    EXPECT_LT((DenseState::from_stabilizer(zero).rho() - DenseState::from_stabilizer(from_strings({"Z_", "_Z"})).rho())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);

    auto bell = from_strings({"XX", "ZZ"});
    bell.apply_erasure(0);
    EXPECT_EQ(bell.entropy(), 1u);
    ASSERT_EQ(bell.num_generators(), 1u);
    EXPECT_EQ(bell.generators()[0].str(), "+Z_");

    auto mixed = StabilizerState::maximally_mixed(1);
    mixed.apply_erasure(0);
    EXPECT_EQ(mixed.entropy(), 0u);
}

TEST(apply_erasure, generator_count_changes_by_at_most_one) {
    Rng rng(10);
    for (int trial = 0; trial < 300; trial++) {
        StabilizerState s = random_state(5, rng);
        DenseState d = DenseState::from_stabilizer(s);
        size_t k = s.num_generators(), q = rng.below(5);
        s.apply_erasure(q);
        d.apply_erasure(q);
        EXPECT_LE(static_cast<long>(s.num_generators()), static_cast<long>(k) + 1);
        EXPECT_GE(static_cast<long>(s.num_generators()), static_cast<long>(k) - 1);
        expect_matches_dense(s, d);
    }
}

TEST(apply_junk_noise, examples_and_dense) {
    auto zero = from_strings({"Z"});
    zero.apply_junk_noise(0);
    EXPECT_EQ(zero.entropy(), 1u);
    auto mixed = StabilizerState::maximally_mixed(2);
    mixed.apply_junk_noise(1);
    EXPECT_EQ(mixed.entropy(), 2u);

    Rng rng(11);
    for (int trial = 0; trial < 200; trial++) {
        StabilizerState s = random_state(3, rng);
        DenseState d = DenseState::from_stabilizer(s);
        size_t q = rng.below(3);
        s.apply_junk_noise(q);
        d.apply_junk_noise(q);
        expect_matches_dense(s, d);
    }
}

TEST(subsystem_entropy, examples) {
    auto bell = from_strings({"XX", "ZZ"});
    std::vector<size_t> a = {0};
    EXPECT_EQ(bell.subsystem_entropy(a), 1u);
    auto zero = from_strings({"Z__", "_Z_", "__Z"});
    for (unsigned mask = 0; mask < 8; mask++) {
        std::vector<size_t> r;
        for (size_t q = 0; q < 3; q++) {
            if ((mask >> q) & 1) {
                r.push_back(q);
            }
        }
        EXPECT_EQ(zero.subsystem_entropy(r), 0u);
    }
    auto ghz = from_strings({"XXX", "ZZ_", "_ZZ"});
    EXPECT_EQ(ghz.subsystem_entropy(a), 1u);
    EXPECT_NEAR(DenseState::from_stabilizer(ghz).subsystem_entropy(a), 1.0, 1e-12);

    std::vector<size_t> dup = {0, 0};
    EXPECT_THROW(ghz.subsystem_entropy(dup), std::invalid_argument);
}

TEST(subsystem_entropy, all_sites_and_empty) {
    Rng rng(12);
    for (int trial = 0; trial < 50; trial++) {
        StabilizerState s = random_state(5, rng);
        EXPECT_EQ(s.subsystem_entropy(range(0, 5)), s.entropy());
        EXPECT_EQ(s.subsystem_entropy({}), 0u);
    }
}

TEST(mutual_information, examples) {
    std::vector<size_t> a = {0}, b = {1};
    EXPECT_EQ(from_strings({"XX", "ZZ"}).mutual_information(a, b), 2u);
    EXPECT_EQ(from_strings({"Z_", "_X"}).mutual_information(a, b), 0u);
    auto classical = from_strings({"ZZ"});
    EXPECT_EQ(classical.mutual_information(a, b), 1u);
    EXPECT_NEAR(DenseState::from_stabilizer(classical).mutual_information(a, b), 1.0, 1e-12);
    std::vector<size_t> overlap = {0, 1};
    EXPECT_THROW(classical.mutual_information(a, overlap), std::invalid_argument);
}

TEST(observables, independent_of_generator_signs) {
    Rng rng(13);
    for (int trial = 0; trial < 100; trial++) {
        StabilizerState s = random_state(5, rng);
        if (s.num_generators() == 0) {
            continue;
        }
        StabilizerState t = s;
        t.flip_generator_sign(rng.below(static_cast<uint32_t>(t.num_generators())));
        EXPECT_EQ(s.entropy(), t.entropy());
        for (unsigned mask = 0; mask < 32; mask++) {
            std::vector<size_t> r, rest;
            for (size_t q = 0; q < 5; q++) {
                ((mask >> q) & 1 ? r : rest).push_back(q);
            }
            EXPECT_EQ(s.subsystem_entropy(r), t.subsystem_entropy(r));
            EXPECT_EQ(s.mutual_information(r, rest), t.mutual_information(r, rest));
        }
    }
}

TEST(invariants, commute_and_independent_along_random_circuits) {
    Rng rng(14);
    for (int trial = 0; trial < 30; trial++) {
        StabilizerState s = random_state(70, rng);
        EXPECT_TRUE(s.check_invariants());
        EXPECT_LE(s.entropy(), 70u);
    }
}

TEST(invariants, z_sector_closed_and_entropy_non_increasing) {
    CircuitConfig c;
    c.n = 12;
    c.p = 0.1;
    c.depth = 60;
    for (uint64_t seed = 0; seed < 20; seed++) {
        auto sch = materialize_schedule(c, seed);
        auto s = StabilizerState::maximally_mixed(c.n);
        size_t last = s.entropy();
        for (const auto &layer : sch.layers) {
            apply_layer(s, layer, c.n);
            EXPECT_TRUE(s.is_z_sector());
            EXPECT_LE(s.entropy(), last);
            last = s.entropy();
        }
    }
}

TEST(invariants, zero_entropy_not_absorbing_with_hadamards) {
    // A Bell pair is pure; erasing one half produces one bit of entropy.
    auto s = zero_state(2);
    s.apply_hadamard(0);
    s.apply_gate(AffineGate{Gf2Matrix2::from_entries(1, 0, 1, 1), 0}, 0, 1);
    EXPECT_EQ(s.entropy(), 0u);
    s.apply_erasure(1);
    EXPECT_EQ(s.entropy(), 1u);
}

TEST(ClassicalState, agrees_with_general_path) {
    Rng rng(15);
    for (uint64_t seed = 0; seed < 40; seed++) {
        CircuitConfig c;
        c.n = 2 * (1 + rng.below(40));
        c.p = 0.15 * rng.uniform();
        c.h = seed % 2 ? 0.05 : 0.0;
        c.depth = 40;
        bool referenced = seed % 3 == 0;
        c.initial_state = referenced ? InitialState::kReferencedClassical : InitialState::kMaximallyMixed;
        auto sch = materialize_schedule(c, seed);
        auto s = referenced ? StabilizerState::referenced(c.n, ReferenceKind::kClassical)
                            : StabilizerState::maximally_mixed(c.n);
        auto f = referenced ? ClassicalState::referenced(c.n) : ClassicalState::maximally_mixed(c.n);
        size_t total = s.num_qubits();
        for (const auto &layer : sch.layers) {
            apply_layer(s, layer, c.n);
            apply_layer(f, layer, c.n);
            ASSERT_EQ(s.entropy(), f.entropy());
            std::vector<size_t> a = range(0, total / 4), b = range(total / 2, total / 2 + total / 4);
            ASSERT_EQ(s.subsystem_entropy(a), f.subsystem_entropy(a));
            ASSERT_EQ(s.mutual_information(a, b), f.mutual_information(a, b));
        }
        ClassicalState g = ClassicalState::from_stabilizer(s);
        EXPECT_EQ(g.entropy(), s.entropy());
    }
}

TEST(ClassicalState, rejects_non_z_states) {
    auto s = from_strings({"X"});
    EXPECT_THROW(ClassicalState::from_stabilizer(s), std::invalid_argument);
    EXPECT_THROW(ClassicalState::maximally_mixed(0), std::invalid_argument);
}
