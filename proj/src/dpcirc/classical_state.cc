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

#include "dpcirc/classical_state.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace dpcirc {

ClassicalState::ClassicalState(size_t n)
    : n_(n), rw_(words_for_bits(n)), zs_(n * rw_, 0), active_(rw_, 0), scratch_(rw_, 0) {
}

ClassicalState ClassicalState::maximally_mixed(size_t n) {
    if (n == 0) {
        throw std::invalid_argument("ClassicalState needs at least one qubit");
    }
    return ClassicalState(n);
}

ClassicalState ClassicalState::referenced(size_t n_system) {
    if (n_system == 0) {
        throw std::invalid_argument("ClassicalState needs at least one system qubit");
    }
    ClassicalState s(2 * n_system);
    for (size_t i = 0; i < n_system; i++) {
        size_t slot = s.claim_slot();
        uint64_t bit = uint64_t{1} << (slot % kWordBits);
        s.zcol(i)[slot / kWordBits] |= bit;
        s.zcol(i + n_system)[slot / kWordBits] |= bit;
    }
    return s;
}

ClassicalState ClassicalState::from_stabilizer(const StabilizerState &state) {
    if (!state.is_z_sector()) {
        throw std::invalid_argument("ClassicalState::from_stabilizer: state has X or Y components");
    }
    ClassicalState s(state.num_qubits());
    for (const PauliString &g : state.generators()) {
        size_t slot = s.claim_slot();
        uint64_t bit = uint64_t{1} << (slot % kWordBits);
        for (size_t q = 0; q < s.n_; q++) {
            if (g.z.get(q)) {
                s.zcol(q)[slot / kWordBits] |= bit;
            }
        }
    }
    return s;
}

void ClassicalState::check_qubit(size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) + " qubits");
    }
}

std::vector<PauliString> ClassicalState::generators() const {
    std::vector<PauliString> out;
    for (size_t w = 0; w < rw_; w++) {
        for (uint64_t m = active_[w]; m; m &= m - 1) {
            size_t slot = w * kWordBits + std::countr_zero(m);
            PauliString p(n_);
            for (size_t q = 0; q < n_; q++) {
                if ((zcol(q)[w] >> (slot % kWordBits)) & 1) {
                    p.z.set(q, true);
                }
            }
            out.push_back(std::move(p));
        }
    }
    return out;
}

size_t ClassicalState::claim_slot() {
    for (size_t w = 0; w < rw_; w++) {
        uint64_t free = ~active_[w];
        if (free) {
            size_t slot = w * kWordBits + std::countr_zero(free);
            active_[w] |= uint64_t{1} << (slot % kWordBits);
            k_++;
            return slot;
        }
    }
    throw std::logic_error("no free generator slot");
}

void ClassicalState::trace_out(size_t q) {
    uint64_t *col = zcol(q);
    size_t slot = lowest_set_bit(std::span<const uint64_t>(col, rw_));
    if (slot == kNoBit) {
        return;
    }
    size_t pw = slot / kWordBits;
    uint64_t pbit = uint64_t{1} << (slot % kWordBits);
    uint64_t *others = scratch_.data();
    std::copy(col, col + rw_, others);
    others[pw] &= ~pbit;
    // XOR the pivot generator into every other generator touching q, then
    // drop the pivot.
    for (size_t j = 0; j < n_; j++) {
        uint64_t *c = zcol(j);
        if (c[pw] & pbit) {
            for (size_t w = 0; w < rw_; w++) {
                c[w] ^= others[w];
            }
            c[pw] &= ~pbit;
        }
    }
    active_[pw] &= ~pbit;
    k_--;
}

void ClassicalState::apply_gate(const AffineGate &g, size_t first, size_t second) {
    check_qubit(first);
    check_qubit(second);
    if (first == second) {
        throw std::invalid_argument("gate qubits must differ");
    }
    const Gf2Matrix2 zm = g.z_map();
    uint64_t *za = zcol(first);
    uint64_t *zb = zcol(second);
    for (size_t w = 0; w < rw_; w++) {
        uint64_t z0 = za[w], z1 = zb[w];
        za[w] = (zm.entry(0, 0) ? z0 : 0) ^ (zm.entry(0, 1) ? z1 : 0);
        zb[w] = (zm.entry(1, 0) ? z0 : 0) ^ (zm.entry(1, 1) ? z1 : 0);
    }
}

void ClassicalState::apply_erasure(size_t q) {
    check_qubit(q);
    trace_out(q);
    size_t slot = claim_slot();
    zcol(q)[slot / kWordBits] |= uint64_t{1} << (slot % kWordBits);
}

void ClassicalState::apply_junk_noise(size_t q) {
    check_qubit(q);
    trace_out(q);
}

size_t ClassicalState::subsystem_entropy(std::span<const size_t> region) const {
    std::vector<char> in_region = region_mask(n_, region);
    std::vector<uint64_t> buffer;
    buffer.reserve((n_ - region.size()) * rw_);
    size_t rows = 0;
    for (size_t q = 0; q < n_; q++) {
        if (!in_region[q]) {
            buffer.insert(buffer.end(), zcol(q), zcol(q) + rw_);
            rows++;
        }
    }
    size_t r = rank_in_place(buffer, rows, rw_);
    return region.size() - (k_ - r);
}

size_t ClassicalState::mutual_information(std::span<const size_t> a, std::span<const size_t> b) const {
    std::vector<char> in_a = region_mask(n_, a);
    region_mask(n_, b);
    std::vector<size_t> both(a.begin(), a.end());
    for (size_t q : b) {
        if (in_a[q]) {
            throw std::invalid_argument("mutual_information: regions overlap at site " + std::to_string(q));
        }
        both.push_back(q);
    }
    return subsystem_entropy(a) + subsystem_entropy(b) - subsystem_entropy(both);
}

}  // namespace dpcirc
