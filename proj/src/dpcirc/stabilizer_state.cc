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

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>

namespace dpcirc {

namespace {

inline uint64_t select(bool bit, uint64_t v) {
    return bit ? v : 0;
}

inline bool test_bit(const uint64_t *words, size_t slot) {
    return (words[slot / kWordBits] >> (slot % kWordBits)) & 1;
}

}  // namespace

std::vector<char> region_mask(size_t n, std::span<const size_t> region) {
    std::vector<char> mask(n, 0);
    for (size_t q : region) {
        if (q >= n) {
            throw std::out_of_range("region site " + std::to_string(q) + " out of range for " + std::to_string(n) +
                                    " qubits");
        }
        if (mask[q]) {
            throw std::invalid_argument("region lists site " + std::to_string(q) + " twice");
        }
        mask[q] = 1;
    }
    return mask;
}

StabilizerState::StabilizerState(size_t n)
    : n_(n),
      rw_(words_for_bits(n)),
      xs_(n * rw_, 0),
      zs_(n * rw_, 0),
      signs_(rw_, 0),
      active_(rw_, 0),
      scratch_(3 * rw_, 0) {
}

StabilizerState StabilizerState::maximally_mixed(size_t n) {
    if (n == 0) {
        throw std::invalid_argument("StabilizerState needs at least one qubit");
    }
    return StabilizerState(n);
}

StabilizerState StabilizerState::referenced(size_t n_system, ReferenceKind kind) {
    if (n_system == 0) {
        throw std::invalid_argument("StabilizerState needs at least one system qubit");
    }
    StabilizerState s(2 * n_system);
    for (size_t i = 0; i < n_system; i++) {
        size_t slot = s.claim_slot();
        s.zcol(i)[slot / kWordBits] |= uint64_t{1} << (slot % kWordBits);
        s.zcol(i + n_system)[slot / kWordBits] |= uint64_t{1} << (slot % kWordBits);
        if (kind == ReferenceKind::kBell) {
            slot = s.claim_slot();
            s.xcol(i)[slot / kWordBits] |= uint64_t{1} << (slot % kWordBits);
            s.xcol(i + n_system)[slot / kWordBits] |= uint64_t{1} << (slot % kWordBits);
        }
    }
    return s;
}

StabilizerState StabilizerState::from_generators(size_t n, std::span<const PauliString> generators) {
    if (n == 0) {
        throw std::invalid_argument("StabilizerState needs at least one qubit");
    }
    if (generators.size() > n) {
        throw std::invalid_argument("more generators than qubits");
    }
    for (const auto &g : generators) {
        if (g.size() != n) {
            throw std::invalid_argument("generator length does not match qubit count");
        }
    }
    for (size_t a = 0; a < generators.size(); a++) {
        for (size_t b = a + 1; b < generators.size(); b++) {
            if (symplectic_inner(generators[a], generators[b])) {
                throw std::invalid_argument("generators " + generators[a].str() + " and " + generators[b].str() +
                                            " anticommute");
            }
        }
    }
    BitMatrix stacked(generators.size(), 2 * n);
    for (size_t r = 0; r < generators.size(); r++) {
        for (size_t q = 0; q < n; q++) {
            stacked.set(r, q, generators[r].x.get(q));
            stacked.set(r, q + n, generators[r].z.get(q));
        }
    }
    if (rank(stacked) != generators.size()) {
        throw std::invalid_argument("generators are not independent");
    }
    StabilizerState s(n);
    for (const auto &g : generators) {
        size_t slot = s.claim_slot();
        uint64_t bit = uint64_t{1} << (slot % kWordBits);
        size_t w = slot / kWordBits;
        for (size_t q = 0; q < n; q++) {
            if (g.x.get(q)) {
                s.xcol(q)[w] |= bit;
            }
            if (g.z.get(q)) {
                s.zcol(q)[w] |= bit;
            }
        }
        if (g.sign) {
            s.signs_[w] |= bit;
        }
    }
    return s;
}

void StabilizerState::check_qubit(size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) + " qubits");
    }
}

std::vector<size_t> StabilizerState::active_slots() const {
    std::vector<size_t> out;
    out.reserve(k_);
    for (size_t w = 0; w < rw_; w++) {
        for (uint64_t m = active_[w]; m; m &= m - 1) {
            out.push_back(w * kWordBits + std::countr_zero(m));
        }
    }
    return out;
}

PauliString StabilizerState::generator_at_slot(size_t slot) const {
    PauliString p(n_);
    for (size_t q = 0; q < n_; q++) {
        if (test_bit(xcol(q), slot)) {
            p.x.set(q, true);
        }
        if (test_bit(zcol(q), slot)) {
            p.z.set(q, true);
        }
    }
    p.sign = test_bit(signs_.data(), slot);
    return p;
}

std::vector<PauliString> StabilizerState::generators() const {
    std::vector<PauliString> out;
    for (size_t slot : active_slots()) {
        out.push_back(generator_at_slot(slot));
    }
    return out;
}

size_t StabilizerState::claim_slot() {
    for (size_t w = 0; w < rw_; w++) {
        uint64_t free = ~active_[w];
        if (free) {
            size_t slot = w * kWordBits + std::countr_zero(free);
            assert(slot < n_);
            active_[w] |= uint64_t{1} << (slot % kWordBits);
            k_++;
            return slot;
        }
    }
    throw std::logic_error("no free generator slot");
}

void StabilizerState::release_slot(size_t slot) {
    size_t w = slot / kWordBits;
    uint64_t keep = ~(uint64_t{1} << (slot % kWordBits));
    for (size_t q = 0; q < n_; q++) {
        xcol(q)[w] &= keep;
        zcol(q)[w] &= keep;
    }
    signs_[w] &= keep;
    active_[w] &= keep;
    k_--;
}

void StabilizerState::rowsum(size_t pivot, std::span<const uint64_t> targets) {
    // Phase exponents (powers of i) accumulate per target in a two-bitplane
    // mod-4 counter. For a pivot Pauli P1 and target Pauli P2 on one qubit the
    // exponent of P1*P2 is:
    //   P1 = X: +1 if P2 = Y, -1 if P2 = Z
    //   P1 = Z: +1 if P2 = X, -1 if P2 = Y
    //   P1 = Y: +1 if P2 = Z, -1 if P2 = X
    uint64_t *lo = scratch_.data() + rw_;
    uint64_t *hi = scratch_.data() + 2 * rw_;
    std::fill(lo, lo + rw_, 0);
    std::fill(hi, hi + rw_, 0);
    size_t pw = pivot / kWordBits;
    size_t pb = pivot % kWordBits;
    for (size_t q = 0; q < n_; q++) {
        uint64_t *xc = xcol(q);
        uint64_t *zc = zcol(q);
        bool x1 = (xc[pw] >> pb) & 1;
        bool z1 = (zc[pw] >> pb) & 1;
        if (!x1 && !z1) {
            continue;
        }
        for (size_t w = 0; w < rw_; w++) {
            uint64_t t = targets[w];
            if (!t) {
                continue;
            }
            uint64_t x2 = xc[w] & t;
            uint64_t z2 = zc[w] & t;
            uint64_t plus;
            uint64_t minus;
            if (x1 && !z1) {
                plus = x2 & z2;
                minus = z2 & ~x2;
            } else if (!x1) {
                plus = x2 & ~z2;
                minus = x2 & z2;
            } else {
                plus = z2 & ~x2;
                minus = x2 & ~z2;
            }
            uint64_t carry = lo[w] & plus;
            lo[w] ^= plus;
            hi[w] ^= carry;
            uint64_t borrow = ~lo[w] & minus;
            lo[w] ^= minus;
            hi[w] ^= borrow;
            xc[w] ^= select(x1, t);
            zc[w] ^= select(z1, t);
        }
    }
    bool pivot_sign = (signs_[pw] >> pb) & 1;
    for (size_t w = 0; w < rw_; w++) {
        // Commuting products have an even exponent: lo must vanish on targets.
        assert((lo[w] & targets[w]) == 0);
        signs_[w] ^= targets[w] & (hi[w] ^ select(pivot_sign, ~uint64_t{0}));
    }
}

void StabilizerState::trace_out(size_t q) {
    uint64_t *targets = scratch_.data();
    for (int pass = 0; pass < 2; pass++) {
        // Pass 0 pivots on a generator with X or Y at q; after it, every other
        // generator is I or Z at q and pass 1 pivots on a Z.
        const uint64_t *col = pass == 0 ? xcol(q) : zcol(q);
        size_t slot = lowest_set_bit(std::span<const uint64_t>(col, rw_));
        if (slot == kNoBit) {
            continue;
        }
        std::copy(col, col + rw_, targets);
        targets[slot / kWordBits] &= ~(uint64_t{1} << (slot % kWordBits));
        if (std::any_of(targets, targets + rw_, [](uint64_t w) { return w != 0; })) {
            rowsum(slot, std::span<const uint64_t>(targets, rw_));
        }
        release_slot(slot);
    }
}

void StabilizerState::apply_gate(const AffineGate &g, size_t first, size_t second) {
    check_qubit(first);
    check_qubit(second);
    if (first == second) {
        throw std::invalid_argument("gate qubits must differ");
    }
    const Gf2Matrix2 xm = g.a;
    const Gf2Matrix2 zm = g.z_map();
    const uint8_t sign_mask = g.z_sign_mask();
    uint64_t *xa = xcol(first);
    uint64_t *xb = xcol(second);
    uint64_t *za = zcol(first);
    uint64_t *zb = zcol(second);
    for (size_t w = 0; w < rw_; w++) {
        uint64_t x0 = xa[w], x1 = xb[w], z0 = za[w], z1 = zb[w];
        uint64_t nx0 = select(xm.entry(0, 0), x0) ^ select(xm.entry(0, 1), x1);
        uint64_t nx1 = select(xm.entry(1, 0), x0) ^ select(xm.entry(1, 1), x1);
        uint64_t nz0 = select(zm.entry(0, 0), z0) ^ select(zm.entry(0, 1), z1);
        uint64_t nz1 = select(zm.entry(1, 0), z0) ^ select(zm.entry(1, 1), z1);
        uint64_t flip = select(sign_mask & 1, z0) ^ select(sign_mask & 2, z1);
        uint64_t y0 = x0 & z0, y1 = x1 & z1;
        uint64_t ny0 = nx0 & nz0, ny1 = nx1 & nz1;
        flip ^= (y0 & y1 & ~ny0 & ~ny1) | (~y0 & ~y1 & ny0 & ny1);
        signs_[w] ^= flip;
        xa[w] = nx0;
        xb[w] = nx1;
        za[w] = nz0;
        zb[w] = nz1;
    }
}

void StabilizerState::apply_hadamard(size_t q) {
    check_qubit(q);
    uint64_t *xc = xcol(q);
    uint64_t *zc = zcol(q);
    for (size_t w = 0; w < rw_; w++) {
        signs_[w] ^= xc[w] & zc[w];
        std::swap(xc[w], zc[w]);
    }
}

void StabilizerState::apply_erasure(size_t q) {
    check_qubit(q);
    trace_out(q);
    size_t slot = claim_slot();
    zcol(q)[slot / kWordBits] |= uint64_t{1} << (slot % kWordBits);
}

void StabilizerState::apply_junk_noise(size_t q) {
    check_qubit(q);
    trace_out(q);
}

void StabilizerState::flip_generator_sign(size_t index) {
    auto slots = active_slots();
    if (index >= slots.size()) {
        throw std::out_of_range("generator index out of range");
    }
    signs_[slots[index] / kWordBits] ^= uint64_t{1} << (slots[index] % kWordBits);
}

size_t StabilizerState::subsystem_entropy(std::span<const size_t> region) const {
    std::vector<char> in_region = region_mask(n_, region);
    // Restricting the group to the complement is linear with kernel equal to
    // the elements supported inside the region, so
    //   dim(G_A) = k - rank(generators restricted to complement).
    // Columns of this storage are rows of the transposed restriction.
    std::vector<uint64_t> buffer;
    buffer.reserve(2 * (n_ - region.size()) * rw_);
    size_t rows = 0;
    for (size_t q = 0; q < n_; q++) {
        if (in_region[q]) {
            continue;
        }
        buffer.insert(buffer.end(), xcol(q), xcol(q) + rw_);
        buffer.insert(buffer.end(), zcol(q), zcol(q) + rw_);
        rows += 2;
    }
    size_t r = rank_in_place(buffer, rows, rw_);
    return region.size() - (k_ - r);
}

size_t StabilizerState::mutual_information(std::span<const size_t> a, std::span<const size_t> b) const {
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

bool StabilizerState::is_z_sector() const {
    return std::all_of(xs_.begin(), xs_.end(), [](uint64_t w) { return w == 0; });
}

bool StabilizerState::check_invariants() const {
    auto gens = generators();
    if (gens.size() != k_ || k_ > n_) {
        return false;
    }
    for (size_t a = 0; a < gens.size(); a++) {
        for (size_t b = a + 1; b < gens.size(); b++) {
            if (symplectic_inner(gens[a], gens[b])) {
                return false;
            }
        }
    }
    BitMatrix stacked(gens.size(), 2 * n_);
    for (size_t r = 0; r < gens.size(); r++) {
        for (size_t q = 0; q < n_; q++) {
            stacked.set(r, q, gens[r].x.get(q));
            stacked.set(r, q + n_, gens[r].z.get(q));
        }
    }
    if (rank(stacked) != k_) {
        return false;
    }
    // Inactive slots must be blank.
    for (size_t w = 0; w < rw_; w++) {
        uint64_t inactive = ~active_[w];
        for (size_t q = 0; q < n_; q++) {
            if ((xcol(q)[w] | zcol(q)[w]) & inactive) {
                return false;
            }
        }
        if (signs_[w] & inactive) {
            return false;
        }
    }
    return true;
}

}  // namespace dpcirc
