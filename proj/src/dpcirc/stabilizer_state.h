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

#ifndef DPCIRC_STABILIZER_STATE_H
#define DPCIRC_STABILIZER_STATE_H

#include <cstdint>
#include <span>
#include <vector>

#include "dpcirc/gateset.h"
#include "dpcirc/pauli_string.h"

namespace dpcirc {

enum class ReferenceKind {
    kClassical,  // Z_i Z_{i+n}: one bit of classical correlation per pair
    kBell,       // X_i X_{i+n} and Z_i Z_{i+n}: a Bell pair
};

/// A mixed stabilizer state on n qubits described by k <= n independent,
/// commuting generators; its entropy is n - k bits.
///
/// Storage is column-major: for every qubit q there is an x-column and a
/// z-column, each a bitset over generator slots. Slots are recycled; `active`
/// marks the occupied ones and inactive slots are all-zero in every column.
/// This makes two-qubit gates O(slots/64) word operations per gate.
///
/// Qubit indices out of range throw std::out_of_range.
class StabilizerState {
   public:
    /// I / 2^n. Throws std::invalid_argument when n == 0.
    static StabilizerState maximally_mixed(size_t n);

    /// 2n qubits: system qubits [0, n) each paired with reference qubit i + n.
    static StabilizerState referenced(size_t n_system, ReferenceKind kind);

    /// Throws std::invalid_argument when the generators do not commute, are
    /// dependent, exceed n, or have the wrong length.
    static StabilizerState from_generators(size_t n, std::span<const PauliString> generators);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_generators() const {
        return k_;
    }
    /// Active generators in slot order.
    std::vector<PauliString> generators() const;

    void apply_gate(const AffineGate &g, size_t first, size_t second);
    void apply_hadamard(size_t q);
    /// rho -> |0><0|_q (x) Tr_q(rho).
    void apply_erasure(size_t q);
    /// rho -> (I/2)_q (x) Tr_q(rho).
    void apply_junk_noise(size_t q);

    /// Negates the generator at position `index` of generators().
    void flip_generator_sign(size_t index);

    size_t entropy() const {
        return n_ - k_;
    }
    /// |A| - dim{g in the stabilizer group : supp(g) within A}. Throws
    /// std::invalid_argument for repeated sites.
    size_t subsystem_entropy(std::span<const size_t> region) const;
    /// S_A + S_B - S_{AB}; throws std::invalid_argument when A and B overlap.
    size_t mutual_information(std::span<const size_t> a, std::span<const size_t> b) const;

    /// True when no generator has an X or Y anywhere.
    bool is_z_sector() const;
    /// Generators pairwise commute and are independent (test support; O(k^2 n)).
    bool check_invariants() const;

   private:
    StabilizerState(size_t n);

    uint64_t *xcol(size_t q) {
        return xs_.data() + q * rw_;
    }
    uint64_t *zcol(size_t q) {
        return zs_.data() + q * rw_;
    }
    const uint64_t *xcol(size_t q) const {
        return xs_.data() + q * rw_;
    }
    const uint64_t *zcol(size_t q) const {
        return zs_.data() + q * rw_;
    }
    void check_qubit(size_t q) const;
    PauliString generator_at_slot(size_t slot) const;
    std::vector<size_t> active_slots() const;
    size_t claim_slot();
    void release_slot(size_t slot);
    /// Multiplies the generator in `pivot` into every slot set in `targets`.
    void rowsum(size_t pivot, std::span<const uint64_t> targets);
    /// Removes qubit q from the support of the group, dropping at most two
    /// generators; what remains generates the stabilizer of Tr_q(rho).
    void trace_out(size_t q);

    size_t n_ = 0;
    size_t rw_ = 0;
    size_t k_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint64_t> signs_;
    std::vector<uint64_t> active_;
    std::vector<uint64_t> scratch_;
};

/// Shared by both state representations: validates a region against n qubits
/// and returns a membership mask.
std::vector<char> region_mask(size_t n, std::span<const size_t> region);

}  // namespace dpcirc

#endif
