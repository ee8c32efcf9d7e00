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

#ifndef DPCIRC_CLASSICAL_STATE_H
#define DPCIRC_CLASSICAL_STATE_H

#include <cstdint>
#include <span>
#include <vector>

#include "dpcirc/gateset.h"
#include "dpcirc/pauli_string.h"
#include "dpcirc/stabilizer_state.h"

namespace dpcirc {

/// Fast path for states whose stabilizer group contains only Z-strings. Affine
/// gates act on the z-columns by (A^-1)^T, erasure is column elimination, and
/// the whole simulation is GF(2) elimination on a k x n bit matrix.
///
/// Generator signs are not stored: every observable here is sign independent.
/// Observables agree exactly with StabilizerState on the same schedule.
class ClassicalState {
   public:
    static ClassicalState maximally_mixed(size_t n);
    /// Z_i Z_{i+n} reference pairs over 2n qubits.
    static ClassicalState referenced(size_t n_system);
    /// Throws std::invalid_argument unless `state` is in the Z sector.
    static ClassicalState from_stabilizer(const StabilizerState &state);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_generators() const {
        return k_;
    }
    /// Active generators (all with + sign) in slot order.
    std::vector<PauliString> generators() const;

    void apply_gate(const AffineGate &g, size_t first, size_t second);
    void apply_erasure(size_t q);
    void apply_junk_noise(size_t q);

    size_t entropy() const {
        return n_ - k_;
    }
    size_t subsystem_entropy(std::span<const size_t> region) const;
    size_t mutual_information(std::span<const size_t> a, std::span<const size_t> b) const;

   private:
    explicit ClassicalState(size_t n);

    uint64_t *zcol(size_t q) {
        return zs_.data() + q * rw_;
    }
    const uint64_t *zcol(size_t q) const {
        return zs_.data() + q * rw_;
    }
    void check_qubit(size_t q) const;
    size_t claim_slot();
    void trace_out(size_t q);

    size_t n_ = 0;
    size_t rw_ = 0;
    size_t k_ = 0;
    std::vector<uint64_t> zs_;
    std::vector<uint64_t> active_;
    std::vector<uint64_t> scratch_;
};

}  // namespace dpcirc

#endif
