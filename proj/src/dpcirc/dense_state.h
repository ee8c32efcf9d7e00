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

#ifndef DPCIRC_DENSE_STATE_H
#define DPCIRC_DENSE_STATE_H

#include <Eigen/Dense>
#include <span>

#include "dpcirc/gateset.h"
#include "dpcirc/pauli_string.h"
#include "dpcirc/schedule.h"

namespace dpcirc {

class StabilizerState;

/// Brute-force density matrix on up to kMaxDenseQubits qubits. Basis index bit j
/// is qubit j. Every channel is applied as an explicit Kraus sum over full
/// 2^n x 2^n operators; no stabilizer shortcuts are used.
class DenseState {
   public:
    static constexpr size_t kMaxDenseQubits = 6;

    static DenseState maximally_mixed(size_t n);
    /// rho = 2^-n prod_i (I + g_i).
    static DenseState from_generators(size_t n, std::span<const PauliString> generators);
    static DenseState from_stabilizer(const StabilizerState &state);
    /// Wraps an arbitrary matrix (for tests); throws unless 2^n x 2^n.
    static DenseState from_matrix(Eigen::MatrixXcd rho);

    size_t num_qubits() const {
        return n_;
    }
    const Eigen::MatrixXcd &rho() const {
        return rho_;
    }

    void apply_unitary(const Eigen::MatrixXcd &u);
    void apply_kraus(std::span<const Eigen::MatrixXcd> ops);

    /// The permutation unitary of g's truth table on (first, second).
    void apply_gate(const AffineGate &g, size_t first, size_t second);
    void apply_hadamard(size_t q);
    /// Kraus {|0><0|_q, |0><1|_q}.
    void apply_erasure(size_t q);
    /// Kraus {|i><j|_q / sqrt(2)} for i, j in {0, 1}.
    void apply_junk_noise(size_t q);

    /// Reduced state on `region`; the new qubit m is region[m].
    DenseState partial_trace(std::span<const size_t> region) const;

    double von_neumann_entropy() const;
    double subsystem_entropy(std::span<const size_t> region) const;
    double mutual_information(std::span<const size_t> a, std::span<const size_t> b) const;

    /// Trace 1 within 1e-10, Hermitian, and no eigenvalue below -1e-9.
    bool is_valid() const;

   private:
    DenseState(size_t n, Eigen::MatrixXcd rho) : n_(n), rho_(std::move(rho)) {
    }
    void check_qubit(size_t q) const;

    size_t n_ = 0;
    Eigen::MatrixXcd rho_;
};

/// Full 2^n operator of a Pauli string, with Y = [[0,-i],[i,0]].
Eigen::MatrixXcd pauli_matrix(const PauliString &p);

/// Embeds a single-qubit operator on qubit q of n.
Eigen::MatrixXcd embed_single_qubit(const Eigen::Matrix2cd &op, size_t q, size_t n);

/// Applies every layer; schedule sites must lie inside the state.
DenseState evolve_dense(DenseState state, const Schedule &schedule);

}  // namespace dpcirc

#endif
