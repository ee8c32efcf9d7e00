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

#include "dpcirc/dense_state.h"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "dpcirc/stabilizer_state.h"

namespace dpcirc {

using Complex = std::complex<double>;

namespace {

void check_size(size_t n) {
    if (n == 0 || n > DenseState::kMaxDenseQubits) {
        throw std::invalid_argument("DenseState supports 1.." + std::to_string(DenseState::kMaxDenseQubits) +
                                    " qubits (got " + std::to_string(n) + ")");
    }
}

Eigen::Matrix2cd single_pauli(int code) {
    Eigen::Matrix2cd m;
    switch (code) {
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 1, 0, 0, -1;
            break;
        case 3:
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        default:
            m.setIdentity();
    }
    return m;
}

double entropy_of(const Eigen::MatrixXcd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda > 1e-13) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

}  // namespace

Eigen::MatrixXcd embed_single_qubit(const Eigen::Matrix2cd &op, size_t q, size_t n) {
    // Kronecker order: qubit n-1 is the most significant factor.
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (size_t j = n; j-- > 0;) {
        Eigen::MatrixXcd factor = j == q ? Eigen::MatrixXcd(op) : Eigen::MatrixXcd::Identity(2, 2);
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); r++) {
            for (Eigen::Index c = 0; c < out.cols(); c++) {
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * factor;
            }
        }
        out = std::move(next);
    }
    return out;
}

Eigen::MatrixXcd pauli_matrix(const PauliString &p) {
    const size_t n = p.x.size();
    size_t dim = size_t{1} << n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
    for (size_t q = 0; q < n; q++) {
        int code = p.pauli_at(q);
        if (code) {
            out = embed_single_qubit(single_pauli(code), q, n) * out;
        }
    }
    if (p.sign) {
        out = -out;
    }
    return out;
}

DenseState DenseState::maximally_mixed(size_t n) {
    check_size(n);
    size_t dim = size_t{1} << n;
    return DenseState(n, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

DenseState DenseState::from_generators(size_t n, std::span<const PauliString> generators) {
    check_size(n);
    size_t dim = size_t{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim);
    for (const PauliString &g : generators) {
        if (g.x.size() != n) {
            throw std::invalid_argument("generator length does not match qubit count");
        }
        rho = rho * (Eigen::MatrixXcd::Identity(dim, dim) + pauli_matrix(g));
    }
    rho /= static_cast<double>(dim);
    return DenseState(n, std::move(rho));
}

DenseState DenseState::from_stabilizer(const StabilizerState &state) {
    auto gens = state.generators();
    return from_generators(state.num_qubits(), gens);
}

DenseState DenseState::from_matrix(Eigen::MatrixXcd rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 2 || (rho.rows() & (rho.rows() - 1))) {
        throw std::invalid_argument("density matrix must be 2^n x 2^n");
    }
    size_t n = static_cast<size_t>(std::countr_zero(static_cast<uint64_t>(rho.rows())));
    check_size(n);
    return DenseState(n, std::move(rho));
}

void DenseState::check_qubit(size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) + " qubits");
    }
}

void DenseState::apply_unitary(const Eigen::MatrixXcd &u) {
    rho_ = u * rho_ * u.adjoint();
}

void DenseState::apply_kraus(std::span<const Eigen::MatrixXcd> ops) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho_.rows(), rho_.cols());
    for (const auto &k : ops) {
        out += k * rho_ * k.adjoint();
    }
    rho_ = std::move(out);
}

void DenseState::apply_gate(const AffineGate &g, size_t first, size_t second) {
    check_qubit(first);
    check_qubit(second);
    if (first == second) {
        throw std::invalid_argument("gate qubits must differ");
    }
    PermutationTable table = to_permutation(g);
    size_t dim = size_t{1} << n_;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t i = 0; i < dim; i++) {
        unsigned beta = static_cast<unsigned>(((i >> first) & 1) | (((i >> second) & 1) << 1));
        unsigned alpha = table.map[beta];
        size_t j = i & ~((size_t{1} << first) | (size_t{1} << second));
        j |= (size_t{alpha & 1u} << first) | (size_t{(alpha >> 1) & 1u} << second);
        u(j, i) = 1;
    }
    apply_unitary(u);
}

void DenseState::apply_hadamard(size_t q) {
    check_qubit(q);
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    apply_unitary(embed_single_qubit(h, q, n_));
}

void DenseState::apply_erasure(size_t q) {
    check_qubit(q);
    Eigen::Matrix2cd k0, k1;
    k0 << 1, 0, 0, 0;
    k1 << 0, 1, 0, 0;
    Eigen::MatrixXcd ops[2] = {embed_single_qubit(k0, q, n_), embed_single_qubit(k1, q, n_)};
    apply_kraus(ops);
}

void DenseState::apply_junk_noise(size_t q) {
    check_qubit(q);
    Eigen::MatrixXcd ops[4];
    for (int k = 0; k < 4; k++) {
        Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
        e(k >> 1, k & 1) = 1 / std::sqrt(2.0);
        ops[k] = embed_single_qubit(e, q, n_);
    }
    apply_kraus(ops);
}

DenseState DenseState::partial_trace(std::span<const size_t> region) const {
    std::vector<char> keep = region_mask(n_, region);
    if (region.empty()) {
        throw std::invalid_argument("partial_trace: empty region");
    }
    std::vector<size_t> traced;
    for (size_t q = 0; q < n_; q++) {
        if (!keep[q]) {
            traced.push_back(q);
        }
    }
    size_t m = region.size();
    size_t sub_dim = size_t{1} << m;
    size_t env_dim = size_t{1} << traced.size();
    auto full_index = [&](size_t sub, size_t env) {
        size_t i = 0;
        for (size_t k = 0; k < m; k++) {
            i |= ((sub >> k) & 1) << region[k];
        }
        for (size_t k = 0; k < traced.size(); k++) {
            i |= ((env >> k) & 1) << traced[k];
        }
        return i;
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sub_dim, sub_dim);
    for (size_t r = 0; r < sub_dim; r++) {
        for (size_t c = 0; c < sub_dim; c++) {
            Complex acc = 0;
            for (size_t e = 0; e < env_dim; e++) {
                acc += rho_(full_index(r, e), full_index(c, e));
            }
            out(r, c) = acc;
        }
    }
    return DenseState(m, std::move(out));
}

double DenseState::von_neumann_entropy() const {
    return entropy_of(rho_);
}

double DenseState::subsystem_entropy(std::span<const size_t> region) const {
    if (region.empty()) {
        return 0;
    }
    return partial_trace(region).von_neumann_entropy();
}

double DenseState::mutual_information(std::span<const size_t> a, std::span<const size_t> b) const {
    std::vector<size_t> both(a.begin(), a.end());
    both.insert(both.end(), b.begin(), b.end());
    region_mask(n_, both);  // rejects overlap
    return subsystem_entropy(a) + subsystem_entropy(b) - subsystem_entropy(both);
}

bool DenseState::is_valid() const {
    if (std::abs(rho_.trace() - Complex(1, 0)) > 1e-10) {
        return false;
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() > -1e-9;
}

DenseState evolve_dense(DenseState state, const Schedule &schedule) {
    if (schedule.n > state.num_qubits()) {
        throw std::out_of_range("schedule ring wider than the dense state");
    }
    for (const Layer &layer : schedule.layers) {
        apply_layer(state, layer, schedule.n);
    }
    return state;
}

}  // namespace dpcirc
