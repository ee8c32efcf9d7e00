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

#ifndef DPCIRC_GATESET_H
#define DPCIRC_GATESET_H

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "dpcirc/rng.h"

namespace dpcirc {

// Two-bit conventions used throughout: a pair value is a 2-bit integer whose
// bit 0 belongs to the gate's first qubit and bit 1 to its second qubit. The
// string "10" in documentation means first qubit = 1, second qubit = 0, i.e.
// the integer 1.

/// 2x2 matrix over GF(2). rows[i] is a 2-bit mask whose bit c is entry (i, c).
struct Gf2Matrix2 {
    std::array<uint8_t, 2> rows{};

    static constexpr Gf2Matrix2 identity() {
        return Gf2Matrix2{{0b01, 0b10}};
    }
    /// Row-major entries {a00, a01, a10, a11}.
    static constexpr Gf2Matrix2 from_entries(int a00, int a01, int a10, int a11) {
        return Gf2Matrix2{{static_cast<uint8_t>(a00 | (a01 << 1)), static_cast<uint8_t>(a10 | (a11 << 1))}};
    }

    constexpr bool entry(int i, int c) const {
        return (rows[i] >> c) & 1;
    }
    constexpr uint8_t apply(uint8_t v) const {
        return static_cast<uint8_t>((__builtin_parity(rows[0] & v)) | (__builtin_parity(rows[1] & v) << 1));
    }
    constexpr bool determinant() const {
        return (entry(0, 0) & entry(1, 1)) ^ (entry(0, 1) & entry(1, 0));
    }
    constexpr Gf2Matrix2 transpose() const {
        return from_entries(entry(0, 0), entry(1, 0), entry(0, 1), entry(1, 1));
    }
    /// Over GF(2) the adjugate of an invertible 2x2 matrix is its inverse.
    constexpr Gf2Matrix2 inverse() const {
        return from_entries(entry(1, 1), entry(0, 1), entry(1, 0), entry(0, 0));
    }

    constexpr bool operator==(const Gf2Matrix2 &) const = default;
};

/// Lookup table of a two-bit permutation: map[beta] = g(beta).
struct PermutationTable {
    std::array<uint8_t, 4> map{};

    bool is_bijection() const;
    /// (T_g)[alpha][beta] = 1 iff g(beta) = alpha.
    std::array<std::array<int, 4>, 4> matrix() const;

    bool operator==(const PermutationTable &) const = default;
    auto operator<=>(const PermutationTable &) const = default;
};

/// Result of conjugating a two-qubit Pauli by a gate.
struct PairPauli {
    uint8_t x = 0;
    uint8_t z = 0;
    bool sign_flip = false;

    bool operator==(const PairPauli &) const = default;
};

/// The classical gate g(v) = A v + b with A invertible. The affine maps of
/// GF(2)^2 are exactly the 24 permutations of two bits.
struct AffineGate {
    Gf2Matrix2 a = Gf2Matrix2::identity();
    uint8_t b = 0;

    constexpr uint8_t apply(uint8_t beta) const {
        return a.apply(beta) ^ b;
    }
    /// Matrix acting on Z-string pair bits: (A^-1)^T.
    constexpr Gf2Matrix2 z_map() const {
        return a.inverse().transpose();
    }
    /// A^-1 b; a Z-string z picks up a sign flip iff z . (A^-1 b) = 1.
    constexpr uint8_t z_sign_mask() const {
        return a.inverse().apply(b);
    }

    std::string str() const;

    constexpr bool operator==(const AffineGate &) const = default;
};

/// All 24 gates. Index 0 is the identity; the order is fixed (matrix-major, then offset).
std::span<const AffineGate, 24> enumerate_gates();

/// Uniform over enumerate_gates().
inline const AffineGate &sample_gate(Rng &rng) {
    return enumerate_gates()[rng.below(24)];
}
/// Index into enumerate_gates() for a uniform draw.
inline uint8_t sample_gate_index(Rng &rng) {
    return static_cast<uint8_t>(rng.below(24));
}

PermutationTable to_permutation(const AffineGate &g);

/// Conjugation U P U^dagger of the two-qubit Pauli (x_pair, z_pair) by the
/// Clifford extension of g that keeps both the Z-only and the X-only string
/// sectors closed: X^x -> X^{Ax}, Z^z -> (-1)^{z.A^-1 b} Z^{(A^-1)^T z}.
/// sign_flip also absorbs the i^{#Y} bookkeeping of the standard tableau form.
PairPauli symplectic_action(const AffineGate &g, uint8_t x_pair, uint8_t z_pair);

}  // namespace dpcirc

#endif
