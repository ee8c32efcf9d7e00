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

#include "dpcirc/gateset.h"

#include <bit>
#include <sstream>

namespace dpcirc {

namespace {

constexpr std::array<AffineGate, 24> build_gates() {
    std::array<AffineGate, 24> out{};
    size_t k = 0;
    // Identity first so that index 0 is the identity gate.
    constexpr std::array<std::array<int, 4>, 6> kMatrices = {{
        {1, 0, 0, 1},
        {0, 1, 1, 0},
        {1, 0, 1, 1},
        {1, 1, 0, 1},
        {0, 1, 1, 1},
        {1, 1, 1, 0},
    }};
    for (const auto &m : kMatrices) {
        for (uint8_t b = 0; b < 4; b++) {
            out[k++] = AffineGate{Gf2Matrix2::from_entries(m[0], m[1], m[2], m[3]), b};
        }
    }
    return out;
}

constexpr std::array<AffineGate, 24> kGates = build_gates();

}  // namespace

bool PermutationTable::is_bijection() const {
    uint8_t seen = 0;
    for (uint8_t v : map) {
        if (v > 3) {
            return false;
        }
        seen |= static_cast<uint8_t>(1 << v);
    }
    return seen == 0b1111;
}

std::array<std::array<int, 4>, 4> PermutationTable::matrix() const {
    std::array<std::array<int, 4>, 4> t{};
    for (int beta = 0; beta < 4; beta++) {
        t[map[beta]][beta] = 1;
    }
    return t;
}

std::string AffineGate::str() const {
    std::ostringstream out;
    out << "A=[[" << a.entry(0, 0) << ',' << a.entry(0, 1) << "],[" << a.entry(1, 0) << ',' << a.entry(1, 1)
        << "]] b=(" << (b & 1) << ',' << ((b >> 1) & 1) << ')';
    return out.str();
}

std::span<const AffineGate, 24> enumerate_gates() {
    return kGates;
}

PermutationTable to_permutation(const AffineGate &g) {
    PermutationTable t;
    for (uint8_t beta = 0; beta < 4; beta++) {
        t.map[beta] = g.apply(beta);
    }
    return t;
}

PairPauli symplectic_action(const AffineGate &g, uint8_t x_pair, uint8_t z_pair) {
    PairPauli out;
    out.x = g.a.apply(x_pair);
    out.z = g.z_map().apply(z_pair);
    bool flip = std::popcount(static_cast<unsigned>(z_pair & g.z_sign_mask())) & 1;
    // i^{#Y} changes by i^{#Y_before - #Y_after}; the difference is even, and
    // it is -1 exactly when #Y goes 2 -> 0 or 0 -> 2.
    int y_before = std::popcount(static_cast<unsigned>(x_pair & z_pair));
    int y_after = std::popcount(static_cast<unsigned>(out.x & out.z));
    if (y_before - y_after == 2 || y_after - y_before == 2) {
        flip = !flip;
    }
    out.sign_flip = flip;
    return out;
}

}  // namespace dpcirc
