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

#ifndef DPCIRC_PAULI_STRING_H
#define DPCIRC_PAULI_STRING_H

#include <string>
#include <string_view>

#include "dpcirc/gf2.h"

namespace dpcirc {

/// A signed Pauli product in symplectic form. Qubit j carries I, X, Z or Y for
/// (x_j, z_j) = (0,0), (1,0), (0,1), (1,1); the operator is
/// (-1)^sign * i^{#Y} * X^x Z^z.
struct PauliString {
    BitVector x;
    BitVector z;
    bool sign = false;

    PauliString() = default;
    explicit PauliString(size_t n) : x(n), z(n) {
    }

    /// Parses text like "+XZ_Y" or "-ZZ". The sign is optional; '_' and 'I' mean identity.
    static PauliString from_string(std::string_view text);

    size_t size() const {
        return x.size();
    }
    /// 0=I, 1=X, 2=Z, 3=Y.
    int pauli_at(size_t q) const {
        return static_cast<int>(x.get(q)) | (static_cast<int>(z.get(q)) << 1);
    }
    std::string str() const;

    bool operator==(const PauliString &other) const = default;
};

/// 0 when the two strings commute, 1 when they anticommute.
/// Throws std::invalid_argument when the qubit counts differ.
bool symplectic_inner(const PauliString &a, const PauliString &b);

}  // namespace dpcirc

#endif
