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

#include "dpcirc/pauli_string.h"

#include <stdexcept>

namespace dpcirc {

PauliString PauliString::from_string(std::string_view text) {
    bool sign = false;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        sign = text[0] == '-';
        text.remove_prefix(1);
    }
    PauliString p(text.size());
    p.sign = sign;
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case '_':
            case 'I':
                break;
            case 'X':
                p.x.set(q, true);
                break;
            case 'Z':
                p.z.set(q, true);
                break;
            case 'Y':
                p.x.set(q, true);
                p.z.set(q, true);
                break;
            default:
                throw std::invalid_argument("PauliString::from_string: unexpected character");
        }
    }
    return p;
}

std::string PauliString::str() const {
    static constexpr char kChars[4] = {'_', 'X', 'Z', 'Y'};
    std::string out;
    out.reserve(size() + 1);
    out.push_back(sign ? '-' : '+');
    for (size_t q = 0; q < size(); q++) {
        out.push_back(kChars[pauli_at(q)]);
    }
    return out;
}

bool symplectic_inner(const PauliString &a, const PauliString &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("symplectic_inner: qubit count mismatch (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    return a.x.dot(b.z) ^ a.z.dot(b.x);
}

}  // namespace dpcirc
