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

#ifndef DPCIRC_EXACT_ORACLE_H
#define DPCIRC_EXACT_ORACLE_H

#include <cstdint>
#include <span>
#include <vector>

#include "dpcirc/schedule.h"

namespace dpcirc {

/// Probability distribution over n-bit strings, index bit j = bit j.
struct Distribution {
    size_t n_bits = 0;
    std::vector<double> probs;

    static Distribution uniform(size_t n_bits);
    static Distribution point(size_t n_bits, uint32_t x);

    double total() const;
};

/// Deterministic map of one classical circuit realization: map[x] = f(x).
struct CircuitFunction {
    size_t n_bits = 0;
    std::vector<uint32_t> map;

    bool is_bijection() const;
};

/// Largest n accepted by the distribution and function oracles.
constexpr size_t kMaxOracleBits = 20;

/// Classical evolution: gates permute mass, erasure moves the bit-1 mass onto
/// bit 0, junk noise averages the two values of the bit. Throws
/// std::invalid_argument if the schedule has Hadamards, is wider than the
/// distribution, or has out-of-range sites.
Distribution evolve_distribution(const Distribution &d, const Schedule &schedule);

/// The function computed by a classical realization. Junk noise has no
/// deterministic counterpart and is rejected like Hadamards.
CircuitFunction circuit_function(const Schedule &schedule);

double collision_probability(const Distribution &d);

/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probs);
inline double shannon_entropy(const Distribution &d) {
    return shannon_entropy(d.probs);
}

/// I(X;Y) = S(X) + S(Y) - S(XY) for X ~ input and Y = f(X).
double io_mutual_information(const CircuitFunction &f, const Distribution &input);

}  // namespace dpcirc

#endif
