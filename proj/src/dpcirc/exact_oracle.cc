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

#include "dpcirc/exact_oracle.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace dpcirc {

namespace {

void check_width(size_t n) {
    if (n > kMaxOracleBits) {
        throw std::invalid_argument("oracle limited to " + std::to_string(kMaxOracleBits) + " bits");
    }
}

void check_classical_schedule(const Schedule &s, size_t n, bool allow_junk) {
    if (s.n > n) {
        throw std::invalid_argument("schedule ring wider than the distribution");
    }
    for (const Layer &layer : s.layers) {
        if (!layer.hadamards.empty()) {
            throw std::invalid_argument("classical oracle cannot apply Hadamards");
        }
        if (!allow_junk && !layer.junk.empty()) {
            throw std::invalid_argument("junk noise has no deterministic circuit function");
        }
        if (2 * layer.gates.size() > s.n) {
            throw std::invalid_argument("layer has more gates than pairs");
        }
        for (const auto *sites : {&layer.junk, &layer.erasures}) {
            for (uint32_t q : *sites) {
                if (q >= s.n) {
                    throw std::invalid_argument("schedule site " + std::to_string(q) + " out of range");
                }
            }
        }
    }
}

uint32_t apply_gate_to_bits(uint32_t x, const AffineGate &g, size_t a, size_t b) {
    uint8_t in = static_cast<uint8_t>(((x >> a) & 1) | (((x >> b) & 1) << 1));
    uint8_t out = g.apply(in);
    x &= ~((uint32_t{1} << a) | (uint32_t{1} << b));
    return x | (uint32_t{out & 1u} << a) | (uint32_t{(out >> 1) & 1u} << b);
}

}  // namespace

Distribution Distribution::uniform(size_t n_bits) {
    check_width(n_bits);
    size_t size = size_t{1} << n_bits;
    return Distribution{n_bits, std::vector<double>(size, 1.0 / static_cast<double>(size))};
}

Distribution Distribution::point(size_t n_bits, uint32_t x) {
    check_width(n_bits);
    Distribution d{n_bits, std::vector<double>(size_t{1} << n_bits, 0.0)};
    if (x >= d.probs.size()) {
        throw std::invalid_argument("point outside the distribution");
    }
    d.probs[x] = 1;
    return d;
}

double Distribution::total() const {
    double t = 0;
    for (double v : probs) {
        t += v;
    }
    return t;
}

bool CircuitFunction::is_bijection() const {
    std::vector<char> seen(map.size(), 0);
    for (uint32_t y : map) {
        if (y >= seen.size() || seen[y]) {
            return false;
        }
        seen[y] = 1;
    }
    return true;
}

Distribution evolve_distribution(const Distribution &d, const Schedule &schedule) {
    check_width(d.n_bits);
    check_classical_schedule(schedule, d.n_bits, true);
    auto gates = enumerate_gates();
    Distribution cur = d;
    std::vector<double> next(cur.probs.size());
    for (const Layer &layer : schedule.layers) {
        for (size_t k = 0; k < layer.gates.size(); k++) {
            auto [a, b] = layer_pair(schedule.n, layer.parity, k);
            const AffineGate &g = gates[layer.gates[k]];
            std::fill(next.begin(), next.end(), 0.0);
            for (uint32_t x = 0; x < cur.probs.size(); x++) {
                next[apply_gate_to_bits(x, g, a, b)] += cur.probs[x];
            }
            cur.probs.swap(next);
        }
        for (uint32_t q : layer.junk) {
            uint32_t bit = uint32_t{1} << q;
            for (uint32_t x = 0; x < cur.probs.size(); x++) {
                if (!(x & bit)) {
                    double avg = 0.5 * (cur.probs[x] + cur.probs[x | bit]);
                    cur.probs[x] = avg;
                    cur.probs[x | bit] = avg;
                }
            }
        }
        for (uint32_t q : layer.erasures) {
            uint32_t bit = uint32_t{1} << q;
            for (uint32_t x = 0; x < cur.probs.size(); x++) {
                if (x & bit) {
                    cur.probs[x & ~bit] += cur.probs[x];
                    cur.probs[x] = 0;
                }
            }
        }
    }
    return cur;
}

CircuitFunction circuit_function(const Schedule &schedule) {
    check_width(schedule.n);
    check_classical_schedule(schedule, schedule.n, false);
    auto gates = enumerate_gates();
    CircuitFunction f{schedule.n, std::vector<uint32_t>(size_t{1} << schedule.n)};
    for (uint32_t x = 0; x < f.map.size(); x++) {
        uint32_t y = x;
        for (const Layer &layer : schedule.layers) {
            for (size_t k = 0; k < layer.gates.size(); k++) {
                auto [a, b] = layer_pair(schedule.n, layer.parity, k);
                y = apply_gate_to_bits(y, gates[layer.gates[k]], a, b);
            }
            for (uint32_t q : layer.erasures) {
                y &= ~(uint32_t{1} << q);
            }
        }
        f.map[x] = y;
    }
    return f;
}

double collision_probability(const Distribution &d) {
    double q = 0;
    for (double v : d.probs) {
        q += v * v;
    }
    return q;
}

double shannon_entropy(std::span<const double> probs) {
    double s = 0;
    for (double v : probs) {
        if (v > 0) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

double io_mutual_information(const CircuitFunction &f, const Distribution &input) {
    if (input.probs.size() != f.map.size()) {
        throw std::invalid_argument("io_mutual_information: input and function widths differ");
    }
    std::vector<double> py(f.map.size(), 0.0);
    std::map<uint64_t, double> joint;
    for (size_t x = 0; x < f.map.size(); x++) {
        py[f.map[x]] += input.probs[x];
        joint[(uint64_t{x} << f.n_bits) | f.map[x]] += input.probs[x];
    }
    std::vector<double> pxy;
    pxy.reserve(joint.size());
    for (const auto &[key, v] : joint) {
        pxy.push_back(v);
    }
    double sx = shannon_entropy(input.probs);
    double sxy = shannon_entropy(pxy);
    return sx + shannon_entropy(py) - sxy;
}

}  // namespace dpcirc
