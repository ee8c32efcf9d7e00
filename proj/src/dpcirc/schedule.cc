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

#include "dpcirc/schedule.h"

#include <cmath>

namespace dpcirc {

const char *initial_state_name(InitialState s) {
    switch (s) {
        case InitialState::kMaximallyMixed:
            return "maximally_mixed";
        case InitialState::kReferencedClassical:
            return "referenced_classical";
        case InitialState::kReferencedBell:
            return "referenced_bell";
    }
    return "unknown";
}

InitialState parse_initial_state(const std::string &name) {
    if (name == "maximally_mixed") {
        return InitialState::kMaximallyMixed;
    }
    if (name == "referenced_classical") {
        return InitialState::kReferencedClassical;
    }
    if (name == "referenced_bell") {
        return InitialState::kReferencedBell;
    }
    throw std::invalid_argument("unknown initial state '" + name + "'");
}

void CircuitConfig::validate() const {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("n must be even and at least 2 (got " + std::to_string(n) + ")");
    }
    auto check_probability = [](double v, const char *name) {
        if (!(v >= 0 && v <= 1) || std::isnan(v)) {
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
        }
    };
    check_probability(p, "p");
    check_probability(q, "q");
    check_probability(h, "h");
    if (depth < 1) {
        throw std::invalid_argument("depth must be at least 1");
    }
}

ScheduleStream::ScheduleStream(const CircuitConfig &config, uint64_t trajectory_seed)
    : config_(config),
      gates_(stream_seed(trajectory_seed, StreamRole::kGates)),
      hadamards_(stream_seed(trajectory_seed, StreamRole::kHadamards)),
      junk_(stream_seed(trajectory_seed, StreamRole::kJunk)),
      erasures_(stream_seed(trajectory_seed, StreamRole::kErasures)) {
    config_.validate();
}

namespace {

void sample_sites(Rng &rng, size_t n, double probability, std::vector<uint32_t> &out) {
    out.clear();
    if (probability <= 0) {
        return;
    }
    for (size_t i = 0; i < n; i++) {
        if (rng.bernoulli(probability)) {
            out.push_back(static_cast<uint32_t>(i));
        }
    }
}

}  // namespace

void ScheduleStream::next(Layer &out) {
    const size_t n = config_.n;
    out.parity = static_cast<int>(t_ % 2);
    out.gates.resize(n / 2);
    for (auto &g : out.gates) {
        g = sample_gate_index(gates_);
    }
    sample_sites(hadamards_, n, config_.q, out.hadamards);
    sample_sites(junk_, n, config_.h, out.junk);
    sample_sites(erasures_, n, config_.p, out.erasures);
    t_++;
}

Schedule materialize_schedule(const CircuitConfig &config, uint64_t trajectory_seed) {
    ScheduleStream stream(config, trajectory_seed);
    Schedule s;
    s.n = config.n;
    s.layers.resize(config.depth);
    for (auto &layer : s.layers) {
        stream.next(layer);
    }
    return s;
}

}  // namespace dpcirc
