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

#ifndef DPCIRC_SCHEDULE_H
#define DPCIRC_SCHEDULE_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpcirc/gateset.h"
#include "dpcirc/rng.h"

namespace dpcirc {

enum class InitialState {
    kMaximallyMixed,
    kReferencedClassical,
    kReferencedBell,
};

const char *initial_state_name(InitialState s);
/// Accepts "maximally_mixed", "referenced_classical", "referenced_bell".
InitialState parse_initial_state(const std::string &name);

/// One circuit family. Channels act on the n system sites, which form a ring
/// (periodic boundaries). Referenced initial states add n reference qubits that
/// are never touched by the circuit.
struct CircuitConfig {
    size_t n = 0;
    double p = 0;  // erasure probability per site per layer
    double q = 0;  // Hadamard probability per site per layer
    double h = 0;  // junk-noise probability per site per layer
    size_t depth = 1;
    InitialState initial_state = InitialState::kMaximallyMixed;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    size_t total_qubits() const {
        return initial_state == InitialState::kMaximallyMixed ? n : 2 * n;
    }
    /// The Z-sector fast path applies: no Hadamards and a Z-only initial state.
    bool classical_sector() const {
        return q == 0 && initial_state != InitialState::kReferencedBell;
    }
};

/// Everything that happens in one time step, in application order:
/// gates, then Hadamards, then junk noise, then erasures.
struct Layer {
    int parity = 0;
    /// gates[k] indexes enumerate_gates() and acts on layer_pair(n, parity, k).
    std::vector<uint8_t> gates;
    std::vector<uint32_t> hadamards;
    std::vector<uint32_t> junk;
    std::vector<uint32_t> erasures;

    bool operator==(const Layer &) const = default;
};

struct Schedule {
    size_t n = 0;
    std::vector<Layer> layers;

    bool operator==(const Schedule &) const = default;
};

/// Sites of the k-th brickwork pair of a layer on a ring of n sites: layer
/// parity 0 pairs (0,1),(2,3),..., parity 1 pairs (1,2),...,(n-1,0).
inline std::pair<size_t, size_t> layer_pair(size_t n, int parity, size_t k) {
    size_t first = 2 * k + static_cast<size_t>(parity);
    return {first, (first + 1) % n};
}

/// Produces the layers of one trajectory on demand. Each schedule role draws
/// from its own stream seeded by stream_seed(trajectory_seed, role); site-wise
/// draws happen in increasing site order and are skipped entirely for a role
/// whose probability is zero.
class ScheduleStream {
   public:
    ScheduleStream(const CircuitConfig &config, uint64_t trajectory_seed);

    /// Fills `out` with the next layer (t = 0, 1, ...), reusing its storage.
    void next(Layer &out);

   private:
    CircuitConfig config_;
    Rng gates_;
    Rng hadamards_;
    Rng junk_;
    Rng erasures_;
    size_t t_ = 0;
};

Schedule materialize_schedule(const CircuitConfig &config, uint64_t trajectory_seed);

/// Applies one layer to any state type exposing the channel methods. The
/// Hadamard step is only compiled for states that support it; a layer with
/// Hadamards on a state without them is a logic error.
template <class State>
void apply_layer(State &state, const Layer &layer, size_t ring) {
    auto gates = enumerate_gates();
    for (size_t k = 0; k < layer.gates.size(); k++) {
        auto [a, b] = layer_pair(ring, layer.parity, k);
        state.apply_gate(gates[layer.gates[k]], a, b);
    }
    if constexpr (requires { state.apply_hadamard(size_t{0}); }) {
        for (uint32_t q : layer.hadamards) {
            state.apply_hadamard(q);
        }
    } else {
        if (!layer.hadamards.empty()) {
            throw std::logic_error("apply_layer: Hadamards on a Z-sector-only state");
        }
    }
    for (uint32_t q : layer.junk) {
        state.apply_junk_noise(q);
    }
    for (uint32_t q : layer.erasures) {
        state.apply_erasure(q);
    }
}

}  // namespace dpcirc

#endif
