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

#ifndef DPCIRC_RNG_H
#define DPCIRC_RNG_H

#include <cstdint>
#include <random>

namespace dpcirc {

/// SplitMix64 finalizer.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent random streams used by one trajectory. A stream is never shared
/// between roles, so e.g. changing q does not perturb the erasure locations.
enum class StreamRole : uint64_t {
    kGates = 1,
    kHadamards = 2,
    kJunk = 3,
    kErasures = 4,
    kLattice = 5,
    kInitial = 6,
    kBootstrap = 7,
};

/// Seed of trajectory `index` under `master`: splitmix64(master ^ splitmix64(index)).
constexpr uint64_t trajectory_seed(uint64_t master, uint64_t index) {
    return splitmix64(master ^ splitmix64(index));
}

/// Seed of one role's stream within a trajectory: splitmix64(trajectory + role).
constexpr uint64_t stream_seed(uint64_t trajectory, StreamRole role) {
    return splitmix64(trajectory + static_cast<uint64_t>(role));
}

constexpr uint64_t derive_seed(uint64_t master, uint64_t index, StreamRole role) {
    return stream_seed(trajectory_seed(master, index), role);
}

/// mt19937_64 with platform-independent sampling helpers (the std distributions
/// are implementation-defined, which would break cross-platform reproducibility).
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    uint64_t next() {
        return engine_();
    }

    /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift with rejection).
    uint32_t below(uint32_t n) {
        uint64_t m = (next() >> 32) * n;
        uint32_t low = static_cast<uint32_t>(m);
        if (low < n) {
            uint32_t threshold = static_cast<uint32_t>(-n) % n;
            while (low < threshold) {
                m = (next() >> 32) * n;
                low = static_cast<uint32_t>(m);
            }
        }
        return static_cast<uint32_t>(m >> 32);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace dpcirc

#endif
