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

#ifndef DPCIRC_VERIFY_H
#define DPCIRC_VERIFY_H

#include <cstdint>
#include <string>
#include <vector>

namespace dpcirc {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    uint64_t seed = 20260101;
    /// Random N = 4 schedules compared against the density-matrix oracle.
    size_t oracle_schedules = 256;
    /// Random classical realizations for the I(X;Y) = S(Y) check.
    size_t s2_realizations = 200;
    size_t absorbing_trajectories = 1000;
    /// Samples on each side of the collision-probability comparison.
    size_t qbar_samples = 100000;
    int threads = 0;
};

// Each check is self-contained and never throws; failures land in `detail`.
CheckResult check_gate_average_identity();
CheckResult check_gate_set_completeness();
CheckResult check_oracle_equivalence(const VerifyOptions &options);
CheckResult check_s2_equivalence(const VerifyOptions &options);
CheckResult check_absorbing_state(const VerifyOptions &options);
CheckResult check_qbar_consistency(const VerifyOptions &options);

/// All of the above, in that order.
std::vector<CheckResult> run_verify(const VerifyOptions &options);

}  // namespace dpcirc

#endif
