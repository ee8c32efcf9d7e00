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

#ifndef DPCIRC_PARALLEL_H
#define DPCIRC_PARALLEL_H

#include <cstddef>
#include <functional>

namespace dpcirc {

/// Worker count used when a caller passes 0.
int default_thread_count();

/// Calls body(i) for every i in [0, count) using up to `threads` workers
/// (0 means default_thread_count()). Workers pull indices from a shared
/// counter, so callers must write results into index-addressed storage and
/// reduce afterwards. The first exception thrown by any body is rethrown.
void parallel_for(size_t count, int threads, const std::function<void(size_t)> &body);

}  // namespace dpcirc

#endif
