// Copyright 2026 The dickecm Authors
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

#ifndef DICKECM_PARALLEL_H
#define DICKECM_PARALLEL_H

#include <cstddef>
#include <functional>

namespace dickecm {

/// DICKECM_WORKERS when set to a positive integer, otherwise the hardware thread count.
int default_worker_count();

/// Runs fn(0..count-1) on up to `workers` threads (0 picks the default). The exception thrown
/// by the lowest failing index is rethrown after all workers stop.
void parallel_for(size_t count, int workers, const std::function<void(size_t)> &fn);

}  // namespace dickecm

#endif
