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

#include "dickecm/parallel.h"

#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

using namespace dickecm;

TEST(parallel, covers_every_index_once) {
    for (int workers : {1, 3, 8}) {
        std::vector<std::atomic<int>> hits(97);
        parallel_for(hits.size(), workers, [&](size_t i) { hits[i]++; });
        for (auto &h : hits) {
            EXPECT_EQ(h.load(), 1);
        }
    }
    parallel_for(0, 4, [](size_t) { FAIL(); });
}

TEST(parallel, rethrows_lowest_failing_index) {
    for (int workers : {1, 4}) {
        try {
            parallel_for(50, workers, [](size_t i) {
                if (i == 7 || i == 30) {
                    throw std::runtime_error("index " + std::to_string(i));
                }
            });
            FAIL();
        } catch (const std::runtime_error &e) {
            EXPECT_STREQ(e.what(), "index 7");
        }
    }
}

TEST(parallel, worker_count_from_environment) {
    setenv("DICKECM_WORKERS", "3", 1);
    EXPECT_EQ(default_worker_count(), 3);
    unsetenv("DICKECM_WORKERS");
    EXPECT_GE(default_worker_count(), 1);
}
