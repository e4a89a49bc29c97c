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

#include "dickecm/full_space_oracle.h"

#include <gtest/gtest.h>

#include "dickecm/errors.h"

using namespace dickecm;

TEST(full_space_oracle, zero_angles_return_initial_state) {
    auto spec = ProtocolSpec::make(5, 2);
    auto out = full_space_oracle(spec, 0, 0, 4);
    auto init = embed_full(initial_state(spec));
    for (size_t i = 0; i < out.size(); i++) {
        EXPECT_LT(std::abs(out[i] - init[i]), 1e-15);
    }
}

TEST(full_space_oracle, dense_gate_is_unitary) {
    auto u = dense_partial_swap(3, 0, 2, 0.7);
    EXPECT_LT((u * u.adjoint() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
    // |001> -> cos|001> + i sin|100>
    EXPECT_LT(std::abs(u(1, 1) - std::cos(0.7)), 1e-15);
    EXPECT_LT(std::abs(u(4, 1) - Complex(0, std::sin(0.7))), 1e-15);
    EXPECT_LT(std::abs(u(2, 2) - std::polar(1.0, 0.7)), 1e-15);
}

TEST(full_space_oracle, conserves_excitations) {
    auto spec = ProtocolSpec::make(7, 3);
    auto out = full_space_oracle(spec, 1.3, 0.6, 4);
    EXPECT_LT(leakage_outside_sector(out, 3), 1e-14);
}

TEST(full_space_oracle, capacity_guard) {
    EXPECT_THROW(full_space_oracle(ProtocolSpec::make(9, 2), 0.1, 0.1, 1), CapacityError);
    EXPECT_THROW(dense_partial_swap(9, 0, 1, 0.1), CapacityError);
}
