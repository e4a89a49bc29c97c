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

#include "dickecm/subspace.h"

#include <gtest/gtest.h>

#include <bit>

#include "dickecm/errors.h"

using namespace dickecm;

namespace {

// Independent enumeration: scan every n-bit integer in ascending order, keep popcount m.
std::vector<uint32_t> enumerate_masks(int n, int m) {
    std::vector<uint32_t> out;
    for (uint32_t x = 0; x < (uint32_t{1} << n); x++) {
        if (std::popcount(x) == m) {
            out.push_back(x);
        }
    }
    return out;
}

uint64_t pascal(int n, int k) {
    std::vector<std::vector<uint64_t>> t(n + 1);
    for (int i = 0; i <= n; i++) {
        t[i].assign(i + 1, 1);
        for (int j = 1; j < i; j++) {
            t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
    }
    return t[n][k];
}

}  // namespace

TEST(subspace, rank_examples) {
    SubspaceBasis b42(4, 2);
    EXPECT_EQ(b42.rank(0b0011), 0u);
    EXPECT_EQ(b42.rank(0b1100), 5u);
    SubspaceBasis b52(5, 2);
    auto masks = enumerate_masks(5, 2);
    size_t oracle = std::find(masks.begin(), masks.end(), 0b00110u) - masks.begin();
    EXPECT_EQ(b52.rank(0b00110), oracle);
    EXPECT_EQ(b52.rank(0b00110), 2u);
}

TEST(subspace, unrank_examples) {
    SubspaceBasis b42(4, 2);
    EXPECT_EQ(b42.unrank(0), 0b0011u);
    EXPECT_EQ(b42.unrank(5), 0b1100u);
    SubspaceBasis b52(5, 2);
    EXPECT_EQ(b52.unrank(2), enumerate_masks(5, 2)[2]);
    EXPECT_EQ(b52.unrank(2), 0b00110u);
}

TEST(subspace, rank_errors) {
    SubspaceBasis b(4, 2);
    EXPECT_THROW(b.rank(0b0111), ExcitationError);
    EXPECT_THROW(b.rank(0b0001), ExcitationError);
    EXPECT_THROW(b.rank(0b10001), DomainError);
    EXPECT_THROW(b.unrank(6), DomainError);
}

TEST(subspace, dim_examples) {
    EXPECT_EQ(subspace_dim(4, 2), 6u);
    for (int n = 0; n <= 20; n++) {
        EXPECT_EQ(subspace_dim(n, 0), 1u);
    }
    EXPECT_EQ(subspace_dim(14, 5), pascal(14, 5));
    EXPECT_EQ(subspace_dim(14, 5), 2002u);
    EXPECT_EQ(subspace_dim(20, 10), pascal(20, 10));
    EXPECT_THROW(subspace_dim(3, 4), DomainError);
    EXPECT_THROW(subspace_dim(-1, 0), DomainError);
    EXPECT_THROW(subspace_dim(3, -1), DomainError);
}

TEST(subspace, exhaustive_bijection_and_order) {
    for (int n = 1; n <= 12; n++) {
        for (int m = 0; m <= n; m++) {
            SubspaceBasis b(n, m);
            auto oracle = enumerate_masks(n, m);
            ASSERT_EQ(b.dim(), oracle.size());
            ASSERT_EQ(b.dim(), subspace_dim(n, m));
            for (size_t i = 0; i < b.dim(); i++) {
                ASSERT_EQ(b.unrank(i), oracle[i]) << n << " " << m << " " << i;
                ASSERT_EQ(b.rank(b.unrank(i)), i);
            }
        }
    }
}

TEST(subspace, embed_examples) {
    auto b = make_basis(2, 1);
    PureState s(b, {1, 0});
    auto full = embed_full(s);
    ASSERT_EQ(full.size(), 4u);
    EXPECT_EQ(full[0], Complex(0));
    EXPECT_EQ(full[1], Complex(1));
    EXPECT_EQ(full[2], Complex(0));
    EXPECT_EQ(full[3], Complex(0));

    double h = 1 / std::sqrt(2.0);
    PureState t(b, {h, Complex(0, h)});
    full = embed_full(t);
    EXPECT_EQ(full[1], Complex(h));
    EXPECT_EQ(full[2], Complex(0, h));
    EXPECT_EQ(full[0], Complex(0));
    EXPECT_EQ(full[3], Complex(0));
}

TEST(subspace, embed_project_round_trip) {
    auto b = make_basis(7, 3);
    PureState s(b);
    for (size_t i = 0; i < b->dim(); i++) {
        s.amplitudes[i] = Complex(std::sin(1.0 + i), std::cos(2.0 * i));
    }
    auto full = embed_full(s);
    EXPECT_LT(leakage_outside_sector(full, 3), 1e-30);
    auto back = project_full(full, b);
    for (size_t i = 0; i < b->dim(); i++) {
        EXPECT_LT(std::abs(back.amplitudes[i] - s.amplitudes[i]), 1e-15);
    }
}

TEST(subspace, embed_capacity_guard) {
    PureState s = PureState::basis_state(make_basis(15, 1), 1);
    EXPECT_THROW(embed_full(s), CapacityError);
}

TEST(subspace, basis_state) {
    auto s = PureState::basis_state(make_basis(6, 2), 0b000011);
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
    EXPECT_EQ(s.amplitudes[0], Complex(1));
    EXPECT_THROW(PureState::basis_state(make_basis(6, 2), 0b111), ExcitationError);
}
