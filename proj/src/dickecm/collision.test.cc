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

#include "dickecm/collision.h"

#include <gtest/gtest.h>

#include <numbers>

#include "dickecm/errors.h"

using namespace dickecm;

namespace {

// Dense two-qubit partial swap on the basis |q1 q0> = index 2*q1 + q0.
Eigen::Matrix4cd dense_u(double g) {
    Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
    swap(0, 0) = swap(3, 3) = 1;
    swap(1, 2) = swap(2, 1) = 1;
    return std::cos(g) * Eigen::Matrix4cd::Identity() + Complex(0, std::sin(g)) * swap;
}

PureState random_state(int n, int m, unsigned seed) {
    auto b = make_basis(n, m);
    PureState s(b);
    double norm = 0;
    for (size_t i = 0; i < b->dim(); i++) {
        s.amplitudes[i] = Complex(std::sin(seed + 1.7 * i), std::cos(seed * 0.3 + 0.9 * i));
        norm += std::norm(s.amplitudes[i]);
    }
    for (auto &a : s.amplitudes) {
        a /= std::sqrt(norm);
    }
    return s;
}

}  // namespace

TEST(collision, identity_at_zero) {
    auto s = random_state(5, 2, 3);
    auto t = partial_swapped(s, 0, 3, CollisionAngle{0});
    for (size_t i = 0; i < s.amplitudes.size(); i++) {
        EXPECT_EQ(t.amplitudes[i], s.amplitudes[i]);
    }
}

TEST(collision, half_pi_is_i_swap) {
    auto b = make_basis(2, 1);
    auto s = PureState::basis_state(b, 0b10);
    auto t = partial_swapped(s, 0, 1, CollisionAngle{std::numbers::pi / 2});
    EXPECT_LT(std::abs(t.amplitudes[b->rank(0b01)] - Complex(0, 1)), 1e-15);
    EXPECT_LT(std::abs(t.amplitudes[b->rank(0b10)]), 1e-15);
}

TEST(collision, matches_dense_two_qubit_oracle) {
    for (double g : {0.3, 1.1, 2.9}) {
        auto b = make_basis(2, 1);
        auto s = PureState::basis_state(b, 0b01);
        auto t = partial_swapped(s, 0, 1, CollisionAngle{g});
        Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
        v(1) = 1;
        Eigen::Vector4cd w = dense_u(g) * v;
        EXPECT_LT(std::abs(t.amplitudes[b->rank(0b01)] - w(1)), 1e-15);
        EXPECT_LT(std::abs(t.amplitudes[b->rank(0b10)] - w(2)), 1e-15);
        EXPECT_NEAR(t.norm_squared(), 1.0, 1e-15);
    }
    auto b = make_basis(2, 1);
    auto t = partial_swapped(PureState::basis_state(b, 0b01), 0, 1, CollisionAngle{0.3});
    EXPECT_LT(std::abs(t.amplitudes[b->rank(0b01)] - std::cos(0.3)), 1e-15);
    EXPECT_LT(std::abs(t.amplitudes[b->rank(0b10)] - Complex(0, std::sin(0.3))), 1e-15);
}

TEST(collision, equal_bits_pick_up_phase) {
    auto b = make_basis(3, 1);
    auto s = PureState::basis_state(b, 0b100);
    auto t = partial_swapped(s, 0, 1, CollisionAngle{0.4});
    EXPECT_LT(std::abs(t.amplitudes[b->rank(0b100)] - std::polar(1.0, 0.4)), 1e-15);
}

TEST(collision, errors) {
    auto s = random_state(4, 2, 1);
    EXPECT_THROW(apply_partial_swap(s, 1, 1, CollisionAngle{0.1}), DomainError);
    EXPECT_THROW(apply_partial_swap(s, 1, 4, CollisionAngle{0.1}), DomainError);
    EXPECT_THROW(apply_rz_phases(s, PhaseAngles{{0, 0, 0}}), DomainError);
}

TEST(collision, unitarity_composition_symmetry) {
    auto s = random_state(7, 3, 5);
    auto a = partial_swapped(s, 2, 5, CollisionAngle{0.37});
    EXPECT_NEAR(a.norm_squared(), 1.0, 1e-12);
    auto ab = partial_swapped(a, 2, 5, CollisionAngle{1.21});
    auto direct = partial_swapped(s, 2, 5, CollisionAngle{0.37 + 1.21});
    auto sym = partial_swapped(s, 5, 2, CollisionAngle{0.37});
    for (size_t i = 0; i < s.amplitudes.size(); i++) {
        EXPECT_LT(std::abs(ab.amplitudes[i] - direct.amplitudes[i]), 1e-12);
        EXPECT_EQ(sym.amplitudes[i], a.amplitudes[i]);
    }
}

TEST(collision, full_space_action_conserves_excitations) {
    auto s = random_state(6, 2, 2);
    auto full = embed_full(s);
    auto action = make_full_pair_action(6, 1, 4);
    apply_pair_action(full, action, CollisionAngle{0.9});
    EXPECT_LT(leakage_outside_sector(full, 2), 1e-14);
    auto sub = partial_swapped(s, 1, 4, CollisionAngle{0.9});
    auto proj = project_full(full, s.basis);
    for (size_t i = 0; i < s.amplitudes.size(); i++) {
        EXPECT_LT(std::abs(proj.amplitudes[i] - sub.amplitudes[i]), 1e-15);
    }
}

TEST(collision, density_conjugation) {
    auto s = random_state(4, 2, 7);
    for (auto rep : {DensityRepresentation::SubspaceBlock, DensityRepresentation::SectorBlocks,
                     DensityRepresentation::FullSpace}) {
        auto rho = DensityState::from_pure(s, rep);
        auto same = partial_swapped_dm(rho, 0, 2, CollisionAngle{0});
        EXPECT_LT((same.to_full_matrix() - rho.to_full_matrix()).cwiseAbs().maxCoeff(), 1e-15);

        auto moved = partial_swapped_dm(rho, 0, 2, CollisionAngle{0.8});
        auto oracle = DensityState::from_pure(partial_swapped(s, 0, 2, CollisionAngle{0.8}), rep);
        EXPECT_LT((moved.to_full_matrix() - oracle.to_full_matrix()).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_NEAR(moved.trace(), 1.0, 1e-14);
        EXPECT_LT(moved.hermiticity_error(), 1e-14);
    }
}

TEST(collision, density_half_pi_moves_population) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(1, 1) = 1;
    Eigen::Matrix4cd u = dense_u(std::numbers::pi / 2);
    Eigen::Matrix4cd oracle = u * rho * u.adjoint();
    auto dm = DensityState::from_pure(PureState::basis_state(make_basis(2, 1), 0b01), DensityRepresentation::FullSpace);
    apply_partial_swap_dm(dm, 0, 1, CollisionAngle{std::numbers::pi / 2});
    EXPECT_LT((dm.block(0) - Eigen::MatrixXcd(oracle)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(dm.block(0)(2, 2).real(), 1.0, 1e-15);
}

TEST(collision, rz_examples) {
    auto s = random_state(4, 2, 9);
    auto same = rz_rotated(s, PhaseAngles{{0, 0, 0, 0}});
    for (size_t i = 0; i < s.amplitudes.size(); i++) {
        EXPECT_EQ(same.amplitudes[i], s.amplitudes[i]);
    }

    // One excitation on qubit 1, theta_1 = pi: sign flip.
    auto b = make_basis(3, 1);
    auto e = PureState::basis_state(b, 0b010);
    for (auto conv : {RzConvention::Standard, RzConvention::Conjugate}) {
        auto f = rz_rotated(e, PhaseAngles{{0, std::numbers::pi, 0}}, conv);
        EXPECT_LT(std::abs(f.amplitudes[b->rank(0b010)] + 1.0), 1e-15);
    }

    // W state with theta = [0.5, 1.0, 1.5]: diagonal oracle exp(-i theta_j) under the conjugate sign.
    double w = 1 / std::sqrt(3.0);
    PureState wst(b, {w, w, w});
    std::vector<double> th = {0.5, 1.0, 1.5};
    auto conj = rz_rotated(wst, PhaseAngles{th}, RzConvention::Conjugate);
    auto stdc = rz_rotated(wst, PhaseAngles{th}, RzConvention::Standard);
    for (int j = 0; j < 3; j++) {
        size_t k = b->rank(uint32_t{1} << j);
        EXPECT_LT(std::abs(conj.amplitudes[k] - w * std::polar(1.0, -th[j])), 1e-15);
        EXPECT_LT(std::abs(stdc.amplitudes[k] - w * std::polar(1.0, th[j])), 1e-15);
        EXPECT_NEAR(std::abs(conj.amplitudes[k]), w, 1e-15);
    }
}

TEST(collision, rz_standard_matches_two_by_two_rotation) {
    // diag(e^{-i t/2}, e^{i t/2}) per qubit equals exp(i sum_excited t) up to a global phase.
    auto s = random_state(4, 2, 4);
    std::vector<double> th = {0.3, -1.2, 2.0, 0.7};
    auto full = embed_full(s);
    for (uint32_t x = 0; x < 16; x++) {
        double phase = 0;
        for (int j = 0; j < 4; j++) {
            phase += ((x >> j) & 1) ? th[j] / 2 : -th[j] / 2;
        }
        full[x] *= std::polar(1.0, phase);
    }
    auto rot = rz_rotated(s, PhaseAngles{th}, RzConvention::Standard);
    double global = 0;
    for (double t : th) {
        global -= t / 2;
    }
    auto proj = project_full(full, s.basis);
    for (size_t i = 0; i < s.amplitudes.size(); i++) {
        EXPECT_LT(std::abs(proj.amplitudes[i] - std::polar(1.0, global) * rot.amplitudes[i]), 1e-14);
    }
}
