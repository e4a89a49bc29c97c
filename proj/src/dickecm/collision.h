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

#ifndef DICKECM_COLLISION_H
#define DICKECM_COLLISION_H

#include <span>
#include <vector>

#include "dickecm/density.h"
#include "dickecm/subspace.h"

namespace dickecm {

/// Partial-SWAP angle gamma of U(gamma) = cos(gamma) I + i sin(gamma) SWAP.
struct CollisionAngle {
    double radians;
};

/// One Rz angle per qubit.
struct PhaseAngles {
    std::vector<double> thetas;
};

/// How an Rz angle vector acts on a fixed-excitation state.
///
/// Standard: Rz(theta) = diag(exp(-i theta/2), exp(+i theta/2)). Inside one sector this is a
/// global phase times exp(+i sum_{j excited} theta_j) per mask.
/// Conjugate: per-mask factor exp(-i sum_{j excited} theta_j).
enum class RzConvention {
    Standard,
    Conjugate,
};

const char *rz_convention_name(RzConvention c);

/// Index-level description of one partial SWAP acting on qubits (a, b) within some index space
/// (a sector basis or the full 2^n space).
struct PairAction {
    /// Indices whose masks have bit a set and bit b clear.
    std::vector<uint32_t> first;
    /// Partner of first[k], i.e. the same mask with bits a and b exchanged.
    std::vector<uint32_t> second;
    /// Indices whose masks agree on bits a and b; these pick up exp(i gamma).
    std::vector<uint32_t> same;
};

PairAction make_pair_action(const SubspaceBasis &basis, int qubit_a, int qubit_b);
PairAction make_full_pair_action(int num_qubits, int qubit_a, int qubit_b);

/// v <- U v.
void apply_pair_action(std::span<Complex> v, const PairAction &action, CollisionAngle gamma);
/// rho <- U rho U^dagger.
void conjugate_pair_action(Eigen::MatrixXcd &rho, const PairAction &action, CollisionAngle gamma);

void apply_partial_swap(PureState &state, int qubit_a, int qubit_b, CollisionAngle gamma);
PureState partial_swapped(const PureState &state, int qubit_a, int qubit_b, CollisionAngle gamma);

void apply_partial_swap_dm(DensityState &rho, int qubit_a, int qubit_b, CollisionAngle gamma);
DensityState partial_swapped_dm(const DensityState &rho, int qubit_a, int qubit_b, CollisionAngle gamma);

/// Phase exponent picked up by a mask: sign * sum of thetas over its excited qubits.
double rz_mask_phase(uint32_t mask, std::span<const double> thetas, RzConvention convention);

void apply_rz_phases(PureState &state, const PhaseAngles &angles, RzConvention convention = RzConvention::Standard);
PureState rz_rotated(
    const PureState &state, const PhaseAngles &angles, RzConvention convention = RzConvention::Standard);

/// Throws DomainError unless both qubits lie in [0, n) and differ.
void check_qubit_pair(int num_qubits, int qubit_a, int qubit_b);

}  // namespace dickecm

#endif
