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

#include <bit>
#include <cmath>
#include <string>

#include "dickecm/errors.h"

namespace dickecm {

const char *rz_convention_name(RzConvention c) {
    return c == RzConvention::Standard ? "standard" : "conjugate";
}

void check_qubit_pair(int num_qubits, int qubit_a, int qubit_b) {
    if (qubit_a == qubit_b) {
        throw DomainError("partial swap needs two distinct qubits, got " + std::to_string(qubit_a) + " twice");
    }
    if (qubit_a < 0 || qubit_b < 0 || qubit_a >= num_qubits || qubit_b >= num_qubits) {
        throw DomainError(
            "qubit pair (" + std::to_string(qubit_a) + ", " + std::to_string(qubit_b) + ") outside register of " +
            std::to_string(num_qubits));
    }
}

PairAction make_pair_action(const SubspaceBasis &basis, int qubit_a, int qubit_b) {
    check_qubit_pair(basis.num_qubits(), qubit_a, qubit_b);
    uint32_t bit_a = uint32_t{1} << qubit_a;
    uint32_t bit_b = uint32_t{1} << qubit_b;
    PairAction action;
    const auto &masks = basis.masks();
    for (size_t k = 0; k < masks.size(); k++) {
        uint32_t x = masks[k];
        bool in_a = x & bit_a;
        bool in_b = x & bit_b;
        if (in_a == in_b) {
            action.same.push_back(k);
        } else if (in_a) {
            action.first.push_back(k);
            action.second.push_back(basis.rank_unchecked(x ^ bit_a ^ bit_b));
        }
    }
    return action;
}

PairAction make_full_pair_action(int num_qubits, int qubit_a, int qubit_b) {
    check_qubit_pair(num_qubits, qubit_a, qubit_b);
    uint32_t bit_a = uint32_t{1} << qubit_a;
    uint32_t bit_b = uint32_t{1} << qubit_b;
    PairAction action;
    for (uint32_t x = 0; x < (uint32_t{1} << num_qubits); x++) {
        bool in_a = x & bit_a;
        bool in_b = x & bit_b;
        if (in_a == in_b) {
            action.same.push_back(x);
        } else if (in_a) {
            action.first.push_back(x);
            action.second.push_back(x ^ bit_a ^ bit_b);
        }
    }
    return action;
}

namespace {

// Applies [[c, i s], [i s, c]] to (v[p], v[q]) for each pair and phase (c + i s) to `same`,
// over a strided vector. Passing s -> -s yields the complex conjugate action.
inline void mix_strided(Complex *v, size_t stride, const PairAction &action, double c, double s) {
    const size_t n_pairs = action.first.size();
    for (size_t k = 0; k < n_pairs; k++) {
        Complex &x = v[action.first[k] * stride];
        Complex &y = v[action.second[k] * stride];
        double xr = x.real(), xi = x.imag();
        double yr = y.real(), yi = y.imag();
        x = Complex(c * xr - s * yi, c * xi + s * yr);
        y = Complex(c * yr - s * xi, c * yi + s * xr);
    }
    for (uint32_t k : action.same) {
        Complex &x = v[k * stride];
        double xr = x.real(), xi = x.imag();
        x = Complex(c * xr - s * xi, c * xi + s * xr);
    }
}

// Column operation for rho U^dagger: columns mix with conj(U) coefficients.
inline void mix_columns(Eigen::MatrixXcd &rho, const PairAction &action, double c, double s) {
    const Eigen::Index rows = rho.rows();
    Complex *base = rho.data();
    for (size_t k = 0; k < action.first.size(); k++) {
        Complex *x = base + action.first[k] * rows;
        Complex *y = base + action.second[k] * rows;
        for (Eigen::Index r = 0; r < rows; r++) {
            double xr = x[r].real(), xi = x[r].imag();
            double yr = y[r].real(), yi = y[r].imag();
            x[r] = Complex(c * xr + s * yi, c * xi - s * yr);
            y[r] = Complex(c * yr + s * xi, c * yi - s * xr);
        }
    }
    for (uint32_t k : action.same) {
        Complex *x = base + k * rows;
        for (Eigen::Index r = 0; r < rows; r++) {
            double xr = x[r].real(), xi = x[r].imag();
            x[r] = Complex(c * xr + s * xi, c * xi - s * xr);
        }
    }
}

}  // namespace

void apply_pair_action(std::span<Complex> v, const PairAction &action, CollisionAngle gamma) {
    mix_strided(v.data(), 1, action, std::cos(gamma.radians), std::sin(gamma.radians));
}

void conjugate_pair_action(Eigen::MatrixXcd &rho, const PairAction &action, CollisionAngle gamma) {
    double c = std::cos(gamma.radians);
    double s = std::sin(gamma.radians);
    const Eigen::Index rows = rho.rows();
    for (Eigen::Index col = 0; col < rho.cols(); col++) {
        mix_strided(rho.data() + col * rows, 1, action, c, s);
    }
    mix_columns(rho, action, c, s);
}

void apply_partial_swap(PureState &state, int qubit_a, int qubit_b, CollisionAngle gamma) {
    auto action = make_pair_action(*state.basis, qubit_a, qubit_b);
    apply_pair_action(state.amplitudes, action, gamma);
}

PureState partial_swapped(const PureState &state, int qubit_a, int qubit_b, CollisionAngle gamma) {
    PureState out = state;
    apply_partial_swap(out, qubit_a, qubit_b, gamma);
    return out;
}

void apply_partial_swap_dm(DensityState &rho, int qubit_a, int qubit_b, CollisionAngle gamma) {
    check_qubit_pair(rho.num_qubits(), qubit_a, qubit_b);
    for (size_t i = 0; i < rho.num_blocks(); i++) {
        if (!rho.block(i).size()) {
            continue;
        }
        const auto &basis = rho.block_basis(i);
        auto action = basis ? make_pair_action(*basis, qubit_a, qubit_b)
                            : make_full_pair_action(rho.num_qubits(), qubit_a, qubit_b);
        conjugate_pair_action(rho.block(i), action, gamma);
    }
}

DensityState partial_swapped_dm(const DensityState &rho, int qubit_a, int qubit_b, CollisionAngle gamma) {
    DensityState out = rho;
    apply_partial_swap_dm(out, qubit_a, qubit_b, gamma);
    return out;
}

double rz_mask_phase(uint32_t mask, std::span<const double> thetas, RzConvention convention) {
    double phase = 0;
    while (mask) {
        phase += thetas[std::countr_zero(mask)];
        mask &= mask - 1;
    }
    return convention == RzConvention::Standard ? phase : -phase;
}

void apply_rz_phases(PureState &state, const PhaseAngles &angles, RzConvention convention) {
    if (angles.thetas.size() != static_cast<size_t>(state.num_qubits())) {
        throw DomainError(
            "expected " + std::to_string(state.num_qubits()) + " Rz angles, got " +
            std::to_string(angles.thetas.size()));
    }
    const auto &masks = state.basis->masks();
    for (size_t k = 0; k < masks.size(); k++) {
        state.amplitudes[k] *= std::polar(1.0, rz_mask_phase(masks[k], angles.thetas, convention));
    }
}

PureState rz_rotated(const PureState &state, const PhaseAngles &angles, RzConvention convention) {
    PureState out = state;
    apply_rz_phases(out, angles, convention);
    return out;
}

}  // namespace dickecm
