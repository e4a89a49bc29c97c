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

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "dickecm/errors.h"

namespace dickecm {

namespace {

constexpr int kPascalRows = 63;

struct PascalTable {
    std::array<std::array<uint64_t, kPascalRows>, kPascalRows> c{};
    constexpr PascalTable() {
        for (int n = 0; n < kPascalRows; n++) {
            c[n][0] = 1;
            for (int k = 1; k <= n; k++) {
                c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
            }
        }
    }
};

constexpr PascalTable kPascal{};

}  // namespace

uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || n >= kPascalRows) {
        throw DomainError("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") out of range");
    }
    if (k > n) {
        return 0;
    }
    return kPascal.c[n][k];
}

uint64_t subspace_dim(int n, int m) {
    if (n < 0 || m < 0 || m > n) {
        throw DomainError("subspace_dim requires 0 <= m <= n, got n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
    return binomial(n, m);
}

SubspaceBasis::SubspaceBasis(int num_qubits, int num_excitations)
    : num_qubits_(num_qubits), num_excitations_(num_excitations) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw DomainError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    size_t dim = subspace_dim(num_qubits, num_excitations);
    masks_.reserve(dim);
    for (size_t k = 0; k < dim; k++) {
        // Greedy unranking from the highest bit down.
        uint64_t rest = k;
        uint32_t mask = 0;
        int p = num_qubits - 1;
        for (int i = num_excitations; i >= 1; i--) {
            while (binomial(p, i) > rest) {
                p--;
            }
            mask |= uint32_t{1} << p;
            rest -= binomial(p, i);
            p--;
        }
        masks_.push_back(mask);
    }
}

size_t SubspaceBasis::rank_unchecked(uint32_t mask) const {
    size_t r = 0;
    int i = 1;
    while (mask) {
        int p = std::countr_zero(mask);
        r += kPascal.c[p][i];
        i++;
        mask &= mask - 1;
    }
    return r;
}

size_t SubspaceBasis::rank(uint64_t mask) const {
    if (mask >> num_qubits_) {
        throw DomainError("mask " + std::to_string(mask) + " has bits beyond qubit " + std::to_string(num_qubits_ - 1));
    }
    if (std::popcount(mask) != num_excitations_) {
        throw ExcitationError(
            "mask " + std::to_string(mask) + " has popcount " + std::to_string(std::popcount(mask)) + ", basis needs " +
            std::to_string(num_excitations_));
    }
    return rank_unchecked(static_cast<uint32_t>(mask));
}

uint32_t SubspaceBasis::unrank(size_t index) const {
    if (index >= masks_.size()) {
        throw DomainError("index " + std::to_string(index) + " outside [0, " + std::to_string(masks_.size()) + ")");
    }
    return masks_[index];
}

BasisPtr make_basis(int num_qubits, int num_excitations) {
    return std::make_shared<const SubspaceBasis>(num_qubits, num_excitations);
}

PureState::PureState(BasisPtr b, std::vector<Complex> amps) : basis(std::move(b)), amplitudes(std::move(amps)) {
    if (amplitudes.size() != basis->dim()) {
        throw DomainError("amplitude vector length does not match basis dimension");
    }
}

PureState PureState::basis_state(BasisPtr b, uint32_t mask) {
    PureState s(std::move(b));
    s.amplitudes[s.basis->rank(mask)] = 1.0;
    return s;
}

double PureState::norm_squared() const {
    double t = 0;
    for (const auto &a : amplitudes) {
        t += std::norm(a);
    }
    return t;
}

std::vector<Complex> embed_full(const PureState &state) {
    int n = state.num_qubits();
    if (n > kMaxEmbedQubits) {
        throw CapacityError("embed_full supports at most " + std::to_string(kMaxEmbedQubits) + " qubits");
    }
    std::vector<Complex> full(size_t{1} << n);
    const auto &masks = state.basis->masks();
    for (size_t k = 0; k < masks.size(); k++) {
        full[masks[k]] = state.amplitudes[k];
    }
    return full;
}

PureState project_full(std::span<const Complex> full, BasisPtr basis) {
    if (full.size() != (size_t{1} << basis->num_qubits())) {
        throw DomainError("full-space vector length does not match 2^n");
    }
    PureState s(basis);
    const auto &masks = basis->masks();
    for (size_t k = 0; k < masks.size(); k++) {
        s.amplitudes[k] = full[masks[k]];
    }
    return s;
}

double leakage_outside_sector(std::span<const Complex> full, int m) {
    double worst = 0;
    for (size_t x = 0; x < full.size(); x++) {
        if (std::popcount(x) != m) {
            worst = std::max(worst, std::abs(full[x]));
        }
    }
    return worst;
}

}  // namespace dickecm
