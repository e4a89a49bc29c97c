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

#ifndef DICKECM_SUBSPACE_H
#define DICKECM_SUBSPACE_H

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace dickecm {

using Complex = std::complex<double>;

/// Largest register handled by the fixed-excitation machinery.
constexpr int kMaxQubits = 20;

/// Largest register that may be embedded into the full 2^n space.
constexpr int kMaxEmbedQubits = 14;

/// Exact binomial coefficient C(n, k) for 0 <= n <= 62. Returns 0 when k > n.
uint64_t binomial(int n, int k);

/// Dimension of the m-excitation manifold of n qubits. Throws DomainError unless 0 <= m <= n.
uint64_t subspace_dim(int n, int m);

/// Ranking of the n-bit masks with popcount m.
///
/// Canonical order is ascending integer mask value, with qubit 0 stored in the least
/// significant bit. Ranks use the combinatorial number system: the mask with set bits
/// p_1 < p_2 < ... < p_m has rank C(p_1, 1) + C(p_2, 2) + ... + C(p_m, m), which for a
/// fixed popcount coincides with ascending numeric order.
class SubspaceBasis {
   public:
    SubspaceBasis(int num_qubits, int num_excitations);

    int num_qubits() const {
        return num_qubits_;
    }
    int num_excitations() const {
        return num_excitations_;
    }
    size_t dim() const {
        return masks_.size();
    }

    /// Throws ExcitationError on wrong popcount, DomainError when mask >= 2^n.
    size_t rank(uint64_t mask) const;
    /// Throws DomainError when index >= dim.
    uint32_t unrank(size_t index) const;

    /// Unchecked variants for inner loops.
    size_t rank_unchecked(uint32_t mask) const;
    uint32_t mask_at(size_t index) const {
        return masks_[index];
    }

    const std::vector<uint32_t> &masks() const {
        return masks_;
    }

    bool operator==(const SubspaceBasis &other) const {
        return num_qubits_ == other.num_qubits_ && num_excitations_ == other.num_excitations_;
    }

   private:
    int num_qubits_;
    int num_excitations_;
    std::vector<uint32_t> masks_;
};

using BasisPtr = std::shared_ptr<const SubspaceBasis>;

BasisPtr make_basis(int num_qubits, int num_excitations);

/// Amplitudes of a pure state living in one excitation sector.
struct PureState {
    BasisPtr basis;
    std::vector<Complex> amplitudes;

    PureState() = default;
    explicit PureState(BasisPtr b) : basis(std::move(b)), amplitudes(basis->dim()) {
    }
    PureState(BasisPtr b, std::vector<Complex> amps);

    static PureState basis_state(BasisPtr b, uint32_t mask);

    int num_qubits() const {
        return basis->num_qubits();
    }
    int num_excitations() const {
        return basis->num_excitations();
    }
    double norm_squared() const;
};

/// Full 2^n amplitude vector, indexed by computational mask. Throws CapacityError above
/// kMaxEmbedQubits.
std::vector<Complex> embed_full(const PureState &state);

/// Restriction of a full-space vector to the basis sector. Amplitudes outside the sector are
/// dropped.
PureState project_full(std::span<const Complex> full, BasisPtr basis);

/// Largest modulus over the full-space amplitudes whose popcount differs from m.
double leakage_outside_sector(std::span<const Complex> full, int m);

}  // namespace dickecm

#endif
