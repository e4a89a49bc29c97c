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

#ifndef DICKECM_DENSITY_H
#define DICKECM_DENSITY_H

#include <Eigen/Dense>
#include <vector>

#include "dickecm/subspace.h"

namespace dickecm {

/// Largest register for which density matrices beyond a single sector are built.
constexpr int kMaxDensityQubits = 12;

enum class DensityRepresentation {
    /// One dim x dim block over the m-excitation sector.
    SubspaceBlock,
    /// Block-diagonal over every excitation sector k = 0..n (no inter-sector coherences).
    SectorBlocks,
    /// Dense 2^n x 2^n matrix indexed by computational mask.
    FullSpace,
};

const char *representation_name(DensityRepresentation rep);

/// Mixed state of n qubits whose reference sector is m (the sector of the target state).
class DensityState {
   public:
    static DensityState from_pure(const PureState &state, DensityRepresentation rep);

    DensityRepresentation representation() const {
        return rep_;
    }
    int num_qubits() const {
        return n_;
    }
    int num_excitations() const {
        return m_;
    }

    /// SubspaceBlock: one block. SectorBlocks: n + 1 blocks ordered by sector. FullSpace: one block.
    size_t num_blocks() const {
        return blocks_.size();
    }
    Eigen::MatrixXcd &block(size_t i) {
        return blocks_[i];
    }
    const Eigen::MatrixXcd &block(size_t i) const {
        return blocks_[i];
    }
    /// Basis indexing block i, or null for the full-space block.
    const BasisPtr &block_basis(size_t i) const {
        return bases_[i];
    }

    double trace() const;
    /// max |rho - rho^dagger| elementwise.
    double hermiticity_error() const;
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

    /// Restriction to sector k, ordered by that sector's basis ranks.
    Eigen::MatrixXcd sector_block(int k) const;
    /// Dense 2^n x 2^n copy. Throws CapacityError above kMaxDensityQubits.
    Eigen::MatrixXcd to_full_matrix() const;
    /// Same state in another representation. Throws RepresentationError when the target cannot
    /// hold the state (e.g. a populated sector other than m going to SubspaceBlock).
    DensityState converted(DensityRepresentation rep) const;

    /// Direct construction over a full-space matrix.
    static DensityState from_full_matrix(int num_excitations, Eigen::MatrixXcd full);

   private:
    DensityState(int n, int m, DensityRepresentation rep);

    int n_;
    int m_;
    DensityRepresentation rep_;
    std::vector<Eigen::MatrixXcd> blocks_;
    std::vector<BasisPtr> bases_;
};

}  // namespace dickecm

#endif
