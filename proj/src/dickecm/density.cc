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

#include "dickecm/density.h"

#include <Eigen/Eigenvalues>
#include <bit>
#include <string>

#include "dickecm/errors.h"

namespace dickecm {

const char *representation_name(DensityRepresentation rep) {
    switch (rep) {
        case DensityRepresentation::SubspaceBlock:
            return "subspace_block";
        case DensityRepresentation::SectorBlocks:
            return "sector_blocks";
        case DensityRepresentation::FullSpace:
            return "full_space";
    }
    return "?";
}

DensityState::DensityState(int n, int m, DensityRepresentation rep) : n_(n), m_(m), rep_(rep) {
    if (rep != DensityRepresentation::SubspaceBlock && n > kMaxDensityQubits) {
        throw CapacityError(
            std::string(representation_name(rep)) + " density matrices support at most " +
            std::to_string(kMaxDensityQubits) + " qubits, got " + std::to_string(n));
    }
    switch (rep) {
        case DensityRepresentation::SubspaceBlock: {
            auto basis = make_basis(n, m);
            if (basis->dim() > 8192) {
                throw CapacityError("subspace block of dimension " + std::to_string(basis->dim()) + " is too large");
            }
            blocks_.push_back(Eigen::MatrixXcd::Zero(basis->dim(), basis->dim()));
            bases_.push_back(std::move(basis));
            break;
        }
        case DensityRepresentation::SectorBlocks:
            for (int k = 0; k <= n; k++) {
                auto basis = make_basis(n, k);
                blocks_.push_back(Eigen::MatrixXcd::Zero(basis->dim(), basis->dim()));
                bases_.push_back(std::move(basis));
            }
            break;
        case DensityRepresentation::FullSpace: {
            size_t d = size_t{1} << n;
            blocks_.push_back(Eigen::MatrixXcd::Zero(d, d));
            bases_.push_back(nullptr);
            break;
        }
    }
}

DensityState DensityState::from_pure(const PureState &state, DensityRepresentation rep) {
    DensityState rho(state.num_qubits(), state.num_excitations(), rep);
    Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes.data(), state.amplitudes.size());
    switch (rep) {
        case DensityRepresentation::SubspaceBlock:
            rho.blocks_[0] = psi * psi.adjoint();
            break;
        case DensityRepresentation::SectorBlocks:
            rho.blocks_[state.num_excitations()] = psi * psi.adjoint();
            break;
        case DensityRepresentation::FullSpace: {
            auto full = embed_full(state);
            Eigen::Map<const Eigen::VectorXcd> f(full.data(), full.size());
            rho.blocks_[0] = f * f.adjoint();
            break;
        }
    }
    return rho;
}

DensityState DensityState::from_full_matrix(int num_excitations, Eigen::MatrixXcd full) {
    int n = std::countr_zero(static_cast<uint64_t>(full.rows()));
    if (full.rows() != full.cols() || (Eigen::Index{1} << n) != full.rows()) {
        throw DomainError("full-space density matrix must be 2^n x 2^n");
    }
    DensityState rho(n, num_excitations, DensityRepresentation::FullSpace);
    rho.blocks_[0] = std::move(full);
    return rho;
}

double DensityState::trace() const {
    double t = 0;
    for (const auto &b : blocks_) {
        t += b.trace().real();
    }
    return t;
}

double DensityState::hermiticity_error() const {
    double worst = 0;
    for (const auto &b : blocks_) {
        if (b.size()) {
            worst = std::max(worst, (b - b.adjoint()).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double DensityState::min_eigenvalue() const {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto &b : blocks_) {
        if (!b.size()) {
            continue;
        }
        Eigen::MatrixXcd h = 0.5 * (b + b.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
        lowest = std::min(lowest, solver.eigenvalues().minCoeff());
    }
    return lowest;
}

Eigen::MatrixXcd DensityState::sector_block(int k) const {
    if (k < 0 || k > n_) {
        throw DomainError("sector " + std::to_string(k) + " out of range");
    }
    switch (rep_) {
        case DensityRepresentation::SubspaceBlock: {
            if (k == m_) {
                return blocks_[0];
            }
            size_t d = binomial(n_, k);
            return Eigen::MatrixXcd::Zero(d, d);
        }
        case DensityRepresentation::SectorBlocks:
            return blocks_[k];
        case DensityRepresentation::FullSpace: {
            auto basis = make_basis(n_, k);
            const auto &masks = basis->masks();
            Eigen::MatrixXcd out(masks.size(), masks.size());
            for (size_t c = 0; c < masks.size(); c++) {
                for (size_t r = 0; r < masks.size(); r++) {
                    out(r, c) = blocks_[0](masks[r], masks[c]);
                }
            }
            return out;
        }
    }
    return {};
}

Eigen::MatrixXcd DensityState::to_full_matrix() const {
    if (rep_ == DensityRepresentation::FullSpace) {
        return blocks_[0];
    }
    if (n_ > kMaxDensityQubits) {
        throw CapacityError("to_full_matrix supports at most " + std::to_string(kMaxDensityQubits) + " qubits");
    }
    size_t d = size_t{1} << n_;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(d, d);
    for (size_t i = 0; i < blocks_.size(); i++) {
        const auto &masks = bases_[i]->masks();
        for (size_t c = 0; c < masks.size(); c++) {
            for (size_t r = 0; r < masks.size(); r++) {
                full(masks[r], masks[c]) = blocks_[i](r, c);
            }
        }
    }
    return full;
}

DensityState DensityState::converted(DensityRepresentation rep) const {
    if (rep == rep_) {
        return *this;
    }
    DensityState out(n_, m_, rep);
    constexpr double kTol = 1e-14;
    if (rep == DensityRepresentation::FullSpace) {
        out.blocks_[0] = to_full_matrix();
        return out;
    }
    if (rep_ == DensityRepresentation::FullSpace) {
        // Everything outside the kept blocks must vanish.
        Eigen::MatrixXcd residual = blocks_[0];
        for (size_t i = 0; i < out.blocks_.size(); i++) {
            const auto &masks = out.bases_[i]->masks();
            for (size_t c = 0; c < masks.size(); c++) {
                for (size_t r = 0; r < masks.size(); r++) {
                    out.blocks_[i](r, c) = blocks_[0](masks[r], masks[c]);
                    residual(masks[r], masks[c]) = 0;
                }
            }
        }
        if (residual.size() && residual.cwiseAbs().maxCoeff() > kTol) {
            throw RepresentationError(
                std::string("state has coherences or populations that ") + representation_name(rep) +
                " cannot represent");
        }
        return out;
    }
    if (rep == DensityRepresentation::SectorBlocks) {
        // From SubspaceBlock.
        out.blocks_[m_] = blocks_[0];
        return out;
    }
    // SectorBlocks -> SubspaceBlock.
    for (int k = 0; k <= n_; k++) {
        if (k != m_ && blocks_[k].size() && blocks_[k].cwiseAbs().maxCoeff() > kTol) {
            throw RepresentationError("sector " + std::to_string(k) + " is populated; cannot reduce to subspace block");
        }
    }
    out.blocks_[0] = blocks_[m_];
    return out;
}

}  // namespace dickecm
