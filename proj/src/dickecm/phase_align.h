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

#ifndef DICKECM_PHASE_ALIGN_H
#define DICKECM_PHASE_ALIGN_H

#include <Eigen/Dense>
#include <cstdint>

#include "dickecm/collision.h"
#include "dickecm/subspace.h"

namespace dickecm {

struct AlignmentOptions {
    RzConvention convention = RzConvention::Standard;
    /// Uniform random starts on [-pi, pi]^n in addition to the zero and pairwise starts.
    int random_starts = 2;
    uint64_t seed = 0x9e3779b97f4a7c15ULL;
    int maxiter = 100;
    double ftol = 1e-12;
    bool pairwise_start = true;
};

struct AlignmentResult {
    PhaseAngles angles;
    double fidelity = 0;
    /// Phase fidelity with all angles zero.
    double initial_fidelity = 0;
};

/// Maximizes the phase fidelity over one Rz angle per qubit. Never returns less than the
/// zero-angle fidelity.
AlignmentResult align_phases(const PureState &state, const AlignmentOptions &options = {});
/// Same for a density block over `basis`, maximizing <D| W rho W^dagger |D>.
AlignmentResult align_phases(
    const Eigen::MatrixXcd &block, const SubspaceBasis &basis, const AlignmentOptions &options = {});

double aligned_fidelity(const PureState &state, const PhaseAngles &angles, RzConvention convention);
double aligned_fidelity(
    const Eigen::MatrixXcd &block, const SubspaceBasis &basis, const PhaseAngles &angles, RzConvention convention);

}  // namespace dickecm

#endif
