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

#ifndef DICKECM_FULL_SPACE_ORACLE_H
#define DICKECM_FULL_SPACE_ORACLE_H

#include <Eigen/Dense>
#include <vector>

#include "dickecm/protocol.h"

namespace dickecm {

constexpr int kMaxOracleQubits = 8;

/// cos(gamma) I + i sin(gamma) SWAP_ab as a dense 2^n x 2^n matrix.
Eigen::MatrixXcd dense_partial_swap(int num_qubits, int qubit_a, int qubit_b, double gamma);

/// Brute-force evolution of the initial state over `rounds` counted steps in the full 2^n space.
/// Throws CapacityError above kMaxOracleQubits.
std::vector<Complex> full_space_oracle(const ProtocolSpec &spec, double gamma_in, double gamma_sh, int rounds);

}  // namespace dickecm

#endif
