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

#include "dickecm/full_space_oracle.h"

#include <cmath>
#include <string>

#include "dickecm/errors.h"

namespace dickecm {

Eigen::MatrixXcd dense_partial_swap(int num_qubits, int qubit_a, int qubit_b, double gamma) {
    if (num_qubits > kMaxOracleQubits) {
        throw CapacityError("dense oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
    }
    check_qubit_pair(num_qubits, qubit_a, qubit_b);
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index x = 0; x < d; x++) {
        int ba = (x >> qubit_a) & 1;
        int bb = (x >> qubit_b) & 1;
        Eigen::Index y = x;
        if (ba != bb) {
            y = x ^ (Eigen::Index{1} << qubit_a) ^ (Eigen::Index{1} << qubit_b);
        }
        swap(y, x) = 1;
    }
    return std::cos(gamma) * Eigen::MatrixXcd::Identity(d, d) + Complex(0, std::sin(gamma)) * swap;
}

std::vector<Complex> full_space_oracle(const ProtocolSpec &spec, double gamma_in, double gamma_sh, int rounds) {
    spec.validate();
    int n = spec.num_qubits;
    if (n > kMaxOracleQubits) {
        throw CapacityError("dense oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits, got " +
                            std::to_string(n));
    }
    Eigen::Index d = Eigen::Index{1} << n;
    std::vector<std::vector<Eigen::MatrixXcd>> step_gates;
    for (const auto &sched : step_schedules(spec)) {
        std::vector<Eigen::MatrixXcd> gates;
        for (const auto &e : sched.events) {
            double g = e.kind == EventKind::Shuttle ? gamma_sh : gamma_in;
            gates.push_back(dense_partial_swap(n, e.qubit_a, e.qubit_b, g));
        }
        step_gates.push_back(std::move(gates));
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    psi((Eigen::Index{1} << spec.num_excitations) - 1) = 1;
    for (int r = 0; r < rounds; r++) {
        for (const auto &u : step_gates[r % step_gates.size()]) {
            psi = u * psi;
        }
    }
    return {psi.data(), psi.data() + d};
}

}  // namespace dickecm
