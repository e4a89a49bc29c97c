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

#include "dickecm/phase_align.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "dickecm/errors.h"
#include "dickecm/lbfgsb.h"

namespace dickecm {

namespace {

// Shared evaluation for the pure and density objectives. `weights` receives w_x = exp(i s phi_x).
struct Aligner {
    const SubspaceBasis &basis;
    double sign;
    const Complex *psi = nullptr;
    const Eigen::MatrixXcd *rho = nullptr;
    std::vector<Complex> w;
    std::vector<Complex> u;
    std::vector<Complex> z;

    Aligner(const SubspaceBasis &b, RzConvention c) : basis(b), sign(c == RzConvention::Standard ? 1 : -1) {
        w.resize(b.dim());
        u.resize(b.dim());
        z.resize(b.num_qubits());
    }

    void fill_weights(std::span<const double> theta) {
        for (size_t j = 0; j < theta.size(); j++) {
            z[j] = std::polar(1.0, sign * theta[j]);
        }
        const auto &masks = basis.masks();
        for (size_t x = 0; x < masks.size(); x++) {
            Complex p = 1.0;
            for (uint32_t bits = masks[x]; bits; bits &= bits - 1) {
                p *= z[std::countr_zero(bits)];
            }
            w[x] = p;
        }
    }

    // Returns F; writes dF/dtheta when grad is non-empty.
    double evaluate(std::span<const double> theta, std::span<double> grad) {
        fill_weights(theta);
        size_t dim = w.size();
        double inv_c = 1.0 / static_cast<double>(dim);
        const auto &masks = basis.masks();
        if (psi != nullptr) {
            double sr = 0;
            double si = 0;
            for (size_t x = 0; x < dim; x++) {
                u[x] = w[x] * psi[x];
                sr += u[x].real();
                si += u[x].imag();
            }
            if (!grad.empty()) {
                std::fill(grad.begin(), grad.end(), 0.0);
                // Re(conj(S) * i * s * u_x) = s * (si * ur - sr * ui)
                for (size_t x = 0; x < dim; x++) {
                    double c = sign * (si * u[x].real() - sr * u[x].imag());
                    for (uint32_t bits = masks[x]; bits; bits &= bits - 1) {
                        grad[std::countr_zero(bits)] += c;
                    }
                }
                for (auto &g : grad) {
                    g *= 2 * inv_c;
                }
            }
            return (sr * sr + si * si) * inv_c;
        }
        const Eigen::MatrixXcd &r = *rho;
        double f = 0;
        for (size_t x = 0; x < dim; x++) {
            double ar = 0;
            double ai = 0;
            for (size_t y = 0; y < dim; y++) {
                const Complex &v = r(x, y);
                // rho_xy * conj(w_y)
                ar += v.real() * w[y].real() + v.imag() * w[y].imag();
                ai += v.imag() * w[y].real() - v.real() * w[y].imag();
            }
            u[x] = Complex(w[x].real() * ar - w[x].imag() * ai, w[x].real() * ai + w[x].imag() * ar);
            f += u[x].real();
        }
        if (!grad.empty()) {
            std::fill(grad.begin(), grad.end(), 0.0);
            // Re(i * s * w_x u_x) = -s * Im(w_x u_x); u already holds w_x u_x.
            for (size_t x = 0; x < dim; x++) {
                double c = -sign * u[x].imag();
                for (uint32_t bits = masks[x]; bits; bits &= bits - 1) {
                    grad[std::countr_zero(bits)] += c;
                }
            }
            for (auto &g : grad) {
                g *= 2 * inv_c;
            }
        }
        return f * inv_c;
    }

    Complex coherence(size_t x, size_t y) const {
        if (psi != nullptr) {
            return psi[x] * std::conj(psi[y]);
        }
        return (*rho)(x, y);
    }

    // Relative phase of qubit j against qubit 0 from coherences between masks that differ by
    // moving one excitation from qubit 0 to qubit j.
    std::vector<double> pairwise_estimate() const {
        int n = basis.num_qubits();
        std::vector<double> theta(n, 0.0);
        const auto &masks = basis.masks();
        for (int j = 1; j < n; j++) {
            Complex acc = 0;
            uint32_t bit0 = 1;
            uint32_t bitj = uint32_t{1} << j;
            for (size_t x = 0; x < masks.size(); x++) {
                if ((masks[x] & bit0) && !(masks[x] & bitj)) {
                    size_t y = basis.rank_unchecked(masks[x] ^ bit0 ^ bitj);
                    acc += coherence(y, x);
                }
            }
            theta[j] = std::abs(acc) > 0 ? -sign * std::arg(acc) : 0.0;
        }
        return theta;
    }
};

AlignmentResult run(Aligner &aligner, const AlignmentOptions &options) {
    int n = aligner.basis.num_qubits();
    Box box = Box::uniform(n, -std::numbers::pi, std::numbers::pi);
    LbfgsbOptions lopt;
    lopt.maxiter = options.maxiter;
    lopt.ftol = options.ftol;
    lopt.pgtol = 1e-12;

    std::vector<std::vector<double>> starts;
    starts.emplace_back(n, 0.0);
    if (options.pairwise_start) {
        starts.push_back(aligner.pairwise_estimate());
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    for (int k = 0; k < options.random_starts; k++) {
        std::vector<double> t(n);
        for (auto &v : t) {
            v = uni(rng);
        }
        starts.push_back(std::move(t));
    }

    ObjectiveWithGradient objective = [&](std::span<const double> x, std::span<double> g) {
        double f = aligner.evaluate(x, g);
        for (auto &v : g) {
            v = -v;
        }
        return -f;
    };

    AlignmentResult best;
    best.initial_fidelity = aligner.evaluate(starts[0], {});
    best.fidelity = best.initial_fidelity;
    best.angles.thetas = starts[0];
    for (auto &s : starts) {
        auto r = lbfgsb_minimize_with_gradient(objective, s, box, lopt);
        if (-r.f > best.fidelity) {
            best.fidelity = -r.f;
            best.angles.thetas = r.x;
        }
        if (1 - best.fidelity < 1e-13) {
            break;
        }
    }
    if (std::isnan(best.fidelity)) {
        throw NumericalError("phase alignment produced NaN");
    }
    return best;
}

}  // namespace

AlignmentResult align_phases(const PureState &state, const AlignmentOptions &options) {
    Aligner a(*state.basis, options.convention);
    a.psi = state.amplitudes.data();
    return run(a, options);
}

AlignmentResult align_phases(const Eigen::MatrixXcd &block, const SubspaceBasis &basis,
                             const AlignmentOptions &options) {
    if (block.rows() != static_cast<Eigen::Index>(basis.dim()) || block.cols() != block.rows()) {
        throw DomainError("density block does not match basis dimension");
    }
    Aligner a(basis, options.convention);
    a.rho = &block;
    return run(a, options);
}

double aligned_fidelity(const PureState &state, const PhaseAngles &angles, RzConvention convention) {
    if (angles.thetas.size() != static_cast<size_t>(state.num_qubits())) {
        throw DomainError("need one Rz angle per qubit");
    }
    Aligner a(*state.basis, convention);
    a.psi = state.amplitudes.data();
    return a.evaluate(angles.thetas, {});
}

double aligned_fidelity(const Eigen::MatrixXcd &block, const SubspaceBasis &basis, const PhaseAngles &angles,
                        RzConvention convention) {
    if (angles.thetas.size() != static_cast<size_t>(basis.num_qubits())) {
        throw DomainError("need one Rz angle per qubit");
    }
    if (block.rows() != static_cast<Eigen::Index>(basis.dim()) || block.cols() != block.rows()) {
        throw DomainError("density block does not match basis dimension");
    }
    Aligner a(basis, convention);
    a.rho = &block;
    return a.evaluate(angles.thetas, {});
}

}  // namespace dickecm
