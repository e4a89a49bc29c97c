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

#include "dickecm/noise.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dickecm/errors.h"
#include "dickecm/parallel.h"
#include "dickecm/phase_align.h"

namespace dickecm {

const char *channel_label_name(ChannelLabel label) {
    switch (label) {
        case ChannelLabel::Identity:
            return "none";
        case ChannelLabel::Dephasing:
            return "dephasing";
        case ChannelLabel::Depolarizing:
            return "depolarizing";
        case ChannelLabel::AmplitudeDamping:
            return "damping";
    }
    return "?";
}

ChannelLabel parse_channel_label(const std::string &text) {
    if (text == "none" || text == "identity") {
        return ChannelLabel::Identity;
    }
    if (text == "dephasing") {
        return ChannelLabel::Dephasing;
    }
    if (text == "depolarizing") {
        return ChannelLabel::Depolarizing;
    }
    if (text == "damping" || text == "amplitude_damping") {
        return ChannelLabel::AmplitudeDamping;
    }
    throw ConfigError("unknown channel '" + text + "' (expected none|dephasing|depolarizing|damping)");
}

bool KrausChannel::preserves_excitation() const {
    for (const auto &k : operators) {
        if (k(0, 1) != Complex(0) || k(1, 0) != Complex(0)) {
            return false;
        }
    }
    return true;
}

bool KrausChannel::is_identity() const {
    return operators.size() == 1 && operators[0] == Eigen::Matrix2cd::Identity();
}

double KrausChannel::completeness_error() const {
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto &k : operators) {
        sum += k.adjoint() * k;
    }
    return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

std::array<std::array<Complex, 4>, 4> KrausChannel::superoperator() const {
    std::array<std::array<Complex, 4>, 4> s{};
    for (const auto &k : operators) {
        for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
                for (int c = 0; c < 2; c++) {
                    for (int d = 0; d < 2; d++) {
                        s[2 * a + b][2 * c + d] += k(a, c) * std::conj(k(b, d));
                    }
                }
            }
        }
    }
    return s;
}

KrausChannel make_channel(ChannelLabel label, double q) {
    if (!(q >= 0 && q <= 1)) {
        throw DomainError("channel strength q must lie in [0, 1]");
    }
    using M = Eigen::Matrix2cd;
    const Complex i(0, 1);
    M id = M::Identity();
    M x;
    x << 0, 1, 1, 0;
    M y;
    y << 0, -i, i, 0;
    M z;
    z << 1, 0, 0, -1;

    KrausChannel ch;
    ch.label = label;
    ch.q = q;
    std::vector<std::pair<double, M>> weighted;
    switch (label) {
        case ChannelLabel::Identity:
            weighted = {{1.0, id}};
            break;
        case ChannelLabel::Dephasing:
            weighted = {{1 - q, id}, {q, z}};
            break;
        case ChannelLabel::Depolarizing:
            weighted = {{1 - 3 * q / 4, id}, {q / 4, x}, {q / 4, y}, {q / 4, z}};
            break;
        case ChannelLabel::AmplitudeDamping: {
            M k1;
            k1 << 1, 0, 0, std::sqrt(1 - q);
            M k2;
            k2 << 0, std::sqrt(q), 0, 0;
            ch.operators.push_back(k1);
            if (q > 0) {
                ch.operators.push_back(k2);
            }
            return ch;
        }
    }
    for (auto &[w, m] : weighted) {
        if (w > 0) {
            ch.operators.push_back(std::sqrt(w) * m);
        }
    }
    return ch;
}

namespace {

using Super = std::array<std::array<Complex, 4>, 4>;

inline Complex cmul(const Complex &a, const Complex &b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void channel_on_full(Eigen::MatrixXcd &rho, int qubit, const Super &s) {
    Eigen::Index d = rho.rows();
    Eigen::Index bit = Eigen::Index{1} << qubit;
    for (Eigen::Index y = 0; y < d; y++) {
        if (y & bit) {
            continue;
        }
        for (Eigen::Index x = 0; x < d; x++) {
            if (x & bit) {
                continue;
            }
            Complex in[4] = {rho(x, y), rho(x, y | bit), rho(x | bit, y), rho(x | bit, y | bit)};
            Complex out[4];
            for (int r = 0; r < 4; r++) {
                Complex acc = 0;
                for (int c = 0; c < 4; c++) {
                    acc += cmul(s[r][c], in[c]);
                }
                out[r] = acc;
            }
            rho(x, y) = out[0];
            rho(x, y | bit) = out[1];
            rho(x | bit, y) = out[2];
            rho(x | bit, y | bit) = out[3];
        }
    }
}

void channel_on_sectors(DensityState &rho, int qubit, const Super &s) {
    // Coherences between different sectors must neither appear nor be needed.
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            int dr = (r >> 1) - (r & 1);
            int dc = (c >> 1) - (c & 1);
            if (dr != dc && std::abs(s[r][c]) > 1e-15) {
                throw RepresentationError("channel creates coherences between excitation sectors");
            }
        }
    }
    int n = rho.num_qubits();
    uint32_t bit = uint32_t{1} << qubit;
    std::vector<Eigen::MatrixXcd> out(rho.num_blocks());
    for (int k = 0; k <= n; k++) {
        const auto &block = rho.block(k);
        const auto &masks = rho.block_basis(k)->masks();
        size_t d = masks.size();
        // Partner index in the neighbouring sector after flipping the qubit.
        std::vector<size_t> partner(d);
        std::vector<int> bits(d);
        for (size_t x = 0; x < d; x++) {
            bits[x] = (masks[x] & bit) ? 1 : 0;
            int nk = bits[x] ? k - 1 : k + 1;
            partner[x] = rho.block_basis(nk)->rank_unchecked(masks[x] ^ bit);
        }
        out[k].resize(d, d);
        for (size_t y = 0; y < d; y++) {
            for (size_t x = 0; x < d; x++) {
                int a = bits[x];
                int b = bits[y];
                int idx = 2 * a + b;
                Complex v = cmul(s[idx][idx], block(x, y));
                if (a == b) {
                    int flip = 2 * (1 - a) + (1 - b);
                    const Complex &w = s[idx][flip];
                    if (w != Complex(0)) {
                        const auto &nb = rho.block(a ? k - 1 : k + 1);
                        v += cmul(w, nb(partner[x], partner[y]));
                    }
                }
                out[k](x, y) = v;
            }
        }
    }
    for (size_t k = 0; k < out.size(); k++) {
        rho.block(k) = std::move(out[k]);
    }
}

void channel_on_subspace(Eigen::MatrixXcd &block, const SubspaceBasis &basis, int qubit, const KrausChannel &ch) {
    if (!ch.preserves_excitation()) {
        throw RepresentationError(
            std::string(channel_label_name(ch.label)) +
            " changes the excitation number; use sector_blocks or full_space representation");
    }
    auto s = ch.superoperator();
    Complex factor[4] = {s[0][0], s[1][1], s[2][2], s[3][3]};
    uint32_t bit = uint32_t{1} << qubit;
    const auto &masks = basis.masks();
    size_t d = masks.size();
    for (size_t y = 0; y < d; y++) {
        int b = (masks[y] & bit) ? 1 : 0;
        for (size_t x = 0; x < d; x++) {
            int a = (masks[x] & bit) ? 1 : 0;
            block(x, y) = cmul(block(x, y), factor[2 * a + b]);
        }
    }
}

void blend_collision(Eigen::MatrixXcd &block, const PairAction &action, CollisionAngle gamma, double p_miss) {
    if (p_miss == 0) {
        conjugate_pair_action(block, action, gamma);
        return;
    }
    if (p_miss == 1) {
        return;
    }
    Eigen::MatrixXcd moved = block;
    conjugate_pair_action(moved, action, gamma);
    block = (1 - p_miss) * moved + p_miss * block;
}

}  // namespace

void apply_channel(DensityState &rho, int qubit, const KrausChannel &channel) {
    if (qubit < 0 || qubit >= rho.num_qubits()) {
        throw DomainError("channel qubit " + std::to_string(qubit) + " out of range");
    }
    if (channel.is_identity()) {
        return;
    }
    switch (rho.representation()) {
        case DensityRepresentation::SubspaceBlock:
            channel_on_subspace(rho.block(0), *rho.block_basis(0), qubit, channel);
            break;
        case DensityRepresentation::SectorBlocks:
            channel_on_sectors(rho, qubit, channel.superoperator());
            break;
        case DensityRepresentation::FullSpace:
            channel_on_full(rho.block(0), qubit, channel.superoperator());
            break;
    }
}

void apply_missing_collision(DensityState &rho, int qubit_a, int qubit_b, CollisionAngle gamma, double p_miss) {
    if (!(p_miss >= 0 && p_miss <= 1)) {
        throw DomainError("p_miss must lie in [0, 1]");
    }
    check_qubit_pair(rho.num_qubits(), qubit_a, qubit_b);
    for (size_t i = 0; i < rho.num_blocks(); i++) {
        if (!rho.block(i).size()) {
            continue;
        }
        const auto &basis = rho.block_basis(i);
        auto action = basis ? make_pair_action(*basis, qubit_a, qubit_b)
                            : make_full_pair_action(rho.num_qubits(), qubit_a, qubit_b);
        blend_collision(rho.block(i), action, gamma, p_miss);
    }
}

const char *noise_policy_name(NoisePolicy p) {
    return p == NoisePolicy::PerRoundAllQubits ? "per_round_all_qubits" : "per_collision_participants";
}

NoisePolicy parse_noise_policy(const std::string &text) {
    if (text == "per_round_all_qubits") {
        return NoisePolicy::PerRoundAllQubits;
    }
    if (text == "per_collision_participants") {
        return NoisePolicy::PerCollisionParticipants;
    }
    throw ConfigError("unknown noise policy '" + text + "'");
}

void NoiseConfig::validate() const {
    if (!(p_miss >= 0 && p_miss <= 1)) {
        throw DomainError("p_miss must lie in [0, 1]");
    }
    if (!(q >= 0 && q <= 1)) {
        throw DomainError("channel strength q must lie in [0, 1]");
    }
    if (engine == NoiseEngineKind::Trajectories && trajectories < 1) {
        throw DomainError("trajectory engine needs at least one trajectory");
    }
}

std::string NoiseConfig::describe() const {
    std::ostringstream out;
    out << "p_miss=" << p_miss << " channel=" << channel_label_name(channel) << " q=" << q
        << " policy=" << noise_policy_name(policy) << (drop_intra ? " drop_intra" : "") << " engine="
        << (engine == NoiseEngineKind::DensityMatrix ? "dm" : "traj:" + std::to_string(trajectories));
    return out.str();
}

DensityRepresentation choose_representation(const NoiseConfig &noise, int num_qubits) {
    if (noise.representation) {
        return *noise.representation;
    }
    if (!noise.has_channel() || make_channel(noise.channel, noise.q).preserves_excitation()) {
        return DensityRepresentation::SubspaceBlock;
    }
    if (num_qubits > kMaxDensityQubits) {
        throw CapacityError(
            std::string(channel_label_name(noise.channel)) + " noise needs sector blocks, limited to " +
            std::to_string(kMaxDensityQubits) + " qubits");
    }
    return DensityRepresentation::SectorBlocks;
}

NoisyEngine::NoisyEngine(const ProtocolSpec &spec, const NoiseConfig &noise)
    : spec_(spec),
      noise_(noise),
      rep_(choose_representation(noise, spec.num_qubits)),
      basis_(make_basis(spec.num_qubits, spec.num_excitations)),
      channel_(make_channel(noise.channel, noise.q)) {
    spec_.validate();
    noise_.validate();
    if (rep_ == DensityRepresentation::SubspaceBlock && noise_.has_channel() && !channel_.preserves_excitation()) {
        throw RepresentationError(
            std::string(channel_label_name(noise_.channel)) + " noise cannot run on a single subspace block");
    }
    DensityState probe = initial_state();
    for (const auto &sched : step_schedules(spec_)) {
        std::vector<CompiledEvent> compiled;
        for (const auto &e : sched.events) {
            CompiledEvent ce{e, {}, e.kind == EventKind::Shuttle || noise_.drop_intra};
            for (size_t b = 0; b < probe.num_blocks(); b++) {
                const auto &bb = probe.block_basis(b);
                ce.per_block.push_back(bb ? make_pair_action(*bb, e.qubit_a, e.qubit_b)
                                          : make_full_pair_action(spec_.num_qubits, e.qubit_a, e.qubit_b));
            }
            compiled.push_back(std::move(ce));
        }
        steps_.push_back(std::move(compiled));
    }
}

DensityState NoisyEngine::initial_state() const {
    return DensityState::from_pure(dickecm::initial_state(spec_, basis_), rep_);
}

void NoisyEngine::apply_step(DensityState &rho, size_t step_index, double gamma_in, double gamma_sh) const {
    bool channel_on = noise_.has_channel();
    for (const auto &ce : steps_[step_index % steps_.size()]) {
        CollisionAngle g{ce.event.kind == EventKind::Shuttle ? gamma_sh : gamma_in};
        double p = ce.droppable ? noise_.p_miss : 0.0;
        for (size_t b = 0; b < rho.num_blocks(); b++) {
            if (rho.block(b).size()) {
                blend_collision(rho.block(b), ce.per_block[b], g, p);
            }
        }
        if (channel_on && noise_.policy == NoisePolicy::PerCollisionParticipants) {
            apply_channel(rho, ce.event.qubit_a, channel_);
            apply_channel(rho, ce.event.qubit_b, channel_);
        }
    }
    if (channel_on && noise_.policy == NoisePolicy::PerRoundAllQubits) {
        for (int q = 0; q < spec_.num_qubits; q++) {
            apply_channel(rho, q, channel_);
        }
    }
}

Eigen::MatrixXcd NoisyEngine::target_block(const DensityState &rho) const {
    switch (rho.representation()) {
        case DensityRepresentation::SubspaceBlock:
            return rho.block(0);
        case DensityRepresentation::SectorBlocks:
            return rho.block(spec_.num_excitations);
        case DensityRepresentation::FullSpace:
            return rho.sector_block(spec_.num_excitations);
    }
    return {};
}

namespace {

double block_fidelity(const Eigen::MatrixXcd &block, const SubspaceBasis &basis, FidelityKind kind,
                      const PhaseAngles *readout, RzConvention convention) {
    if (readout != nullptr) {
        return aligned_fidelity(block, basis, *readout, convention);
    }
    double c = static_cast<double>(basis.dim());
    switch (kind) {
        case FidelityKind::Phase:
            return block.sum().real() / c;
        case FidelityKind::Magnitude:
            return block.cwiseAbs().sum() / c;
        case FidelityKind::Aligned: {
            AlignmentOptions opt;
            opt.convention = convention;
            return align_phases(block, basis, opt).fidelity;
        }
    }
    return 0;
}

}  // namespace

FidelityTrace run_noisy_trace(const ProtocolSpec &spec, double gamma_in, double gamma_sh, int rounds,
                              const NoiseConfig &noise, FidelityKind kind, const PhaseAngles *readout,
                              RzConvention convention) {
    if (rounds < 1) {
        throw DomainError("trace needs at least one round");
    }
    if (noise.engine == NoiseEngineKind::Trajectories) {
        if (readout == nullptr && kind != FidelityKind::Phase) {
            throw DomainError("trajectory engine supports phase fidelity or a fixed Rz readout only");
        }
        return run_trajectories(spec, gamma_in, gamma_sh, rounds, noise, readout, convention);
    }
    NoisyEngine engine(spec, noise);
    if (readout != nullptr && readout->thetas.size() != static_cast<size_t>(spec.num_qubits)) {
        throw DomainError("need one Rz angle per qubit");
    }
    DensityState rho = engine.initial_state();
    FidelityTrace trace;
    for (int r = 0; r < rounds; r++) {
        engine.apply_step(rho, r, gamma_in, gamma_sh);
        trace.values.push_back(
            block_fidelity(engine.target_block(rho), *engine.basis(), kind, readout, convention));
    }
    trace.finalize();
    return trace;
}

FidelityTrace run_trajectories(const ProtocolSpec &spec, double gamma_in, double gamma_sh, int rounds,
                               const NoiseConfig &noise, const PhaseAngles *readout, RzConvention convention,
                               int workers) {
    noise.validate();
    if (rounds < 1) {
        throw DomainError("trace needs at least one round");
    }
    if (noise.trajectories < 1) {
        throw DomainError("trajectory engine needs at least one trajectory");
    }
    if (noise.has_channel()) {
        throw DomainError("trajectory engine unravels gate dropout only; use the density-matrix engine for channels");
    }
    if (readout != nullptr && readout->thetas.size() != static_cast<size_t>(spec.num_qubits)) {
        throw DomainError("need one Rz angle per qubit");
    }
    CollisionEngine engine(spec);
    const size_t count = static_cast<size_t>(noise.trajectories);
    const size_t r_count = static_cast<size_t>(rounds);
    std::vector<double> samples(count * r_count);
    std::vector<Complex> readout_phase;
    if (readout != nullptr) {
        for (uint32_t mask : engine.basis()->masks()) {
            readout_phase.push_back(std::polar(1.0, rz_mask_phase(mask, readout->thetas, convention)));
        }
    }
    const double inv_c = 1.0 / static_cast<double>(engine.basis()->dim());

    parallel_for(count, workers, [&](size_t i) {
        std::mt19937_64 rng(noise.seed + i);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        PureState psi = initial_state(spec, engine.basis());
        for (size_t r = 0; r < r_count; r++) {
            for (const auto &ce : engine.step(r)) {
                bool droppable = ce.event.kind == EventKind::Shuttle || noise.drop_intra;
                if (droppable && coin(rng) < noise.p_miss) {
                    continue;
                }
                double g = ce.event.kind == EventKind::Shuttle ? gamma_sh : gamma_in;
                apply_pair_action(psi.amplitudes, ce.action, CollisionAngle{g});
            }
            Complex s = 0;
            for (size_t x = 0; x < psi.amplitudes.size(); x++) {
                s += readout_phase.empty() ? psi.amplitudes[x] : cmul(readout_phase[x], psi.amplitudes[x]);
            }
            samples[i * r_count + r] = std::norm(s) * inv_c;
        }
    });

    FidelityTrace trace;
    trace.values.assign(r_count, 0.0);
    trace.standard_errors.assign(r_count, 0.0);
    for (size_t r = 0; r < r_count; r++) {
        // Shifted sums keep identical samples at exactly zero spread.
        const double shift = samples[r];
        double sum = 0;
        double sum_sq = 0;
        for (size_t i = 0; i < count; i++) {
            double d = samples[i * r_count + r] - shift;
            sum += d;
            sum_sq += d * d;
        }
        double n = static_cast<double>(count);
        double mean = shift + sum / n;
        double var = std::max(0.0, sum_sq - sum * sum / n);
        trace.values[r] = mean;
        trace.standard_errors[r] = count > 1 ? std::sqrt(var / static_cast<double>(count - 1) / count) : 0.0;
    }
    trace.finalize();
    return trace;
}

BestFidelity best_noisy_fidelity_over_rounds(const NoisyEngine &engine, double gamma_in, double gamma_sh, int rounds,
                                             FidelityKind kind, int align_candidates) {
    if (rounds < 1) {
        throw DomainError("trace needs at least one round");
    }
    DensityState rho = engine.initial_state();
    const auto &basis = *engine.basis();
    BestFidelity best{-1, 0};
    struct Candidate {
        double bound;
        int round;
        Eigen::MatrixXcd block;
    };
    std::vector<Candidate> top;
    size_t k_max = static_cast<size_t>(std::max(1, align_candidates));
    Eigen::MatrixXcd full;
    for (int r = 0; r < rounds; r++) {
        engine.apply_step(rho, r, gamma_in, gamma_sh);
        const Eigen::MatrixXcd *bp = nullptr;
        switch (rho.representation()) {
            case DensityRepresentation::SubspaceBlock:
                bp = &rho.block(0);
                break;
            case DensityRepresentation::SectorBlocks:
                bp = &rho.block(engine.spec().num_excitations);
                break;
            case DensityRepresentation::FullSpace:
                full = engine.target_block(rho);
                bp = &full;
                break;
        }
        const Eigen::MatrixXcd &block = *bp;
        double c = static_cast<double>(basis.dim());
        if (kind != FidelityKind::Aligned) {
            double f = kind == FidelityKind::Phase ? block.sum().real() / c : block.cwiseAbs().sum() / c;
            if (std::isnan(f)) {
                throw NumericalError("fidelity is NaN at round " + std::to_string(r + 1));
            }
            if (f > best.value) {
                best = {f, r + 1};
            }
            continue;
        }
        double bound = block.cwiseAbs().sum() / c;
        if (std::isnan(bound)) {
            throw NumericalError("fidelity is NaN at round " + std::to_string(r + 1));
        }
        if (top.size() < k_max) {
            top.push_back({bound, r + 1, block});
            continue;
        }
        auto worst = std::min_element(top.begin(), top.end(), [](const Candidate &a, const Candidate &b) {
            return a.bound < b.bound || (a.bound == b.bound && a.round > b.round);
        });
        if (bound > worst->bound) {
            worst->bound = bound;
            worst->round = r + 1;
            worst->block = block;
        }
    }
    if (kind != FidelityKind::Aligned) {
        return best;
    }
    std::sort(top.begin(), top.end(), [](const Candidate &a, const Candidate &b) {
        return a.bound > b.bound || (a.bound == b.bound && a.round < b.round);
    });
    for (const auto &c : top) {
        if (c.bound < best.value) {
            break;
        }
        double f = align_phases(c.block, basis).fidelity;
        if (f > best.value || (f == best.value && c.round < best.round)) {
            best = {f, c.round};
        }
    }
    return best;
}

}  // namespace dickecm
