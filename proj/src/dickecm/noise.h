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

#ifndef DICKECM_NOISE_H
#define DICKECM_NOISE_H

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dickecm/collision.h"
#include "dickecm/density.h"
#include "dickecm/protocol.h"

namespace dickecm {

enum class ChannelLabel {
    Identity,
    Dephasing,
    Depolarizing,
    AmplitudeDamping,
};

const char *channel_label_name(ChannelLabel label);
ChannelLabel parse_channel_label(const std::string &text);

struct KrausChannel {
    ChannelLabel label = ChannelLabel::Identity;
    double q = 0;
    std::vector<Eigen::Matrix2cd> operators;

    /// True when every operator is diagonal, so excitation sectors and their coherences are kept.
    bool preserves_excitation() const;
    bool is_identity() const;
    /// max |sum K^dagger K - I| elementwise.
    double completeness_error() const;
    /// S[2a+b][2c+d] = sum_K K[a][c] conj(K[b][d]), the action on one qubit's 2x2 sub-block.
    std::array<std::array<Complex, 4>, 4> superoperator() const;
};

/// Operators with zero weight are omitted, so q = 0 always yields the single identity operator.
KrausChannel make_channel(ChannelLabel label, double q);

/// rho <- sum_K K rho K^dagger on one qubit. Throws RepresentationError when the representation
/// cannot hold the result (excitation-changing channel on a single subspace block).
void apply_channel(DensityState &rho, int qubit, const KrausChannel &channel);

/// rho <- (1 - p) U rho U^dagger + p rho.
void apply_missing_collision(DensityState &rho, int qubit_a, int qubit_b, CollisionAngle gamma, double p_miss);

enum class NoisePolicy {
    /// After every counted step, the channel acts once on every qubit.
    PerRoundAllQubits,
    /// After every collision, the channel acts on its two participants.
    PerCollisionParticipants,
};

enum class NoiseEngineKind {
    DensityMatrix,
    Trajectories,
};

const char *noise_policy_name(NoisePolicy p);
NoisePolicy parse_noise_policy(const std::string &text);

struct NoiseConfig {
    double p_miss = 0;
    ChannelLabel channel = ChannelLabel::Identity;
    double q = 0;
    NoisePolicy policy = NoisePolicy::PerRoundAllQubits;
    /// Dropout also hits intra-register collisions.
    bool drop_intra = false;
    NoiseEngineKind engine = NoiseEngineKind::DensityMatrix;
    int trajectories = 1000;
    uint64_t seed = 1;
    std::optional<DensityRepresentation> representation;

    void validate() const;
    bool has_channel() const {
        return channel != ChannelLabel::Identity && q > 0;
    }
    bool is_noiseless() const {
        return p_miss == 0 && !has_channel();
    }
    std::string describe() const;
};

/// Cheapest representation that can hold the dynamics: one subspace block for excitation-preserving
/// noise, sector blocks otherwise. An explicit override in `noise` wins.
DensityRepresentation choose_representation(const NoiseConfig &noise, int num_qubits);

class NoisyEngine {
   public:
    NoisyEngine(const ProtocolSpec &spec, const NoiseConfig &noise);

    const ProtocolSpec &spec() const {
        return spec_;
    }
    const NoiseConfig &noise() const {
        return noise_;
    }
    DensityRepresentation representation() const {
        return rep_;
    }
    const BasisPtr &basis() const {
        return basis_;
    }

    DensityState initial_state() const;
    void apply_step(DensityState &rho, size_t step_index, double gamma_in, double gamma_sh) const;
    /// Copy of the block over the target sector, in basis() order.
    Eigen::MatrixXcd target_block(const DensityState &rho) const;

   private:
    struct CompiledEvent {
        CollisionEvent event;
        std::vector<PairAction> per_block;
        bool droppable;
    };

    ProtocolSpec spec_;
    NoiseConfig noise_;
    DensityRepresentation rep_;
    BasisPtr basis_;
    KrausChannel channel_;
    std::vector<std::vector<CompiledEvent>> steps_;
};

/// Per-step fidelity under noise. With `readout` the Rz angles are applied before the overlap and
/// `kind` is ignored. The trajectory engine supports Phase fidelity and fixed readout only.
FidelityTrace run_noisy_trace(
    const ProtocolSpec &spec, double gamma_in, double gamma_sh, int rounds, const NoiseConfig &noise,
    FidelityKind kind = FidelityKind::Phase, const PhaseAngles *readout = nullptr,
    RzConvention convention = RzConvention::Standard);

/// Monte-Carlo unraveling of gate dropout. Trajectory i uses seed noise.seed + i.
FidelityTrace run_trajectories(
    const ProtocolSpec &spec, double gamma_in, double gamma_sh, int rounds, const NoiseConfig &noise,
    const PhaseAngles *readout = nullptr, RzConvention convention = RzConvention::Standard, int workers = 1);

BestFidelity best_noisy_fidelity_over_rounds(
    const NoisyEngine &engine, double gamma_in, double gamma_sh, int rounds, FidelityKind kind,
    int align_candidates = 8);

}  // namespace dickecm

#endif
