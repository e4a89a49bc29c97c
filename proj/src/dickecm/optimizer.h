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

#ifndef DICKECM_OPTIMIZER_H
#define DICKECM_OPTIMIZER_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dickecm/lbfgsb.h"
#include "dickecm/noise.h"
#include "dickecm/phase_align.h"
#include "dickecm/protocol.h"

namespace dickecm {

/// Coordinates are ordered (gamma_in, gamma_sh) throughout.
using ControlPoint = std::array<double, 2>;

struct OptimizerConfig {
    double grid_spacing = 0.2;
    /// 0 selects 200 m counted steps.
    int rounds_max = 0;
    int maxiter = 100;
    double ftol = 1e-6;
    double fd_step = 1e-4;
    int memory = 10;
    /// 0 selects default_worker_count().
    int workers = 0;
    FidelityKind loss_kind = FidelityKind::Aligned;
    /// Steps kept for Rz alignment when the loss is Aligned.
    int align_candidates = 8;
    /// Adds jitter_per_point seeded perturbations inside each grid cell.
    bool jitter = false;
    int jitter_per_point = 100;
    uint64_t seed = 1;
    Box box = default_box();

    static Box default_box();
    int resolved_rounds(const ProtocolSpec &spec) const;
    void validate() const;
};

struct LossValue {
    double loss = 1;
    int best_round = 0;
};

/// min over counted steps r of 1 - F_r, with the earliest minimizing step.
class LossFunction {
   public:
    LossFunction(const ProtocolSpec &spec, const OptimizerConfig &config, const NoiseConfig *noise = nullptr);

    /// Clamps to the box before simulating. Throws NumericalError on NaN.
    LossValue operator()(double gamma_in, double gamma_sh) const;

    int rounds() const {
        return rounds_;
    }
    const Box &box() const {
        return config_.box;
    }

   private:
    ProtocolSpec spec_;
    OptimizerConfig config_;
    int rounds_;
    std::optional<CollisionEngine> pure_;
    std::optional<NoisyEngine> noisy_;
    std::optional<NoiseConfig> trajectories_;
};

struct ControlSolution {
    double gamma_in = 0;
    double gamma_sh = 0;
    int best_round = 0;
    double loss = 1;
    std::optional<PhaseAngles> rz_angles;
    std::optional<double> fidelity_phase_aligned;
    RzConvention convention = RzConvention::Standard;
};

/// Strict ordering used to pick incumbents: loss, then round, then (gamma_in, gamma_sh).
bool better_solution(const ControlSolution &a, const ControlSolution &b);

struct StartRecord {
    ControlPoint start{};
    ControlPoint x{};
    double loss = 1;
    int best_round = 0;
    int iterations = 0;
    int evaluations = 0;
    Termination reason = Termination::MaxIterations;
};

struct MultistartResult {
    ControlSolution solution;
    std::vector<StartRecord> starts;
    /// Incumbent loss after each start, in start order.
    std::vector<double> incumbent_history;
    size_t grid_starts = 0;
    long evaluations = 0;
    double wall_seconds = 0;
};

/// lo + k spacing for k = 0, 1, ... while <= hi. Throws ConfigError when spacing exceeds the width.
std::vector<double> grid_axis(double lo, double hi, double spacing);
std::vector<ControlPoint> grid_points(const OptimizerConfig &config);

MultistartResult multistart_optimize(
    const ProtocolSpec &spec, const OptimizerConfig &config, const NoiseConfig *noise = nullptr,
    const std::vector<ControlPoint> &extra_starts = {});

/// Alignment settings for final controllers: more random starts than the in-loss alignment, whose
/// starts form a prefix of these.
AlignmentOptions final_alignment_options(RzConvention convention = RzConvention::Standard);

AlignmentResult optimize_phases(
    const ProtocolSpec &spec, double gamma_in, double gamma_sh, int r_star,
    const AlignmentOptions &options = final_alignment_options());
AlignmentResult optimize_phases(
    const ProtocolSpec &spec, double gamma_in, double gamma_sh, int r_star, const NoiseConfig &noise,
    const AlignmentOptions &options = final_alignment_options());

/// Fills rz_angles and fidelity_phase_aligned of `solution`.
void attach_phases(const ProtocolSpec &spec, ControlSolution &solution, const NoiseConfig *noise = nullptr);

enum class NoiseAxis {
    PMiss,
    Dephasing,
    Depolarizing,
    Damping,
};

const char *noise_axis_name(NoiseAxis axis);
NoiseAxis parse_noise_axis(const std::string &text);
NoiseConfig noise_at(NoiseAxis axis, double level, const NoiseConfig &base = {});

struct SweepEntry {
    double level = 0;
    NoiseConfig noise;
    ControlSolution reoptimized;
    /// 1 - loss at the noiseless controller's collision strengths under this level's noise.
    double frozen_fidelity = 0;
    int frozen_round = 0;
    double wall_seconds = 0;
};

struct SweepResult {
    ControlSolution noiseless;
    std::vector<SweepEntry> entries;
};

/// Re-optimizes at every level, seeding each run with the noiseless controller. A precomputed
/// noiseless solution may be passed in.
SweepResult sweep_noise(
    const ProtocolSpec &spec, const OptimizerConfig &config, NoiseAxis axis, const std::vector<double> &levels,
    const NoiseConfig &base = {}, const ControlSolution *noiseless = nullptr);

struct LandscapePoint {
    double gamma_in = 0;
    double gamma_sh = 0;
    double loss = 1;
    int best_round = 0;
};

std::vector<LandscapePoint> loss_landscape(
    const ProtocolSpec &spec, const OptimizerConfig &config, const NoiseConfig *noise = nullptr);

}  // namespace dickecm

#endif
