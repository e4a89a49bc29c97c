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

#include "dickecm/optimizer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "dickecm/errors.h"
#include "dickecm/parallel.h"

namespace dickecm {

Box OptimizerConfig::default_box() {
    return Box{{0.0, 0.01}, {std::numbers::pi, std::numbers::pi}};
}

int OptimizerConfig::resolved_rounds(const ProtocolSpec &spec) const {
    return rounds_max > 0 ? rounds_max : 200 * spec.num_excitations;
}

void OptimizerConfig::validate() const {
    if (!(grid_spacing > 0)) {
        throw ConfigError("grid spacing must be positive");
    }
    if (rounds_max < 0) {
        throw ConfigError("rounds_max must be positive (or 0 for the default)");
    }
    if (maxiter < 1) {
        throw ConfigError("maxiter must be at least 1");
    }
    if (!(ftol > 0)) {
        throw ConfigError("ftol must be positive");
    }
    if (!(fd_step > 0)) {
        throw ConfigError("fd_step must be positive");
    }
    if (memory < 1) {
        throw ConfigError("memory must be at least 1");
    }
    if (align_candidates < 1) {
        throw ConfigError("align_candidates must be at least 1");
    }
    if (jitter && jitter_per_point < 1) {
        throw ConfigError("jitter_per_point must be at least 1");
    }
    if (box.dim() != 2) {
        throw ConfigError("control box must be two-dimensional");
    }
    try {
        box.validate();
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
}

LossFunction::LossFunction(const ProtocolSpec &spec, const OptimizerConfig &config, const NoiseConfig *noise)
    : spec_(spec), config_(config), rounds_(config.resolved_rounds(spec)) {
    config_.validate();
    if (noise == nullptr || noise->is_noiseless()) {
        pure_.emplace(spec_);
    } else if (noise->engine == NoiseEngineKind::Trajectories) {
        if (config_.loss_kind != FidelityKind::Phase) {
            throw ConfigError("the trajectory engine only supports the phase loss");
        }
        trajectories_ = *noise;
    } else {
        noisy_.emplace(spec_, *noise);
    }
}

LossValue LossFunction::operator()(double gamma_in, double gamma_sh) const {
    if (!std::isfinite(gamma_in) || !std::isfinite(gamma_sh)) {
        throw NumericalError("collision strengths must be finite");
    }
    gamma_in = std::clamp(gamma_in, config_.box.lo[0], config_.box.hi[0]);
    gamma_sh = std::clamp(gamma_sh, config_.box.lo[1], config_.box.hi[1]);
    BestFidelity best;
    if (pure_) {
        best = best_fidelity_over_rounds(
            *pure_, gamma_in, gamma_sh, rounds_, config_.loss_kind, config_.align_candidates);
    } else if (noisy_) {
        best = best_noisy_fidelity_over_rounds(
            *noisy_, gamma_in, gamma_sh, rounds_, config_.loss_kind, config_.align_candidates);
    } else {
        auto trace = run_trajectories(spec_, gamma_in, gamma_sh, rounds_, *trajectories_);
        best = {trace.best_value, trace.best_round};
    }
    if (std::isnan(best.value)) {
        throw NumericalError("loss evaluated to NaN");
    }
    return {std::clamp(1 - best.value, 0.0, 1.0), best.round};
}

bool better_solution(const ControlSolution &a, const ControlSolution &b) {
    if (a.loss != b.loss) {
        return a.loss < b.loss;
    }
    if (a.best_round != b.best_round) {
        return a.best_round < b.best_round;
    }
    if (a.gamma_in != b.gamma_in) {
        return a.gamma_in < b.gamma_in;
    }
    return a.gamma_sh < b.gamma_sh;
}

std::vector<double> grid_axis(double lo, double hi, double spacing) {
    if (!(spacing > 0)) {
        throw ConfigError("grid spacing must be positive");
    }
    if (spacing > hi - lo) {
        throw ConfigError("grid spacing exceeds the box width; the grid would be empty");
    }
    std::vector<double> axis;
    long count = static_cast<long>(std::floor((hi - lo) / spacing + 1e-9));
    for (long k = 0; k < count; k++) {
        axis.push_back(lo + static_cast<double>(k) * spacing);
    }
    // The last point sits on the upper face.
    axis.push_back(hi);
    return axis;
}

std::vector<ControlPoint> grid_points(const OptimizerConfig &config) {
    auto in = grid_axis(config.box.lo[0], config.box.hi[0], config.grid_spacing);
    auto sh = grid_axis(config.box.lo[1], config.box.hi[1], config.grid_spacing);
    std::vector<ControlPoint> points;
    for (double a : in) {
        for (double b : sh) {
            points.push_back({a, b});
        }
    }
    return points;
}

MultistartResult multistart_optimize(const ProtocolSpec &spec, const OptimizerConfig &config,
                                     const NoiseConfig *noise, const std::vector<ControlPoint> &extra_starts) {
    auto t0 = std::chrono::steady_clock::now();
    config.validate();
    LossFunction loss(spec, config, noise);

    std::vector<ControlPoint> starts = grid_points(config);
    MultistartResult out;
    if (config.jitter) {
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> offset(-config.grid_spacing / 2, config.grid_spacing / 2);
        std::vector<ControlPoint> jittered;
        for (const auto &p : starts) {
            jittered.push_back(p);
            for (int k = 0; k < config.jitter_per_point; k++) {
                ControlPoint q{p[0] + offset(rng), p[1] + offset(rng)};
                config.box.project(q);
                jittered.push_back(q);
            }
        }
        starts = std::move(jittered);
    }
    out.grid_starts = starts.size();
    for (auto p : extra_starts) {
        config.box.project(p);
        starts.push_back(p);
    }

    LbfgsbOptions lopt;
    lopt.maxiter = config.maxiter;
    lopt.ftol = config.ftol;
    lopt.fd_step = config.fd_step;
    lopt.memory = config.memory;

    out.starts.resize(starts.size());
    parallel_for(starts.size(), config.workers, [&](size_t i) {
        Objective f = [&](std::span<const double> x) {
            return loss(x[0], x[1]).loss;
        };
        auto r = lbfgsb_minimize(f, {starts[i][0], starts[i][1]}, config.box, lopt);
        auto v = loss(r.x[0], r.x[1]);
        StartRecord &rec = out.starts[i];
        rec.start = starts[i];
        rec.x = {r.x[0], r.x[1]};
        rec.loss = v.loss;
        rec.best_round = v.best_round;
        rec.iterations = r.iterations;
        rec.evaluations = r.evaluations + 1;
        rec.reason = r.reason;
    });

    ControlSolution best;
    bool have = false;
    for (const auto &rec : out.starts) {
        ControlSolution cand;
        cand.gamma_in = rec.x[0];
        cand.gamma_sh = rec.x[1];
        cand.loss = rec.loss;
        cand.best_round = rec.best_round;
        if (!have || better_solution(cand, best)) {
            best = cand;
            have = true;
        }
        out.incumbent_history.push_back(best.loss);
        out.evaluations += rec.evaluations;
    }
    out.solution = best;
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

AlignmentOptions final_alignment_options(RzConvention convention) {
    AlignmentOptions opt;
    opt.convention = convention;
    opt.random_starts = 8;
    return opt;
}

AlignmentResult optimize_phases(const ProtocolSpec &spec, double gamma_in, double gamma_sh, int r_star,
                                const AlignmentOptions &options) {
    if (r_star < 1) {
        throw DomainError("phase optimization needs r_star >= 1");
    }
    CollisionEngine engine(spec);
    PureState psi = initial_state(spec, engine.basis());
    for (int r = 0; r < r_star; r++) {
        engine.apply_step(psi.amplitudes, r, gamma_in, gamma_sh);
    }
    return align_phases(psi, options);
}

AlignmentResult optimize_phases(const ProtocolSpec &spec, double gamma_in, double gamma_sh, int r_star,
                                const NoiseConfig &noise, const AlignmentOptions &options) {
    if (noise.is_noiseless()) {
        return optimize_phases(spec, gamma_in, gamma_sh, r_star, options);
    }
    if (r_star < 1) {
        throw DomainError("phase optimization needs r_star >= 1");
    }
    NoiseConfig dm = noise;
    dm.engine = NoiseEngineKind::DensityMatrix;
    NoisyEngine engine(spec, dm);
    DensityState rho = engine.initial_state();
    for (int r = 0; r < r_star; r++) {
        engine.apply_step(rho, r, gamma_in, gamma_sh);
    }
    return align_phases(engine.target_block(rho), *engine.basis(), options);
}

void attach_phases(const ProtocolSpec &spec, ControlSolution &solution, const NoiseConfig *noise) {
    // Aligned under the standard convention so the in-loss starts are reproduced exactly.
    auto opt = final_alignment_options(RzConvention::Standard);
    AlignmentResult a = noise ? optimize_phases(spec, solution.gamma_in, solution.gamma_sh, solution.best_round,
                                                *noise, opt)
                              : optimize_phases(spec, solution.gamma_in, solution.gamma_sh, solution.best_round, opt);
    if (solution.convention == RzConvention::Conjugate) {
        for (auto &t : a.angles.thetas) {
            t = -t;
        }
    }
    solution.rz_angles = a.angles;
    solution.fidelity_phase_aligned = a.fidelity;
}

const char *noise_axis_name(NoiseAxis axis) {
    switch (axis) {
        case NoiseAxis::PMiss:
            return "pmiss";
        case NoiseAxis::Dephasing:
            return "dephasing";
        case NoiseAxis::Depolarizing:
            return "depolarizing";
        case NoiseAxis::Damping:
            return "damping";
    }
    return "?";
}

NoiseAxis parse_noise_axis(const std::string &text) {
    if (text == "pmiss" || text == "p_miss") {
        return NoiseAxis::PMiss;
    }
    if (text == "dephasing") {
        return NoiseAxis::Dephasing;
    }
    if (text == "depolarizing") {
        return NoiseAxis::Depolarizing;
    }
    if (text == "damping" || text == "amplitude_damping") {
        return NoiseAxis::Damping;
    }
    throw ConfigError("unknown noise axis '" + text + "' (expected pmiss|dephasing|depolarizing|damping)");
}

NoiseConfig noise_at(NoiseAxis axis, double level, const NoiseConfig &base) {
    NoiseConfig n = base;
    switch (axis) {
        case NoiseAxis::PMiss:
            n.p_miss = level;
            break;
        case NoiseAxis::Dephasing:
            n.channel = ChannelLabel::Dephasing;
            n.q = level;
            break;
        case NoiseAxis::Depolarizing:
            n.channel = ChannelLabel::Depolarizing;
            n.q = level;
            break;
        case NoiseAxis::Damping:
            n.channel = ChannelLabel::AmplitudeDamping;
            n.q = level;
            break;
    }
    n.validate();
    return n;
}

SweepResult sweep_noise(const ProtocolSpec &spec, const OptimizerConfig &config, NoiseAxis axis,
                        const std::vector<double> &levels, const NoiseConfig &base, const ControlSolution *noiseless) {
    for (double level : levels) {
        if (!(level >= 0 && level <= 1)) {
            throw DomainError("noise levels must lie in [0, 1]");
        }
    }
    SweepResult out;
    if (noiseless != nullptr) {
        out.noiseless = *noiseless;
    } else {
        out.noiseless = multistart_optimize(spec, config).solution;
        attach_phases(spec, out.noiseless);
    }
    const ControlPoint seed_point{out.noiseless.gamma_in, out.noiseless.gamma_sh};
    for (double level : levels) {
        auto t0 = std::chrono::steady_clock::now();
        SweepEntry e;
        e.level = level;
        e.noise = noise_at(axis, level, base);
        if (e.noise.is_noiseless()) {
            e.reoptimized = out.noiseless;
            e.frozen_fidelity = 1 - out.noiseless.loss;
            e.frozen_round = out.noiseless.best_round;
        } else {
            LossFunction loss(spec, config, &e.noise);
            auto frozen = loss(seed_point[0], seed_point[1]);
            e.frozen_fidelity = 1 - frozen.loss;
            e.frozen_round = frozen.best_round;
            e.reoptimized = multistart_optimize(spec, config, &e.noise, {seed_point}).solution;
            e.reoptimized.convention = out.noiseless.convention;
            attach_phases(spec, e.reoptimized, &e.noise);
        }
        e.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.entries.push_back(std::move(e));
    }
    return out;
}

std::vector<LandscapePoint> loss_landscape(const ProtocolSpec &spec, const OptimizerConfig &config,
                                           const NoiseConfig *noise) {
    config.validate();
    LossFunction loss(spec, config, noise);
    auto points = grid_points(config);
    std::vector<LandscapePoint> out(points.size());
    parallel_for(points.size(), config.workers, [&](size_t i) {
        auto v = loss(points[i][0], points[i][1]);
        out[i] = {points[i][0], points[i][1], v.loss, v.best_round};
    });
    return out;
}

}  // namespace dickecm
