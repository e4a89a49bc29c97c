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

#include <gtest/gtest.h>

#include <numbers>

#include "dickecm/errors.h"

using namespace dickecm;

namespace {

OptimizerConfig quick_config() {
    OptimizerConfig cfg;
    cfg.grid_spacing = 0.6;
    cfg.rounds_max = 40;
    cfg.maxiter = 30;
    cfg.workers = 2;
    return cfg;
}

}  // namespace

TEST(optimizer, grid_counts) {
    OptimizerConfig cfg;
    EXPECT_EQ(grid_axis(0, std::numbers::pi, 0.2).size(), 16u);
    EXPECT_EQ(grid_axis(0.01, std::numbers::pi, 0.2).size(), 16u);
    EXPECT_EQ(grid_points(cfg).size(), 256u);
    auto axis = grid_axis(0, 1, 0.25);
    ASSERT_EQ(axis.size(), 5u);
    EXPECT_DOUBLE_EQ(axis.back(), 1.0);
    EXPECT_THROW(grid_axis(0, 1, 1.5), ConfigError);
    cfg.grid_spacing = 4;
    EXPECT_THROW(multistart_optimize(ProtocolSpec::make(4, 2), cfg), ConfigError);
}

TEST(optimizer, resolved_rounds) {
    OptimizerConfig cfg;
    EXPECT_EQ(cfg.resolved_rounds(ProtocolSpec::make(5, 2)), 400);
    cfg.rounds_max = 7;
    EXPECT_EQ(cfg.resolved_rounds(ProtocolSpec::make(5, 2)), 7);
}

TEST(optimizer, loss_at_zero_angles) {
    for (auto kind : {FidelityKind::Phase, FidelityKind::Aligned}) {
        auto cfg = quick_config();
        cfg.loss_kind = kind;
        cfg.box = Box::uniform(2, 0, std::numbers::pi);
        LossFunction loss(ProtocolSpec::make(6, 2), cfg);
        auto v = loss(0, 0.5);
        auto z = LossFunction(ProtocolSpec::make(4, 2), cfg)(0, 0);
        EXPECT_NEAR(z.loss, 1 - 1.0 / 6, 1e-12);
        EXPECT_EQ(z.best_round, 1);
        EXPECT_LT(v.loss, 1);
    }
}

TEST(optimizer, loss_matches_trace_at_corners) {
    auto spec = ProtocolSpec::make(5, 2);
    auto cfg = quick_config();
    cfg.loss_kind = FidelityKind::Phase;
    LossFunction loss(spec, cfg);
    for (auto [gin, gsh] : {std::pair{0.0, 0.01}, {std::numbers::pi, std::numbers::pi}, {0.0, std::numbers::pi},
                            {std::numbers::pi, 0.01}, {1.2, 2.2}}) {
        auto v = loss(gin, gsh);
        auto trace = run_trace(spec, gin, gsh, 40, FidelityKind::Phase);
        EXPECT_EQ(v.loss, 1 - trace.best_value);
        EXPECT_EQ(v.best_round, trace.best_round);
    }
}

TEST(optimizer, longer_horizon_never_hurts) {
    auto spec = ProtocolSpec::make(5, 2);
    auto cfg = quick_config();
    cfg.loss_kind = FidelityKind::Phase;
    double prev = 1;
    for (int rounds : {5, 20, 80, 200}) {
        cfg.rounds_max = rounds;
        auto v = LossFunction(spec, cfg)(0.9, 1.7);
        EXPECT_LE(v.loss, prev + 1e-12);
        prev = v.loss;
    }
}

TEST(optimizer, better_solution_tie_break) {
    ControlSolution a{0.5, 0.5, 3, 0.1};
    ControlSolution b{0.4, 0.6, 3, 0.1};
    ControlSolution c{0.9, 0.9, 2, 0.1};
    ControlSolution d{0.9, 0.9, 9, 0.05};
    EXPECT_TRUE(better_solution(b, a));
    EXPECT_TRUE(better_solution(c, a));
    EXPECT_TRUE(better_solution(d, c));
    EXPECT_FALSE(better_solution(a, a));
}

TEST(optimizer, multistart_deterministic_across_workers) {
    auto spec = ProtocolSpec::make(4, 2);
    auto cfg = quick_config();
    cfg.workers = 1;
    auto a = multistart_optimize(spec, cfg);
    cfg.workers = 5;
    auto b = multistart_optimize(spec, cfg);
    EXPECT_EQ(a.solution.gamma_in, b.solution.gamma_in);
    EXPECT_EQ(a.solution.gamma_sh, b.solution.gamma_sh);
    EXPECT_EQ(a.solution.loss, b.solution.loss);
    EXPECT_EQ(a.solution.best_round, b.solution.best_round);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(optimizer, multistart_bookkeeping) {
    auto spec = ProtocolSpec::make(4, 2);
    auto cfg = quick_config();
    auto res = multistart_optimize(spec, cfg, nullptr, {{1.0, 1.0}});
    EXPECT_EQ(res.grid_starts, grid_points(cfg).size());
    EXPECT_EQ(res.starts.size(), res.grid_starts + 1);
    for (size_t i = 1; i < res.incumbent_history.size(); i++) {
        EXPECT_LE(res.incumbent_history[i], res.incumbent_history[i - 1]);
    }
    LossFunction loss(spec, cfg);
    for (const auto &rec : res.starts) {
        EXPECT_LE(rec.loss, loss(rec.start[0], rec.start[1]).loss);
        EXPECT_TRUE(cfg.box.contains(rec.x));
        EXPECT_GE(rec.loss, res.solution.loss);
    }
    EXPECT_EQ(res.incumbent_history.back(), res.solution.loss);
}

TEST(optimizer, jitter_is_seeded) {
    auto spec = ProtocolSpec::make(4, 2);
    auto cfg = quick_config();
    cfg.grid_spacing = 1.5;
    cfg.jitter = true;
    cfg.jitter_per_point = 2;
    auto a = multistart_optimize(spec, cfg);
    auto b = multistart_optimize(spec, cfg);
    ASSERT_EQ(a.starts.size(), grid_points(cfg).size() * 3);
    for (size_t i = 0; i < a.starts.size(); i++) {
        EXPECT_EQ(a.starts[i].start, b.starts[i].start);
    }
    cfg.seed = 2;
    auto c = multistart_optimize(spec, cfg);
    EXPECT_NE(a.starts[1].start, c.starts[1].start);
}

TEST(optimizer, small_target_reaches_high_fidelity) {
    auto spec = ProtocolSpec::make(4, 2);
    OptimizerConfig cfg;
    cfg.workers = 4;
    auto res = multistart_optimize(spec, cfg);
    attach_phases(spec, res.solution);
    ASSERT_TRUE(res.solution.fidelity_phase_aligned.has_value());
    EXPECT_GE(*res.solution.fidelity_phase_aligned, 0.95);
    EXPECT_GE(*res.solution.fidelity_phase_aligned, 1 - res.solution.loss - 1e-12);
    ASSERT_TRUE(res.solution.rz_angles.has_value());
    EXPECT_NEAR(aligned_fidelity(
                    [&] {
                        CollisionEngine engine(spec);
                        auto psi = initial_state(spec, engine.basis());
                        for (int r = 0; r < res.solution.best_round; r++) {
                            engine.apply_step(psi.amplitudes, r, res.solution.gamma_in, res.solution.gamma_sh);
                        }
                        return psi;
                    }(),
                    *res.solution.rz_angles, RzConvention::Standard),
                *res.solution.fidelity_phase_aligned, 1e-12);
}

TEST(optimizer, attach_phases_conjugate_negates_angles) {
    auto spec = ProtocolSpec::make(5, 2);
    ControlSolution s{0.4, 1.3, 6, 0.5};
    auto t = s;
    t.convention = RzConvention::Conjugate;
    attach_phases(spec, s);
    attach_phases(spec, t);
    EXPECT_EQ(*s.fidelity_phase_aligned, *t.fidelity_phase_aligned);
    for (size_t j = 0; j < s.rz_angles->thetas.size(); j++) {
        EXPECT_EQ(s.rz_angles->thetas[j], -t.rz_angles->thetas[j]);
    }
}

TEST(optimizer, noisy_loss_and_sweep) {
    auto spec = ProtocolSpec::make(4, 2);
    auto cfg = quick_config();
    NoiseConfig clean;
    EXPECT_EQ(LossFunction(spec, cfg, &clean)(0.7, 1.1).loss, LossFunction(spec, cfg)(0.7, 1.1).loss);

    auto sweep = sweep_noise(spec, cfg, NoiseAxis::PMiss, {0.0, 0.1});
    ASSERT_EQ(sweep.entries.size(), 2u);
    EXPECT_EQ(sweep.entries[0].reoptimized.loss, sweep.noiseless.loss);
    const auto &e = sweep.entries[1];
    EXPECT_EQ(e.noise.p_miss, 0.1);
    EXPECT_GE(1 - e.reoptimized.loss, e.frozen_fidelity);
    EXPECT_THROW(sweep_noise(spec, cfg, NoiseAxis::PMiss, {1.5}), DomainError);

    auto deph = noise_at(NoiseAxis::Dephasing, 0.02);
    EXPECT_EQ(deph.channel, ChannelLabel::Dephasing);
    EXPECT_EQ(deph.q, 0.02);
    EXPECT_EQ(parse_noise_axis("damping"), NoiseAxis::Damping);
}

TEST(optimizer, landscape_covers_grid) {
    auto cfg = quick_config();
    auto spec = ProtocolSpec::make(4, 2);
    auto land = loss_landscape(spec, cfg);
    auto pts = grid_points(cfg);
    ASSERT_EQ(land.size(), pts.size());
    LossFunction loss(spec, cfg);
    EXPECT_EQ(land[3].loss, loss(pts[3][0], pts[3][1]).loss);
}
