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

#include "dickecm/commands.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dickecm/errors.h"
#include "dickecm/phase_align.h"
#include "dickecm/records.h"

namespace dickecm {

namespace {

namespace fs = std::filesystem;

std::string prepare_output(const RunConfig &config) {
    std::error_code ec;
    fs::create_directories(config.output, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + config.output + "': " + ec.message());
    }
    std::ofstream(fs::path(config.output) / "resolved_config.txt") << config.dump();
    return config.output;
}

std::ofstream open_out(const RunConfig &config, const std::string &name) {
    std::ofstream f(fs::path(config.output) / name);
    if (!f) {
        throw ConfigError("cannot write '" + (fs::path(config.output) / name).string() + "'");
    }
    return f;
}

std::string jsonl_path(const RunConfig &config) {
    return (fs::path(config.output) / "results.jsonl").string();
}

const NoiseConfig *noise_or_null(const RunConfig &config) {
    return config.noise.is_noiseless() ? nullptr : &config.noise;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<double> default_levels(NoiseAxis axis) {
    if (axis == NoiseAxis::PMiss) {
        return {0, 0.05, 0.1, 0.15, 0.2};
    }
    return {0, 0.01, 0.02, 0.05};
}

}  // namespace

int cmd_simulate(const RunConfig &config, std::ostream &out) {
    auto spec = config.spec();
    if (!config.gamma_in || !config.gamma_sh) {
        throw ConfigError("simulate needs explicit --gamma-in and --gamma-sh");
    }
    config.noise.validate();
    prepare_output(config);
    int rounds = config.resolved_rounds();
    FidelityTrace phase;
    FidelityTrace magnitude;
    if (config.noise.is_noiseless()) {
        phase = run_trace(spec, *config.gamma_in, *config.gamma_sh, rounds, FidelityKind::Phase);
        magnitude = run_trace(spec, *config.gamma_in, *config.gamma_sh, rounds, FidelityKind::Magnitude);
    } else if (config.noise.engine == NoiseEngineKind::Trajectories) {
        phase = run_trajectories(spec, *config.gamma_in, *config.gamma_sh, rounds, config.noise, nullptr,
                                 config.rz_convention, config.optimizer.workers);
    } else {
        phase = run_noisy_trace(spec, *config.gamma_in, *config.gamma_sh, rounds, config.noise, FidelityKind::Phase);
        magnitude =
            run_noisy_trace(spec, *config.gamma_in, *config.gamma_sh, rounds, config.noise, FidelityKind::Magnitude);
    }
    auto f = open_out(config, "trace.csv");
    write_trace_csv(f, phase, magnitude);
    out << spec.describe() << " gamma_in=" << format_sig12(*config.gamma_in)
        << " gamma_sh=" << format_sig12(*config.gamma_sh) << " rounds=" << rounds << "\n";
    out << "best phase fidelity " << format_sig12(phase.best_value) << " at round " << phase.best_round << "\n";
    if (!magnitude.values.empty()) {
        out << "best magnitude fidelity " << format_sig12(magnitude.best_value) << " at round "
            << magnitude.best_round << "\n";
    }
    return kExitOk;
}

int cmd_optimize(const RunConfig &config, std::ostream &out) {
    auto t0 = std::chrono::steady_clock::now();
    auto spec = config.spec();
    config.noise.validate();
    prepare_output(config);
    OptimizerConfig opt = config.optimizer;
    opt.rounds_max = config.optimizer.resolved_rounds(spec);
    auto result = multistart_optimize(spec, opt, noise_or_null(config));
    ControlSolution sol = result.solution;
    sol.convention = config.rz_convention;
    attach_phases(spec, sol, noise_or_null(config));
    double wall = seconds_since(t0);
    append_jsonl(jsonl_path(config),
                 make_record("optimize", spec, sol, config.noise.describe(), wall, config.hash()));
    out << spec.describe() << " starts=" << result.starts.size() << " evaluations=" << result.evaluations << "\n";
    out << "gamma_in=" << format_sig12(sol.gamma_in) << " gamma_sh=" << format_sig12(sol.gamma_sh)
        << " round=" << sol.best_round << " loss=" << format_sig12(sol.loss) << " ("
        << fidelity_kind_name(opt.loss_kind) << ")\n";
    out << "phase-aligned fidelity " << format_sig12(*sol.fidelity_phase_aligned) << " rz ("
        << rz_convention_name(sol.convention) << ") [";
    for (size_t i = 0; i < sol.rz_angles->thetas.size(); i++) {
        out << (i ? ", " : "") << fmt("%.3f", sol.rz_angles->thetas[i]);
    }
    out << "]\nwall " << fmt("%.1f", wall) << " s, config " << config.hash() << "\n";
    if (*sol.fidelity_phase_aligned < config.min_fidelity) {
        out << "quality gate: fidelity below " << config.min_fidelity << "\n";
        return kExitQuality;
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig &config, std::ostream &out) {
    auto spec = config.spec();
    NoiseAxis axis = parse_noise_axis(config.axis);
    auto levels = config.levels.empty() ? default_levels(axis) : config.levels;
    prepare_output(config);
    OptimizerConfig opt = config.optimizer;
    opt.rounds_max = config.optimizer.resolved_rounds(spec);

    // The noiseless controller is computed once, under the base noise settings with levels zeroed.
    NoiseConfig base = config.noise;
    base.p_miss = 0;
    base.q = 0;
    base.channel = ChannelLabel::Identity;
    auto sweep = sweep_noise(spec, opt, axis, levels, base);

    auto csv = open_out(config, std::string("sweep_") + noise_axis_name(axis) + ".csv");
    csv << "n,m,channel,q_or_pmiss,gamma_in,gamma_sh,best_round,fidelity,stderr,frozen_fidelity,frozen_round,"
           "fidelity_phase_aligned\n";
    for (const auto &e : sweep.entries) {
        const auto &s = e.reoptimized;
        csv << spec.num_qubits << "," << spec.num_excitations << "," << noise_axis_name(axis) << ","
            << format_sig12(e.level) << "," << format_sig12(s.gamma_in) << "," << format_sig12(s.gamma_sh) << ","
            << s.best_round << "," << format_sig12(1 - s.loss) << ",0," << format_sig12(e.frozen_fidelity) << ","
            << e.frozen_round << "," << format_sig12(s.fidelity_phase_aligned.value_or(1 - s.loss)) << "\n";
        append_jsonl(jsonl_path(config),
                     make_record("sweep", spec, s, e.noise.describe(), e.wall_seconds, config.hash()));
        out << noise_axis_name(axis) << "=" << fmt("%.3f", e.level) << "  reoptimized " << fmt("%.5f", 1 - s.loss)
            << " (round " << s.best_round << ")  frozen " << fmt("%.5f", e.frozen_fidelity) << "\n";
    }
    return kExitOk;
}

int cmd_landscape(const RunConfig &config, std::ostream &out) {
    auto spec = config.spec();
    config.noise.validate();
    prepare_output(config);
    OptimizerConfig opt = config.optimizer;
    opt.rounds_max = config.optimizer.resolved_rounds(spec);
    auto grid = loss_landscape(spec, opt, noise_or_null(config));
    auto refined = multistart_optimize(spec, opt, noise_or_null(config));
    ControlPoint winner{};
    for (const auto &s : refined.starts) {
        if (s.x[0] == refined.solution.gamma_in && s.x[1] == refined.solution.gamma_sh &&
            s.loss == refined.solution.loss) {
            winner = s.start;
            break;
        }
    }
    auto csv = open_out(config, "landscape.csv");
    csv << "gamma_in,gamma_sh,loss,best_round,incumbent_start\n";
    double grid_min = 1;
    for (const auto &p : grid) {
        bool mark = p.gamma_in == winner[0] && p.gamma_sh == winner[1];
        csv << format_sig12(p.gamma_in) << "," << format_sig12(p.gamma_sh) << "," << format_sig12(p.loss) << ","
            << p.best_round << "," << (mark ? 1 : 0) << "\n";
        grid_min = std::min(grid_min, p.loss);
    }
    append_jsonl(jsonl_path(config),
                 make_record("landscape", spec, refined.solution, config.noise.describe(), refined.wall_seconds,
                             config.hash()));
    out << grid.size() << " grid points, minimum grid loss " << format_sig12(grid_min) << "\n";
    out << "refined incumbent gamma_in=" << format_sig12(refined.solution.gamma_in)
        << " gamma_sh=" << format_sig12(refined.solution.gamma_sh) << " loss=" << format_sig12(refined.solution.loss)
        << " round=" << refined.solution.best_round << "\n";
    return kExitOk;
}

namespace {

struct VariantReport {
    ScheduleVariant variant;
    double table_standard = 0;
    double table_conjugate = 0;
    double realigned = 0;
    BestFidelity argbest;
};

VariantReport evaluate_row(const TableRow &row, ScheduleVariant variant, RoundUnit unit, int rounds_max) {
    auto spec = ProtocolSpec::make(row.n, row.m, variant, unit);
    CollisionEngine engine(spec);
    PureState psi = initial_state(spec, engine.basis());
    for (int r = 0; r < row.rounds; r++) {
        engine.apply_step(psi.amplitudes, r, row.gamma_in, row.gamma_sh);
    }
    VariantReport rep;
    rep.variant = variant;
    PhaseAngles angles{row.rz_angles};
    rep.table_standard = aligned_fidelity(psi, angles, RzConvention::Standard);
    rep.table_conjugate = aligned_fidelity(psi, angles, RzConvention::Conjugate);
    rep.realigned = align_phases(psi, final_alignment_options()).fidelity;
    rep.argbest = best_fidelity_over_rounds(engine, row.gamma_in, row.gamma_sh, rounds_max, FidelityKind::Aligned);
    return rep;
}

int verify_records(const RunConfig &config, std::ostream &out) {
    auto records = read_jsonl(config.table);
    auto csv = open_out(config, "verify_records.csv");
    csv << "n,m,schedule,round_unit,rounds,stored_fidelity,recomputed_fidelity,abs_diff\n";
    for (const auto &r : records) {
        if (!r.rz_angles || !r.fidelity_phase_aligned) {
            continue;
        }
        auto spec = ProtocolSpec::make(r.n, r.m, parse_schedule_variant(r.schedule), parse_round_unit(r.round_unit));
        RzConvention conv = r.rz_convention == "conjugate" ? RzConvention::Conjugate : RzConvention::Standard;
        PhaseAngles angles{*r.rz_angles};
        double f;
        if (r.noise.rfind("p_miss=0 channel=none", 0) == 0) {
            CollisionEngine engine(spec);
            PureState psi = initial_state(spec, engine.basis());
            for (int k = 0; k < r.rounds; k++) {
                engine.apply_step(psi.amplitudes, k, r.gamma_in, r.gamma_sh);
            }
            f = aligned_fidelity(psi, angles, conv);
        } else {
            out << "skipping noisy record for D_" << r.n << "^(" << r.m << ")\n";
            continue;
        }
        double diff = std::abs(f - *r.fidelity_phase_aligned);
        csv << r.n << "," << r.m << "," << r.schedule << "," << r.round_unit << "," << r.rounds << ","
            << format_sig12(*r.fidelity_phase_aligned) << "," << format_sig12(f) << "," << fmt("%.3g", diff) << "\n";
        out << "D_" << r.n << "^(" << r.m << ") stored " << fmt("%.6f", *r.fidelity_phase_aligned) << " recomputed "
            << fmt("%.6f", f) << (diff < 1e-8 ? "  ok" : "  MISMATCH") << "\n";
    }
    return kExitOk;
}

}  // namespace

int cmd_verify(const RunConfig &config, std::ostream &out) {
    prepare_output(config);
    if (config.table.size() >= 6 && config.table.substr(config.table.size() - 6) == ".jsonl") {
        return verify_records(config, out);
    }
    auto rows = load_table(config.table.empty() ? default_table_path() : config.table);
    auto csv = open_out(config, "verify.csv");
    csv << "n,m,schedule,rounds,table_fidelity_standard,table_fidelity_conjugate,realigned_fidelity,"
           "argbest_round,argbest_fidelity,status\n";
    for (const auto &row : rows) {
        if (row.n > config.verify_max_qubits) {
            out << "D_" << row.n << "^(" << row.m << ") skipped (n > " << config.verify_max_qubits << ")\n";
            continue;
        }
        int rounds_max = config.optimizer.rounds_max > 0 ? config.optimizer.rounds_max : 200 * row.m;
        double best_aligned = 0;
        std::vector<VariantReport> reps;
        for (auto variant : {ScheduleVariant::Interleaved, ScheduleVariant::Factored}) {
            reps.push_back(evaluate_row(row, variant, config.round_unit, rounds_max));
            best_aligned = std::max({best_aligned, reps.back().table_standard, reps.back().table_conjugate,
                                   reps.back().realigned});
        }
        const char *status = best_aligned >= config.threshold ? "PASS" : "WARN";
        for (const auto &rep : reps) {
            csv << row.n << "," << row.m << "," << schedule_variant_name(rep.variant) << "," << row.rounds << ","
                << format_sig12(rep.table_standard) << "," << format_sig12(rep.table_conjugate) << ","
                << format_sig12(rep.realigned) << "," << rep.argbest.round << "," << format_sig12(rep.argbest.value)
                << "," << status << "\n";
        }
        out << status << " D_" << row.n << "^(" << row.m << ") rounds=" << row.rounds;
        for (const auto &rep : reps) {
            out << "  " << schedule_variant_name(rep.variant) << ": table " << fmt("%.4f", rep.table_standard) << "/"
                << fmt("%.4f", rep.table_conjugate) << " realigned " << fmt("%.4f", rep.realigned) << " argbest "
                << fmt("%.4f", rep.argbest.value) << "@" << rep.argbest.round;
        }
        out << "\n";
    }
    return kExitOk;
}

int cmd_schedule(const RunConfig &config, std::ostream &out) {
    auto spec = config.spec();
    prepare_output(config);
    auto json = schedule_json(spec);
    open_out(config, "schedule.json") << json << "\n";
    out << json << "\n";
    return kExitOk;
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const CapacityError *>(&e)) {
        return kExitCapacity;
    }
    if (dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const DomainError *>(&e) ||
        dynamic_cast<const RepresentationError *>(&e)) {
        return kExitConfig;
    }
    return 1;
}

}  // namespace dickecm
