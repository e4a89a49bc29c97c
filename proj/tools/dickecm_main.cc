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

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>

#include "dickecm/commands.h"

namespace {

struct FlagSpec {
    const char *flag;
    const char *key;
    const char *help;
};

// Flags shared by every subcommand; each maps onto one config key.
constexpr FlagSpec kFlags[] = {
    {"--target", "target", "Dicke target as n,m"},
    {"--schedule", "schedule", "interleaved|factored"},
    {"--round-unit", "round_unit", "pass|round: what one counted step means"},
    {"--grid-spacing", "grid_spacing", "multi-start grid spacing in radians"},
    {"--rounds-max", "rounds_max", "counted steps simulated per loss evaluation (0: 200 m)"},
    {"--maxiter", "maxiter", "local solver iteration limit"},
    {"--ftol", "ftol", "local solver relative decrease tolerance"},
    {"--fd-step", "fd_step", "finite-difference step"},
    {"--memory", "memory", "limited-memory history length"},
    {"--seed", "seed", "base RNG seed"},
    {"--workers", "workers", "worker threads (0: DICKECM_WORKERS or hardware)"},
    {"--loss", "loss", "magnitude|phase|aligned"},
    {"--align-candidates", "align_candidates", "steps kept for Rz alignment inside the aligned loss"},
    {"--jitter", "jitter", "true|false: add seeded perturbations around each grid point"},
    {"--jitter-per-point", "jitter_per_point", "perturbations per grid point"},
    {"--noise", "noise", "axis=level with axis pmiss|dephasing|depolarizing|damping"},
    {"--p-miss", "p_miss", "gate dropout probability"},
    {"--channel", "channel", "none|dephasing|depolarizing|damping"},
    {"--q", "q", "channel strength"},
    {"--policy", "policy", "per_round_all_qubits|per_collision_participants"},
    {"--drop-intra", "drop_intra", "true|false: dropout also hits intra-register collisions"},
    {"--engine", "engine", "dm|traj:COUNT"},
    {"--representation", "representation", "auto|subspace_block|sector_blocks|full_space"},
    {"--rz-convention", "rz_convention", "standard|conjugate"},
    {"--gamma-in", "gamma_in", "intra-register collision strength"},
    {"--gamma-sh", "gamma_sh", "shuttle-register collision strength"},
    {"--rounds", "rounds", "counted steps to simulate"},
    {"--output", "output", "output directory"},
    {"--min-fidelity", "min_fidelity", "exit 4 when the final aligned fidelity is lower"},
    {"--table", "table", "controller table (.csv) or result records (.jsonl) to verify"},
    {"--threshold", "threshold", "verify pass threshold"},
    {"--verify-max-qubits", "verify_max_qubits", "largest n verified"},
    {"--axis", "axis", "sweep axis: pmiss|dephasing|depolarizing|damping"},
    {"--levels", "levels", "comma-separated sweep levels"},
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Collision-model Dicke-state preparation: simulation, controller synthesis, robustness sweeps"};
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, int (*)(const dickecm::RunConfig &, std::ostream &)> handlers = {
        {"simulate", dickecm::cmd_simulate},   {"optimize", dickecm::cmd_optimize},
        {"sweep", dickecm::cmd_sweep},         {"landscape", dickecm::cmd_landscape},
        {"verify", dickecm::cmd_verify},       {"schedule", dickecm::cmd_schedule},
    };
    std::map<std::string, const char *> blurbs = {
        {"simulate", "per-round fidelity trace at fixed collision strengths"},
        {"optimize", "multi-start controller synthesis plus Rz phase alignment"},
        {"sweep", "re-optimize across noise levels"},
        {"landscape", "loss on the start grid, with the refined incumbent"},
        {"verify", "re-evaluate the bundled controller table or saved records"},
        {"schedule", "export the collision schedule as JSON"},
    };
    std::map<std::string, CLI::App *> subs;
    for (const auto &[name, handler] : handlers) {
        auto *sub = app.add_subcommand(name, blurbs[name]);
        sub->add_option("--config", config_path, "key = value config file");
        for (const auto &f : kFlags) {
            sub->add_option(f.flag, values[name][f.key], f.help);
        }
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : dickecm::kExitConfig;
    }

    for (const auto &[name, sub] : subs) {
        if (!sub->parsed()) {
            continue;
        }
        try {
            dickecm::RunConfig config;
            if (!config_path.empty()) {
                config.load_file(config_path);
            }
            for (const auto &f : kFlags) {
                if (sub->count(f.flag)) {
                    config.set(f.key, values[name][f.key]);
                }
            }
            return handlers[name](config, std::cout);
        } catch (const std::exception &e) {
            std::cerr << "error: " << e.what() << "\n";
            return dickecm::exit_code_for(e);
        }
    }
    return dickecm::kExitConfig;
}
