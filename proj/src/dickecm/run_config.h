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

#ifndef DICKECM_RUN_CONFIG_H
#define DICKECM_RUN_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dickecm/noise.h"
#include "dickecm/optimizer.h"
#include "dickecm/protocol.h"

namespace dickecm {

uint64_t fnv1a64(std::string_view data);

struct RunConfig {
    int n = 0;
    int m = 0;
    ScheduleVariant schedule = ScheduleVariant::Interleaved;
    RoundUnit round_unit = RoundUnit::Pass;
    OptimizerConfig optimizer;
    NoiseConfig noise;
    RzConvention rz_convention = RzConvention::Standard;

    std::optional<double> gamma_in;
    std::optional<double> gamma_sh;
    /// Counted steps for simulate; 0 uses the optimizer's rounds_max.
    int rounds = 0;

    std::string output = "out";
    /// Quality gate for optimize: exit 4 when the aligned fidelity falls below.
    double min_fidelity = 0;

    std::string table;
    double threshold = 0.9;
    int verify_max_qubits = 10;

    std::string axis = "pmiss";
    std::vector<double> levels;

    /// Sets one key; throws ConfigError on unknown keys or unparsable values.
    void set(const std::string &key, const std::string &value);
    /// Reads `key = value` lines; '#' starts a comment.
    void load_file(const std::string &path);
    /// Sorted `key = value` lines covering every key.
    std::string dump() const;
    /// Hex FNV-1a of dump().
    std::string hash() const;

    bool has_target() const {
        return n > 0;
    }
    /// Throws ConfigError when no target is set.
    ProtocolSpec spec() const;
    int resolved_rounds() const;

    static std::vector<std::string> keys();
};

/// "n,m" pair.
std::pair<int, int> parse_target(const std::string &text);
/// "axis=level", applied to `noise`.
void apply_noise_flag(NoiseConfig &noise, const std::string &text);
/// "dm" or "traj:COUNT".
void apply_engine_flag(NoiseConfig &noise, const std::string &text);

}  // namespace dickecm

#endif
