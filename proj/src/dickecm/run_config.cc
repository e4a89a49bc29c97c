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

#include "dickecm/run_config.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dickecm/errors.h"

namespace dickecm {

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string &key, const std::string &v) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return d;
    } catch (const std::exception &) {
        throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
    }
}

int to_int(const std::string &key, const std::string &v) {
    try {
        size_t used = 0;
        long long d = std::stoll(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return static_cast<int>(d);
    } catch (const std::exception &) {
        throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string &key, const std::string &v) {
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw ConfigError("'" + key + "' expects true|false, got '" + v + "'");
}

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double to_unit(const std::string &key, const std::string &v) {
    double d = to_double(key, v);
    if (!(d >= 0 && d <= 1)) {
        throw ConfigError("'" + key + "' must lie in [0, 1], got '" + v + "'");
    }
    return d;
}

std::optional<double> to_optional(const std::string &key, const std::string &v) {
    if (v.empty()) {
        return std::nullopt;
    }
    return to_double(key, v);
}

std::vector<double> to_list(const std::string &key, const std::string &v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(to_double(key, item));
        }
    }
    return out;
}

struct Field {
    std::function<void(RunConfig &, const std::string &)> set;
    std::function<std::string(const RunConfig &)> get;
};

const std::map<std::string, Field> &fields() {
    static const std::map<std::string, Field> table = [] {
        std::map<std::string, Field> f;
        f["target"] = {[](RunConfig &c, const std::string &v) {
                           auto [n, m] = parse_target(v);
                           c.n = n;
                           c.m = m;
                       },
                       [](const RunConfig &c) { return std::to_string(c.n) + "," + std::to_string(c.m); }};
        f["schedule"] = {[](RunConfig &c, const std::string &v) { c.schedule = parse_schedule_variant(v); },
                         [](const RunConfig &c) { return std::string(schedule_variant_name(c.schedule)); }};
        f["round_unit"] = {[](RunConfig &c, const std::string &v) { c.round_unit = parse_round_unit(v); },
                           [](const RunConfig &c) { return std::string(round_unit_name(c.round_unit)); }};
        f["grid_spacing"] = {[](RunConfig &c, const std::string &v) { c.optimizer.grid_spacing = to_double("grid_spacing", v); },
                             [](const RunConfig &c) { return fmt(c.optimizer.grid_spacing); }};
        f["rounds_max"] = {[](RunConfig &c, const std::string &v) { c.optimizer.rounds_max = to_int("rounds_max", v); },
                           [](const RunConfig &c) { return std::to_string(c.optimizer.rounds_max); }};
        f["maxiter"] = {[](RunConfig &c, const std::string &v) { c.optimizer.maxiter = to_int("maxiter", v); },
                        [](const RunConfig &c) { return std::to_string(c.optimizer.maxiter); }};
        f["ftol"] = {[](RunConfig &c, const std::string &v) { c.optimizer.ftol = to_double("ftol", v); },
                     [](const RunConfig &c) { return fmt(c.optimizer.ftol); }};
        f["fd_step"] = {[](RunConfig &c, const std::string &v) { c.optimizer.fd_step = to_double("fd_step", v); },
                        [](const RunConfig &c) { return fmt(c.optimizer.fd_step); }};
        f["memory"] = {[](RunConfig &c, const std::string &v) { c.optimizer.memory = to_int("memory", v); },
                       [](const RunConfig &c) { return std::to_string(c.optimizer.memory); }};
        f["workers"] = {[](RunConfig &c, const std::string &v) { c.optimizer.workers = to_int("workers", v); },
                        [](const RunConfig &c) { return std::to_string(c.optimizer.workers); }};
        f["loss"] = {[](RunConfig &c, const std::string &v) { c.optimizer.loss_kind = parse_fidelity_kind(v); },
                     [](const RunConfig &c) { return std::string(fidelity_kind_name(c.optimizer.loss_kind)); }};
        f["align_candidates"] = {[](RunConfig &c, const std::string &v) { c.optimizer.align_candidates = to_int("align_candidates", v); },
                                 [](const RunConfig &c) { return std::to_string(c.optimizer.align_candidates); }};
        f["jitter"] = {[](RunConfig &c, const std::string &v) { c.optimizer.jitter = to_bool("jitter", v); },
                       [](const RunConfig &c) { return std::string(c.optimizer.jitter ? "true" : "false"); }};
        f["jitter_per_point"] = {[](RunConfig &c, const std::string &v) { c.optimizer.jitter_per_point = to_int("jitter_per_point", v); },
                                 [](const RunConfig &c) { return std::to_string(c.optimizer.jitter_per_point); }};
        f["seed"] = {[](RunConfig &c, const std::string &v) {
                         c.optimizer.seed = static_cast<uint64_t>(to_int("seed", v));
                         c.noise.seed = c.optimizer.seed;
                     },
                     [](const RunConfig &c) { return std::to_string(c.optimizer.seed); }};
        f["p_miss"] = {[](RunConfig &c, const std::string &v) { c.noise.p_miss = to_unit("p_miss", v); },
                       [](const RunConfig &c) { return fmt(c.noise.p_miss); }};
        f["channel"] = {[](RunConfig &c, const std::string &v) { c.noise.channel = parse_channel_label(v); },
                        [](const RunConfig &c) { return std::string(channel_label_name(c.noise.channel)); }};
        f["q"] = {[](RunConfig &c, const std::string &v) { c.noise.q = to_unit("q", v); },
                  [](const RunConfig &c) { return fmt(c.noise.q); }};
        f["noise"] = {[](RunConfig &c, const std::string &v) { apply_noise_flag(c.noise, v); }, nullptr};
        f["policy"] = {[](RunConfig &c, const std::string &v) { c.noise.policy = parse_noise_policy(v); },
                       [](const RunConfig &c) { return std::string(noise_policy_name(c.noise.policy)); }};
        f["drop_intra"] = {[](RunConfig &c, const std::string &v) { c.noise.drop_intra = to_bool("drop_intra", v); },
                           [](const RunConfig &c) { return std::string(c.noise.drop_intra ? "true" : "false"); }};
        f["engine"] = {[](RunConfig &c, const std::string &v) { apply_engine_flag(c.noise, v); },
                       [](const RunConfig &c) {
                           return c.noise.engine == NoiseEngineKind::DensityMatrix
                                      ? std::string("dm")
                                      : "traj:" + std::to_string(c.noise.trajectories);
                       }};
        f["representation"] = {[](RunConfig &c, const std::string &v) {
                                   if (v == "auto") {
                                       c.noise.representation.reset();
                                   } else if (v == "subspace_block") {
                                       c.noise.representation = DensityRepresentation::SubspaceBlock;
                                   } else if (v == "sector_blocks") {
                                       c.noise.representation = DensityRepresentation::SectorBlocks;
                                   } else if (v == "full_space") {
                                       c.noise.representation = DensityRepresentation::FullSpace;
                                   } else {
                                       throw ConfigError("unknown representation '" + v + "'");
                                   }
                               },
                               [](const RunConfig &c) {
                                   return c.noise.representation ? std::string(representation_name(*c.noise.representation))
                                                                 : std::string("auto");
                               }};
        f["rz_convention"] = {[](RunConfig &c, const std::string &v) {
                                  if (v == "standard") {
                                      c.rz_convention = RzConvention::Standard;
                                  } else if (v == "conjugate") {
                                      c.rz_convention = RzConvention::Conjugate;
                                  } else {
                                      throw ConfigError("unknown Rz convention '" + v + "' (expected standard|conjugate)");
                                  }
                              },
                              [](const RunConfig &c) { return std::string(rz_convention_name(c.rz_convention)); }};
        f["gamma_in"] = {[](RunConfig &c, const std::string &v) { c.gamma_in = to_optional("gamma_in", v); },
                         [](const RunConfig &c) { return c.gamma_in ? fmt(*c.gamma_in) : std::string(""); }};
        f["gamma_sh"] = {[](RunConfig &c, const std::string &v) { c.gamma_sh = to_optional("gamma_sh", v); },
                         [](const RunConfig &c) { return c.gamma_sh ? fmt(*c.gamma_sh) : std::string(""); }};
        f["rounds"] = {[](RunConfig &c, const std::string &v) { c.rounds = to_int("rounds", v); },
                       [](const RunConfig &c) { return std::to_string(c.rounds); }};
        f["output"] = {[](RunConfig &c, const std::string &v) { c.output = v; },
                       [](const RunConfig &c) { return c.output; }};
        f["min_fidelity"] = {[](RunConfig &c, const std::string &v) { c.min_fidelity = to_double("min_fidelity", v); },
                             [](const RunConfig &c) { return fmt(c.min_fidelity); }};
        f["table"] = {[](RunConfig &c, const std::string &v) { c.table = v; },
                      [](const RunConfig &c) { return c.table; }};
        f["threshold"] = {[](RunConfig &c, const std::string &v) { c.threshold = to_double("threshold", v); },
                          [](const RunConfig &c) { return fmt(c.threshold); }};
        f["verify_max_qubits"] = {[](RunConfig &c, const std::string &v) { c.verify_max_qubits = to_int("verify_max_qubits", v); },
                                  [](const RunConfig &c) { return std::to_string(c.verify_max_qubits); }};
        f["axis"] = {[](RunConfig &c, const std::string &v) {
                         parse_noise_axis(v);
                         c.axis = v;
                     },
                     [](const RunConfig &c) { return c.axis; }};
        f["levels"] = {[](RunConfig &c, const std::string &v) { c.levels = to_list("levels", v); },
                       [](const RunConfig &c) {
                           std::string s;
                           for (size_t i = 0; i < c.levels.size(); i++) {
                               s += (i ? "," : "") + fmt(c.levels[i]);
                           }
                           return s;
                       }};
        return f;
    }();
    return table;
}

}  // namespace

std::pair<int, int> parse_target(const std::string &text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("target must be 'n,m', got '" + text + "'");
    }
    int n = to_int("target", trim(text.substr(0, comma)));
    int m = to_int("target", trim(text.substr(comma + 1)));
    if (n < 2 || n > kMaxQubits || m < 1 || m >= n) {
        throw ConfigError("target needs 2 <= n <= " + std::to_string(kMaxQubits) + " and 1 <= m < n, got '" + text + "'");
    }
    return {n, m};
}

void apply_noise_flag(NoiseConfig &noise, const std::string &text) {
    auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("noise flag must be 'axis=level', got '" + text + "'");
    }
    NoiseAxis axis = parse_noise_axis(trim(text.substr(0, eq)));
    double level = to_double("noise", trim(text.substr(eq + 1)));
    try {
        noise = noise_at(axis, level, noise);
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
}

void apply_engine_flag(NoiseConfig &noise, const std::string &text) {
    if (text == "dm") {
        noise.engine = NoiseEngineKind::DensityMatrix;
        return;
    }
    if (text.rfind("traj:", 0) == 0) {
        int count = to_int("engine", text.substr(5));
        if (count < 1) {
            throw ConfigError("trajectory count must be at least 1");
        }
        noise.engine = NoiseEngineKind::Trajectories;
        noise.trajectories = count;
        return;
    }
    throw ConfigError("engine must be 'dm' or 'traj:COUNT', got '" + text + "'");
}

void RunConfig::set(const std::string &key, const std::string &value) {
    auto it = fields().find(key);
    if (it == fields().end()) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    try {
        it->second.set(*this, trim(value));
    } catch (const DomainError &e) {
        throw ConfigError(key + ": " + e.what());
    }
}

void RunConfig::load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        try {
            set(trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::string RunConfig::dump() const {
    std::string out;
    for (const auto &[key, field] : fields()) {
        if (field.get) {
            out += key + " = " + field.get(*this) + "\n";
        }
    }
    return out;
}

std::string RunConfig::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(dump())));
    return buf;
}

ProtocolSpec RunConfig::spec() const {
    if (!has_target()) {
        throw ConfigError("no target given (use --target n,m)");
    }
    try {
        return ProtocolSpec::make(n, m, schedule, round_unit);
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
}

int RunConfig::resolved_rounds() const {
    return rounds > 0 ? rounds : optimizer.resolved_rounds(spec());
}

std::vector<std::string> RunConfig::keys() {
    std::vector<std::string> k;
    for (const auto &[key, field] : fields()) {
        k.push_back(key);
    }
    return k;
}

}  // namespace dickecm
