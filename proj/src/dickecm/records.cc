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

#include "dickecm/records.h"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dickecm/errors.h"
#include "dickecm/run_config.h"

#ifndef DICKECM_DATA_DIR
#define DICKECM_DATA_DIR "data"
#endif

namespace dickecm {

using nlohmann::json;

double round_sig12(double v) {
    return std::stod(format_sig12(v));
}

std::string format_sig12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string ResultRecord::to_json_line() const {
    json j;
    j["schema_version"] = kRecordSchemaVersion;
    j["command"] = command;
    j["target"] = {{"n", n}, {"m", m}};
    j["schedule"] = schedule;
    j["round_unit"] = round_unit;
    j["gamma_sh"] = round_sig12(gamma_sh);
    j["gamma_in"] = round_sig12(gamma_in);
    j["rounds"] = rounds;
    if (rz_angles) {
        json a = json::array();
        for (double t : *rz_angles) {
            a.push_back(round_sig12(t));
        }
        j["rz_angles"] = a;
    } else {
        j["rz_angles"] = nullptr;
    }
    j["rz_convention"] = rz_convention;
    j["loss"] = loss;
    j["fidelity_phase_aligned"] = fidelity_phase_aligned ? json(*fidelity_phase_aligned) : json(nullptr);
    j["noise"] = noise;
    j["wall_time"] = wall_time;
    j["config_hash"] = config_hash;
    return j.dump();
}

ResultRecord ResultRecord::from_json_line(const std::string &line) {
    ResultRecord r;
    try {
        json j = json::parse(line);
        if (j.at("schema_version").get<int>() != kRecordSchemaVersion) {
            throw ConfigError("unsupported record schema version");
        }
        r.command = j.at("command").get<std::string>();
        r.n = j.at("target").at("n").get<int>();
        r.m = j.at("target").at("m").get<int>();
        r.schedule = j.at("schedule").get<std::string>();
        r.round_unit = j.at("round_unit").get<std::string>();
        r.gamma_sh = j.at("gamma_sh").get<double>();
        r.gamma_in = j.at("gamma_in").get<double>();
        r.rounds = j.at("rounds").get<int>();
        if (!j.at("rz_angles").is_null()) {
            r.rz_angles = j.at("rz_angles").get<std::vector<double>>();
        }
        r.rz_convention = j.at("rz_convention").get<std::string>();
        r.loss = j.at("loss").get<double>();
        if (!j.at("fidelity_phase_aligned").is_null()) {
            r.fidelity_phase_aligned = j.at("fidelity_phase_aligned").get<double>();
        }
        r.noise = j.at("noise").get<std::string>();
        r.wall_time = j.at("wall_time").get<double>();
        r.config_hash = j.at("config_hash").get<std::string>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed record: ") + e.what());
    }
    return r;
}

ResultRecord make_record(const std::string &command, const ProtocolSpec &spec, const ControlSolution &solution,
                         const std::string &noise, double wall_time, const std::string &config_hash) {
    ResultRecord r;
    r.command = command;
    r.n = spec.num_qubits;
    r.m = spec.num_excitations;
    r.schedule = schedule_variant_name(spec.variant);
    r.round_unit = round_unit_name(spec.round_unit);
    r.gamma_sh = solution.gamma_sh;
    r.gamma_in = solution.gamma_in;
    r.rounds = solution.best_round;
    if (solution.rz_angles) {
        r.rz_angles = solution.rz_angles->thetas;
    }
    r.rz_convention = rz_convention_name(solution.convention);
    r.loss = solution.loss;
    r.fidelity_phase_aligned = solution.fidelity_phase_aligned;
    r.noise = noise;
    r.wall_time = wall_time;
    r.config_hash = config_hash;
    return r;
}

void append_jsonl(const std::string &path, const ResultRecord &record) {
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << record.to_json_line() << '\n';
}

std::vector<ResultRecord> read_jsonl(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    std::vector<ResultRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            out.push_back(ResultRecord::from_json_line(line));
        }
    }
    return out;
}

std::string schedule_json(const ProtocolSpec &spec) {
    json j;
    j["target"] = {{"n", spec.num_qubits}, {"m", spec.num_excitations}};
    j["register_r"] = spec.register_r;
    j["register_s"] = spec.register_s;
    j["schedule"] = schedule_variant_name(spec.variant);
    j["round_unit"] = round_unit_name(spec.round_unit);
    json events = json::array();
    auto steps = step_schedules(spec);
    for (size_t s = 0; s < steps.size(); s++) {
        for (const auto &e : steps[s].events) {
            events.push_back({{"step", s},
                              {"kind", e.kind == EventKind::Shuttle ? "shuttle" : "intra"},
                              {"qubit_a", e.qubit_a},
                              {"qubit_b", e.qubit_b}});
        }
    }
    j["events"] = events;
    return j.dump(2);
}

void write_trace_csv(std::ostream &out, const FidelityTrace &phase, const FidelityTrace &magnitude) {
    bool with_err = !phase.standard_errors.empty();
    out << "round,fidelity_phase,fidelity_magnitude" << (with_err ? ",stderr" : "") << "\n";
    char buf[128];
    for (size_t r = 0; r < phase.values.size(); r++) {
        std::snprintf(buf, sizeof buf, "%zu,%.12g,", r + 1, phase.values[r]);
        out << buf;
        if (r < magnitude.values.size()) {
            std::snprintf(buf, sizeof buf, "%.12g", magnitude.values[r]);
            out << buf;
        }
        if (with_err) {
            std::snprintf(buf, sizeof buf, ",%.12g", phase.standard_errors[r]);
            out << buf;
        }
        out << "\n";
    }
}

namespace {

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

double parse_num(const std::string &s, int lineno) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError("table line " + std::to_string(lineno) + ": bad number '" + s + "'");
    }
}

}  // namespace

std::vector<TableRow> load_table(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open table '" + path + "'");
    }
    std::string line;
    std::string body;
    std::string checksum;
    std::vector<TableRow> rows;
    int lineno = 0;
    bool header = true;
    while (std::getline(in, line)) {
        lineno++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.rfind("# fnv1a64:", 0) == 0) {
            checksum = line.substr(10);
            checksum.erase(0, checksum.find_first_not_of(' '));
            continue;
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        body += line + "\n";
        if (header) {
            if (line != "n,m,gamma_sh,gamma_in,rounds,rz_angles") {
                throw ConfigError("table header not recognized: '" + line + "'");
            }
            header = false;
            continue;
        }
        auto cols = split(line, ',');
        if (cols.size() != 6) {
            throw ConfigError("table line " + std::to_string(lineno) + ": expected 6 columns");
        }
        TableRow row;
        row.n = static_cast<int>(parse_num(cols[0], lineno));
        row.m = static_cast<int>(parse_num(cols[1], lineno));
        row.gamma_sh = parse_num(cols[2], lineno);
        row.gamma_in = parse_num(cols[3], lineno);
        row.rounds = static_cast<int>(parse_num(cols[4], lineno));
        for (const auto &a : split(cols[5], ';')) {
            row.rz_angles.push_back(parse_num(a, lineno));
        }
        if (row.n < 2 || row.m < 1 || row.m >= row.n || row.rounds < 1 ||
            row.rz_angles.size() != static_cast<size_t>(row.n)) {
            throw ConfigError("table line " + std::to_string(lineno) + ": inconsistent row");
        }
        rows.push_back(std::move(row));
    }
    if (header) {
        throw ConfigError("table '" + path + "' has no header");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
    if (checksum != buf) {
        throw ConfigError("table checksum mismatch (file says '" + checksum + "', content hashes to " + buf + ")");
    }
    return rows;
}

std::string default_table_path() {
    return std::string(DICKECM_DATA_DIR) + "/table1.csv";
}

}  // namespace dickecm
