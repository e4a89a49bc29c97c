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

#ifndef DICKECM_RECORDS_H
#define DICKECM_RECORDS_H

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dickecm/optimizer.h"
#include "dickecm/protocol.h"

namespace dickecm {

constexpr int kRecordSchemaVersion = 1;

/// Rounds to 12 significant digits, the precision used for every serialized angle.
double round_sig12(double v);
std::string format_sig12(double v);

struct ResultRecord {
    std::string command;
    int n = 0;
    int m = 0;
    std::string schedule;
    std::string round_unit;
    double gamma_sh = 0;
    double gamma_in = 0;
    int rounds = 0;
    std::optional<std::vector<double>> rz_angles;
    std::string rz_convention;
    double loss = 1;
    std::optional<double> fidelity_phase_aligned;
    std::string noise;
    double wall_time = 0;
    std::string config_hash;

    std::string to_json_line() const;
    static ResultRecord from_json_line(const std::string &line);
};

ResultRecord make_record(
    const std::string &command, const ProtocolSpec &spec, const ControlSolution &solution, const std::string &noise,
    double wall_time, const std::string &config_hash);

void append_jsonl(const std::string &path, const ResultRecord &record);
std::vector<ResultRecord> read_jsonl(const std::string &path);

/// Event list as {"target", "schedule", "round_unit", "events": [{step, kind, qubit_a, qubit_b}]}.
/// `step` is the zero-based counted step each event belongs to.
std::string schedule_json(const ProtocolSpec &spec);

void write_trace_csv(std::ostream &out, const FidelityTrace &phase, const FidelityTrace &magnitude);

struct TableRow {
    int n = 0;
    int m = 0;
    double gamma_sh = 0;
    double gamma_in = 0;
    int rounds = 0;
    std::vector<double> rz_angles;
};

/// Loads the bundled controller table and checks its trailing fnv1a64 line. Throws ConfigError on
/// malformed rows or a checksum mismatch.
std::vector<TableRow> load_table(const std::string &path);

/// Path of the bundled table in the source tree.
std::string default_table_path();

}  // namespace dickecm

#endif
