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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dickecm/errors.h"
#include "dickecm/run_config.h"

using namespace dickecm;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string &name) {
    return (fs::temp_directory_path() / ("dickecm_records_" + name)).string();
}

std::string checksummed(const std::string &body) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
    return "# test table\n" + body + "# fnv1a64: " + buf + "\n";
}

}  // namespace

TEST(records, sig12) {
    EXPECT_EQ(format_sig12(0.1 + 0.2), "0.3");
    EXPECT_EQ(format_sig12(1.23456789012345), "1.23456789012");
    EXPECT_EQ(round_sig12(3.14159265358979), 3.14159265359);
}

TEST(records, json_round_trip) {
    ResultRecord r;
    r.command = "optimize";
    r.n = 6;
    r.m = 2;
    r.schedule = "interleaved";
    r.round_unit = "pass";
    r.gamma_sh = 0.4751234567891234;
    r.gamma_in = 0.243;
    r.rounds = 17;
    r.rz_angles = std::vector<double>{0.1, -0.2, 0.3, 0.4, 0.5, 0.6};
    r.rz_convention = "standard";
    r.loss = 0.0123;
    r.fidelity_phase_aligned = 0.9877;
    r.noise = "p_miss=0";
    r.wall_time = 1.5;
    r.config_hash = "0123456789abcdef";
    auto line = r.to_json_line();
    EXPECT_EQ(line.find('\n'), std::string::npos);
    auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["schema_version"], kRecordSchemaVersion);
    EXPECT_EQ(j["target"]["n"], 6);

    auto back = ResultRecord::from_json_line(line);
    EXPECT_EQ(back.command, r.command);
    EXPECT_EQ(back.gamma_sh, round_sig12(r.gamma_sh));
    EXPECT_EQ(back.rounds, 17);
    EXPECT_EQ(*back.rz_angles, *r.rz_angles);
    EXPECT_EQ(*back.fidelity_phase_aligned, 0.9877);
    EXPECT_EQ(back.config_hash, r.config_hash);
    EXPECT_EQ(back.to_json_line(), line);

    EXPECT_THROW(ResultRecord::from_json_line("{not json"), ConfigError);
    EXPECT_THROW(ResultRecord::from_json_line(R"({"schema_version": 99})"), ConfigError);
}

TEST(records, jsonl_append_and_read) {
    auto path = temp_path("append.jsonl");
    fs::remove(path);
    ResultRecord a;
    a.command = "optimize";
    a.n = 4;
    a.m = 2;
    ResultRecord b = a;
    b.command = "sweep";
    append_jsonl(path, a);
    append_jsonl(path, b);
    auto all = read_jsonl(path);
    ASSERT_EQ(all.size(), 2u);
    EXPECT_EQ(all[1].command, "sweep");
}

TEST(records, schedule_json_lists_events) {
    auto j = nlohmann::json::parse(schedule_json(ProtocolSpec::make(3, 1)));
    EXPECT_EQ(j["register_r"], 1);
    ASSERT_EQ(j["events"].size(), 2u);
    EXPECT_EQ(j["events"][1]["qubit_b"], 2);
    EXPECT_EQ(j["events"][1]["kind"], "shuttle");
}

TEST(records, trace_csv) {
    auto spec = ProtocolSpec::make(3, 1);
    auto phase = run_trace(spec, 0, 1.5707963267948966, 5);
    auto mag = run_trace(spec, 0, 1.5707963267948966, 5, FidelityKind::Magnitude);
    std::ostringstream out;
    write_trace_csv(out, phase, mag);
    std::istringstream in(out.str());
    std::string line;
    int rows = 0;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("round,", 0), 0u);
    while (std::getline(in, line)) {
        rows++;
    }
    EXPECT_EQ(rows, 5);
}

TEST(records, bundled_table_loads) {
    auto rows = load_table(default_table_path());
    ASSERT_EQ(rows.size(), 31u);
    const auto &first = rows.front();
    EXPECT_EQ(first.n, 5);
    EXPECT_EQ(first.m, 2);
    EXPECT_EQ(first.gamma_sh, 1.624);
    EXPECT_EQ(first.rounds, 174);
    EXPECT_EQ(first.rz_angles.size(), 5u);
    for (const auto &r : rows) {
        EXPECT_EQ(r.rz_angles.size(), static_cast<size_t>(r.n));
    }
}

TEST(records, table_validation) {
    std::string header = "n,m,gamma_sh,gamma_in,rounds,rz_angles\n";
    std::string good = header + "3,1,0.5,0.1,2,0;0;0\n";
    auto path = temp_path("table.csv");
    std::ofstream(path) << checksummed(good);
    EXPECT_EQ(load_table(path).size(), 1u);

    std::ofstream(path) << checksummed(good).replace(checksummed(good).find("0.5"), 3, "0.6");
    EXPECT_THROW(load_table(path), ConfigError);
    std::ofstream(path) << good;
    EXPECT_THROW(load_table(path), ConfigError);
    std::ofstream(path) << checksummed(header + "3,1,0.5,0.1,2,0;0\n");
    EXPECT_THROW(load_table(path), ConfigError);
    std::ofstream(path) << checksummed("n,m,rounds\n");
    EXPECT_THROW(load_table(path), ConfigError);
    std::ofstream(path) << checksummed(header + "3,1,abc,0.1,2,0;0;0\n");
    EXPECT_THROW(load_table(path), ConfigError);
    EXPECT_THROW(load_table(temp_path("missing.csv")), ConfigError);
}
