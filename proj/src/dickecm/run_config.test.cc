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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dickecm/errors.h"

using namespace dickecm;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string &name, const std::string &text) {
    auto path = fs::temp_directory_path() / ("dickecm_run_config_" + name);
    std::ofstream(path) << text;
    return path.string();
}

RunConfig reload(const RunConfig &c) {
    RunConfig r;
    r.load_file(write_temp("reload.txt", c.dump()));
    return r;
}

}  // namespace

TEST(run_config, fnv1a_reference_vectors) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(run_config, parses_file) {
    auto path = write_temp("basic.txt",
                           "# comment line\n"
                           "target = 6,3\n"
                           "schedule = factored   # trailing comment\n"
                           "\n"
                           "grid_spacing=0.1\n"
                           "p_miss = 0.05\n"
                           "gamma_in = 0.243\n"
                           "engine = traj:500\n"
                           "levels = 0, 0.1, 0.2\n");
    RunConfig c;
    c.load_file(path);
    EXPECT_EQ(c.n, 6);
    EXPECT_EQ(c.m, 3);
    EXPECT_EQ(c.schedule, ScheduleVariant::Factored);
    EXPECT_EQ(c.optimizer.grid_spacing, 0.1);
    EXPECT_EQ(c.noise.p_miss, 0.05);
    EXPECT_EQ(*c.gamma_in, 0.243);
    EXPECT_FALSE(c.gamma_sh.has_value());
    EXPECT_EQ(c.noise.engine, NoiseEngineKind::Trajectories);
    EXPECT_EQ(c.noise.trajectories, 500);
    EXPECT_EQ(c.levels, (std::vector<double>{0, 0.1, 0.2}));
    EXPECT_EQ(c.spec().register_r, 2);
    EXPECT_EQ(c.resolved_rounds(), 600);
}

TEST(run_config, rejects_bad_input) {
    RunConfig c;
    EXPECT_THROW(c.set("tagret", "4,2"), ConfigError);
    EXPECT_THROW(c.set("target", "4"), ConfigError);
    EXPECT_THROW(c.set("target", "4,4"), ConfigError);
    EXPECT_THROW(c.set("p_miss", "lots"), ConfigError);
    EXPECT_THROW(c.set("p_miss", "1.5"), ConfigError);
    EXPECT_THROW(c.set("engine", "traj:0"), ConfigError);
    EXPECT_THROW(c.load_file(write_temp("bad.txt", "target 4,2\n")), ConfigError);
    EXPECT_THROW(c.load_file(write_temp("unknown.txt", "colour = blue\n")), ConfigError);
    EXPECT_THROW(c.load_file("/nonexistent/dickecm.cfg"), ConfigError);
    EXPECT_THROW(c.spec(), std::exception);
}

TEST(run_config, noise_shorthand) {
    RunConfig c;
    c.set("noise", "depolarizing=0.02");
    EXPECT_EQ(c.noise.channel, ChannelLabel::Depolarizing);
    EXPECT_EQ(c.noise.q, 0.02);
    c.set("noise", "pmiss=0.1");
    EXPECT_EQ(c.noise.p_miss, 0.1);
    EXPECT_THROW(c.set("noise", "static"), ConfigError);
}

TEST(run_config, dump_round_trips_and_hash_is_stable) {
    RunConfig c;
    c.set("target", "8,3");
    c.set("grid_spacing", "0.05");
    c.set("noise", "damping=0.01");
    c.set("representation", "full_space");
    c.set("gamma_sh", "1.25");
    c.set("levels", "0,0.5");
    c.set("rz_convention", "conjugate");
    auto r = reload(c);
    EXPECT_EQ(r.dump(), c.dump());
    EXPECT_EQ(r.hash(), c.hash());
    EXPECT_EQ(c.hash().size(), 16u);

    RunConfig d = c;
    d.set("seed", "2");
    EXPECT_NE(d.hash(), c.hash());

    auto text = c.dump();
    auto keys = RunConfig::keys();
    EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
    EXPECT_NE(text.find("grid_spacing = 0.05"), std::string::npos);
}
