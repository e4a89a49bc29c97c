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

#ifndef DICKECM_COMMANDS_H
#define DICKECM_COMMANDS_H

#include <ostream>

#include "dickecm/run_config.h"

namespace dickecm {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitQuality = 4;

/// Each command writes its files under config.output plus resolved_config.txt, prints a summary
/// to `out`, and returns an exit code. Errors propagate as exceptions; see exit_code_for.
int cmd_simulate(const RunConfig &config, std::ostream &out);
int cmd_optimize(const RunConfig &config, std::ostream &out);
int cmd_sweep(const RunConfig &config, std::ostream &out);
int cmd_landscape(const RunConfig &config, std::ostream &out);
int cmd_verify(const RunConfig &config, std::ostream &out);
int cmd_schedule(const RunConfig &config, std::ostream &out);

/// Maps the library's exception types to process exit codes.
int exit_code_for(const std::exception &e);

}  // namespace dickecm

#endif
