// Copyright 2026 The dastable Authors
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

#ifndef DASTABLE_CLI_COMMANDS_HPP_
#define DASTABLE_CLI_COMMANDS_HPP_

#include <filesystem>
#include <ostream>

#include "dastable/cli/config.hpp"

namespace dastable::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitTestFailed = 1,
  kExitConfigError = 2,
  kExitUnsupported = 3,
};

// Each command writes its files into `out_dir` and a one-line summary per
// file to `log`. Library errors propagate; run_cli maps them to exit codes.

// One realization (pattern CSV, optional SVG) for a spectral config, or
// `draws` rows of counts for bins, simplex vectors or prime-basis naturals;
// always a provenance JSON.
int cmd_sample(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

// Runs config.test, writes the JSON report and echoes it to `log`.
// kExitOk on pass, kExitTestFailed on fail.
int cmd_test(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

// Writes every table of config.tables as CSV with a provenance header.
int cmd_tables(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

// Full command line: `dastable {sample|test|tables} --config PATH [--seed U64]
// [--out DIR] [--workers N]`. Exit codes: 0 ok, 1 test failed, 2 invalid
// command line or config, 3 unsupported route/spec or resource limit.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dastable::cli

#endif  // DASTABLE_CLI_COMMANDS_HPP_
