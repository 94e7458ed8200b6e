// Copyright 2026 The qshell Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qshell/scenario.hpp"

namespace qshell::cli {

enum class Command { Spectrum, Probs, Mean, Evolve, Sample, Verify };
enum class Format { Csv, Structured };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

struct Options {
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<std::string> out_dir;
    std::optional<Format> format;
    std::vector<std::string> tol_overrides;
    /// Worker threads for Monte Carlo trials (0 = hardware concurrency).
    unsigned threads = 0;
};

/// One emitted document. `failed` is set by `verify` when any report fails.
struct Emission {
    std::string filename;
    std::string content;
    bool failed = false;
};

/// Default format: structured for `verify`, CSV otherwise.
Format default_format(Command command);

/// Renders the output of a command for an already validated scenario.
Emission render(Command command, const Scenario &scenario, Format format, unsigned threads = 0);

/// Applies command-line overrides to the scenario, renders, and writes to
/// `out` or to `--out DIR`. Returns the process exit status.
int dispatch(Command command, Scenario scenario, const Options &options, std::ostream &out, std::ostream &err);

/// Full command-line entry point.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qshell::cli
