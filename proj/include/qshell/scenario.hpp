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

/**
 * @file
 * Scenario files: a JSON document describing one oscillator, one observable
 * and one prepared state. Complex data is stored as separate real and
 * imaginary arrays. See docs/scenario-format.md.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qshell/core_model.hpp"

namespace qshell {

struct Scenario {
    std::size_t dimension = 0;
    double hbar = 1.0;
    double mass = 1.0;
    double frequency = 1.0;
    std::vector<std::vector<double>> observable_re;
    std::vector<std::vector<double>> observable_im;
    std::vector<double> state_re;
    std::vector<double> state_im;
    bool normalize = false;
    std::uint64_t seed = 0;
    std::int64_t trials = 10'000;
    Tolerances tolerances;
    double evolve_time = 1.0;
    std::int64_t evolve_samples = 11;

    bool operator==(const Scenario &) const = default;
};

/// Parses and validates. Throws ParseError (malformed document, with line
/// and field context) or ValidationError (well-formed but inconsistent).
Scenario parse_scenario(std::string_view text);

/// Re-validates an in-memory scenario (e.g. after command-line overrides).
void validate_scenario(const Scenario &scenario);

/// JSON text that parse_scenario maps back to an identical Scenario.
std::string serialize_scenario(const Scenario &scenario);

HermitianObservable scenario_observable(const Scenario &scenario);
/// make_state on the assembled vector, or project_to_shell when normalize.
StateVector scenario_state(const Scenario &scenario);
OscillatorParams scenario_params(const Scenario &scenario);

/// Applies NAME=VALUE to the tolerance set. Accepted names: shell, herm,
/// zero, cluster (optionally prefixed with "tol_").
void apply_tolerance_override(Tolerances &tolerances, std::string_view assignment);

}  // namespace qshell
