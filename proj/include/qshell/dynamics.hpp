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
 * Flows generated by observables: psi' = -i dA/dconj(psi). For a Hermitian
 * form this is psi' = -i A psi and the flow is the unitary group exp(-i A t).
 * The flow parameter is dimensionless; it is time when A is the energy.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "qshell/core_model.hpp"

namespace qshell {

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    /// max_k | <psi_k|psi_k> - hbar | / hbar over recorded states.
    double max_shell_drift = 0.0;
    /// C in |psi_rk4(t) - psi(t)| <= C h^4, with h = t / steps.
    double error_constant = 0.0;
};

/// Exact flow U(t) psi0 via the spectral propagator.
StateVector flow(const HermitianObservable &a, const StateVector &psi0, double t);

inline constexpr std::int64_t kMaxRk4Steps = 100'000'000;
inline constexpr double kRk4ShellTolerance = 1e-6;

/// Classical fixed-step RK4 integration of psi' = -i A psi. Records every
/// `record_stride`-th state (0 picks a stride giving at most ~1000 records);
/// the initial and final states are always recorded. Recorded states are
/// validated against the shell at kRk4ShellTolerance.
Trajectory flow_numeric(const HermitianObservable &a, const StateVector &psi0, double t, std::int64_t steps,
                        std::int64_t record_stride = 0);

/// Velocity -i dG/dconj(psi_n) = -i (A_n + sum_m A_nm psi_m + 2 sum_m B_nm conj(psi_m)).
CVector general_velocity(const GeneralQuadraticObservable &g, const CVector &psi);

/// d/dt sum |psi_n|^2 under the flow of G,
/// = 2 Im(sum_n conj(psi_n) (A_n + 2 sum_m B_nm conj(psi_m))).
double shell_defect(const GeneralQuadraticObservable &g, const CVector &psi);

}  // namespace qshell
