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

#include <cmath>
#include <functional>

#include "qshell/core_model.hpp"

namespace qshell {

struct BracketValue {
    double value;
};

/// psi_n = sqrt(m w / 2) q_n + i p_n / sqrt(2 m w).
CVector to_complex(const PhaseSpacePoint &pt, const OscillatorParams &params);

/// Exact inverse of to_complex.
PhaseSpacePoint to_real(const CVector &psi, const OscillatorParams &params);

/// sum_n (p_n^2 / (2 m w) + (m w / 2) q_n^2) - hbar.
double shell_residual(const PhaseSpacePoint &pt, const OscillatorParams &params);

/// <psi|A|psi> for a raw complex vector. Throws NonRealValue when the
/// imaginary residue exceeds tol::kNonReal.
double evaluate_form(const HermitianObservable &a, const CVector &psi);
double evaluate_observable(const HermitianObservable &a, const StateVector &psi);

double evaluate_general(const GeneralQuadraticObservable &g, const CVector &psi);

/// dA/dconj(psi_n) = sum_m A_nm psi_m.
CVector gradient_conj(const HermitianObservable &a, const CVector &psi);
/// dA/dpsi_n = sum_m A_mn conj(psi_m).
CVector gradient(const HermitianObservable &a, const CVector &psi);

/// {A, B}_psi = i <psi|[A, B]|psi>.
BracketValue poisson_bracket(const HermitianObservable &a, const HermitianObservable &b, const StateVector &psi);

using RealFunction = std::function<double(const CVector &)>;

inline double default_extraction_step(double hbar) {
    return 1e-3 * std::sqrt(hbar);
}

/// Quadratic kernel A_nm = d^2 f / dconj(psi_n) dpsi_m at the origin, from
/// central differences, symmetrized to exact Hermiticity.
HermitianObservable hermitian_from_function(const RealFunction &f, std::size_t d, double step);

}  // namespace qshell
