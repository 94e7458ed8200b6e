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

#include "qshell/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qshell/error.hpp"
#include "qshell/linalg.hpp"

namespace qshell {

StateVector flow(const HermitianObservable &a, const StateVector &psi0, double t) {
    require_same_dimension(psi0.dimension(), a.dimension(), "flow");
    if (t == 0.0) {
        return psi0;
    }
    CVector out = unitary_propagator(a, t) * psi0.components();
    return make_state(std::move(out), psi0.hbar());
}

Trajectory flow_numeric(const HermitianObservable &a, const StateVector &psi0, double t, std::int64_t steps,
                        std::int64_t record_stride) {
    require_same_dimension(psi0.dimension(), a.dimension(), "flow_numeric");
    if (steps < 1) {
        fail(ErrorCode::InvalidArgument, "flow_numeric: steps must be >= 1");
    }
    if (steps > kMaxRk4Steps) {
        fail(ErrorCode::StepCount, "flow_numeric: " + std::to_string(steps) + " steps exceeds the limit of 1e8",
             static_cast<double>(steps));
    }
    if (record_stride <= 0) {
        record_stride = std::max<std::int64_t>(1, steps / 1000);
    }

    const CMatrix minus_i_a = Complex(0.0, -1.0) * a.matrix();
    const double h = t / static_cast<double>(steps);
    const double hbar = psi0.hbar();

    Trajectory traj;
    auto record = [&](double time, const CVector &psi) {
        double drift = std::abs(psi.squaredNorm() - hbar) / hbar;
        traj.max_shell_drift = std::max(traj.max_shell_drift, drift);
        traj.times.push_back(time);
        traj.states.push_back(make_state(psi, hbar, kRk4ShellTolerance));
    };

    CVector psi = psi0.components();
    record(0.0, psi);
    for (std::int64_t k = 1; k <= steps; ++k) {
        CVector k1 = minus_i_a * psi;
        CVector k2 = minus_i_a * (psi + 0.5 * h * k1);
        CVector k3 = minus_i_a * (psi + 0.5 * h * k2);
        CVector k4 = minus_i_a * (psi + h * k3);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (k % record_stride == 0 || k == steps) {
            record(h * static_cast<double>(k), psi);
        }
    }

    // Per step |exp(z) - R4(z)| <= |z|^5 exp(|z|) / 120 with |z| <= rho h.
    const EigenSystem spectrum = eigh(a);
    const double rho = spectrum.values.cwiseAbs().maxCoeff();
    traj.error_constant = std::abs(t) * std::pow(rho, 5) * std::sqrt(hbar) * std::exp(rho * std::abs(h)) / 120.0;
    return traj;
}

CVector general_velocity(const GeneralQuadraticObservable &g, const CVector &psi) {
    require_same_dimension(static_cast<std::size_t>(psi.size()), g.dimension(), "general_velocity");
    CVector grad = g.linear + g.hermitian.matrix() * psi + 2.0 * (g.anomalous * psi.conjugate());
    return Complex(0.0, -1.0) * grad;
}

double shell_defect(const GeneralQuadraticObservable &g, const CVector &psi) {
    require_same_dimension(static_cast<std::size_t>(psi.size()), g.dimension(), "shell_defect");
    CVector source = g.linear + 2.0 * (g.anomalous * psi.conjugate());
    return 2.0 * psi.dot(source).imag();
}

}  // namespace qshell
