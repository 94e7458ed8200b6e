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

#include "qshell/phase_space.hpp"

#include <cmath>
#include <string>

#include "qshell/error.hpp"
#include "qshell/linalg.hpp"

namespace qshell {

namespace {

double real_part_checked(Complex value, const char *what) {
    if (!(std::abs(value.imag()) <= tol::kNonReal)) {
        fail(ErrorCode::NonRealValue,
             std::string(what) + ": imaginary residue " + std::to_string(value.imag()) + " exceeds tolerance",
             value.imag());
    }
    return value.real();
}

}  // namespace

CVector to_complex(const PhaseSpacePoint &pt, const OscillatorParams &params) {
    require_same_dimension(pt.dimension(), params.dimension(), "to_complex");
    const double mw = params.mass() * params.frequency();
    const double q_scale = std::sqrt(mw / 2.0);
    const double p_scale = 1.0 / std::sqrt(2.0 * mw);
    CVector psi(pt.q.size());
    for (Eigen::Index n = 0; n < pt.q.size(); ++n) {
        psi[n] = Complex(q_scale * pt.q[n], p_scale * pt.p[n]);
    }
    return psi;
}

PhaseSpacePoint to_real(const CVector &psi, const OscillatorParams &params) {
    require_same_dimension(static_cast<std::size_t>(psi.size()), params.dimension(), "to_real");
    const double mw = params.mass() * params.frequency();
    const double q_scale = std::sqrt(mw / 2.0);
    const double p_scale = std::sqrt(2.0 * mw);
    RVector q(psi.size());
    RVector p(psi.size());
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
        q[n] = psi[n].real() / q_scale;
        p[n] = psi[n].imag() * p_scale;
    }
    return PhaseSpacePoint(std::move(q), std::move(p));
}

double shell_residual(const PhaseSpacePoint &pt, const OscillatorParams &params) {
    require_same_dimension(pt.dimension(), params.dimension(), "shell_residual");
    const double mw = params.mass() * params.frequency();
    double energy = 0.0;
    for (Eigen::Index n = 0; n < pt.q.size(); ++n) {
        energy += pt.p[n] * pt.p[n] / (2.0 * mw) + 0.5 * mw * pt.q[n] * pt.q[n];
    }
    return energy - params.hbar();
}

double evaluate_form(const HermitianObservable &a, const CVector &psi) {
    require_same_dimension(static_cast<std::size_t>(psi.size()), a.dimension(), "evaluate_observable");
    return real_part_checked(psi.dot(a.matrix() * psi), "evaluate_observable");
}

double evaluate_observable(const HermitianObservable &a, const StateVector &psi) {
    return evaluate_form(a, psi.components());
}

double evaluate_general(const GeneralQuadraticObservable &g, const CVector &psi) {
    require_same_dimension(static_cast<std::size_t>(psi.size()), g.dimension(), "evaluate_general");
    // sum conj(A_n) psi_n + sum A_n conj(psi_n)
    Complex linear = g.linear.dot(psi) + psi.dot(g.linear);
    Complex quadratic = psi.dot(g.hermitian.matrix() * psi);
    // sum B_nm conj(psi_n) conj(psi_m) + conj of the same
    const CVector conj_psi = psi.conjugate();
    Complex anomalous_half = conj_psi.cwiseProduct(g.anomalous * conj_psi).sum();
    Complex anomalous = anomalous_half + std::conj(anomalous_half);
    return g.constant + real_part_checked(linear + quadratic + anomalous, "evaluate_general");
}

CVector gradient_conj(const HermitianObservable &a, const CVector &psi) {
    require_same_dimension(static_cast<std::size_t>(psi.size()), a.dimension(), "gradient_conj");
    return a.matrix() * psi;
}

CVector gradient(const HermitianObservable &a, const CVector &psi) {
    require_same_dimension(static_cast<std::size_t>(psi.size()), a.dimension(), "gradient");
    return a.matrix().transpose() * psi.conjugate();
}

BracketValue poisson_bracket(const HermitianObservable &a, const HermitianObservable &b, const StateVector &psi) {
    require_same_dimension(a.dimension(), b.dimension(), "poisson_bracket");
    require_same_dimension(psi.dimension(), a.dimension(), "poisson_bracket");
    const CVector &v = psi.components();
    Complex value = Complex(0.0, 1.0) * v.dot(commutator(a, b) * v);
    return BracketValue{real_part_checked(value, "poisson_bracket")};
}

HermitianObservable hermitian_from_function(const RealFunction &f, std::size_t d, double step) {
    if (d == 0) {
        fail(ErrorCode::InvalidArgument, "hermitian_from_function: d must be >= 1");
    }
    if (!(step > 0.0)) {
        fail(ErrorCode::InvalidArgument, "hermitian_from_function: step must be > 0");
    }
    auto n = static_cast<Eigen::Index>(d);
    const CVector origin = CVector::Zero(n);
    const double f0 = f(origin);
    if (!(std::abs(f0) <= 1e-6)) {
        fail(ErrorCode::NotVanishingAtRest, "f(0) = " + std::to_string(f0), f0);
    }

    // Real coordinates: k < d is Re(psi_k), k >= d is Im(psi_{k-d}).
    auto displaced = [&](Eigen::Index k1, double s1, Eigen::Index k2, double s2) {
        CVector v = origin;
        auto bump = [&](Eigen::Index k, double s) {
            if (k < n) {
                v[k] += Complex(s, 0.0);
            } else {
                v[k - n] += Complex(0.0, s);
            }
        };
        bump(k1, s1);
        if (k2 >= 0) {
            bump(k2, s2);
        }
        return f(v);
    };

    const Eigen::Index m = 2 * n;
    const double h = step;
    Eigen::MatrixXd hessian(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        hessian(i, i) = (displaced(i, h, -1, 0) - 2.0 * f0 + displaced(i, -h, -1, 0)) / (h * h);
        for (Eigen::Index j = i + 1; j < m; ++j) {
            double v = (displaced(i, h, j, h) - displaced(i, h, j, -h) - displaced(i, -h, j, h) +
                        displaced(i, -h, j, -h)) /
                       (4.0 * h * h);
            hessian(i, j) = v;
            hessian(j, i) = v;
        }
    }

    // d^2/dconj(psi_a) dpsi_b = (1/4)[f_xa xb + f_ya yb + i (f_ya xb - f_xa yb)]
    CMatrix kernel(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            double re = hessian(a, b) + hessian(n + a, n + b);
            double im = hessian(n + a, b) - hessian(a, n + b);
            kernel(a, b) = 0.25 * Complex(re, im);
        }
    }
    return HermitianObservable::symmetrized(kernel);
}

}  // namespace qshell
