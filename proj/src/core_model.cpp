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

#include "qshell/core_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qshell/error.hpp"

namespace qshell {

namespace {

void require_positive(double value, const char *name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        fail(ErrorCode::InvalidArgument, std::string(name) + " must be finite and > 0, got " + std::to_string(value));
    }
}

void require_square(const CMatrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        fail(ErrorCode::NotSquare, std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                       std::to_string(m.cols()));
    }
}

}  // namespace

OscillatorParams OscillatorParams::make(std::size_t dimension, double mass, double frequency, double hbar) {
    if (dimension == 0) {
        fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
    }
    require_positive(mass, "mass");
    require_positive(frequency, "frequency");
    require_positive(hbar, "hbar");
    return OscillatorParams(dimension, mass, frequency, hbar);
}

PhaseSpacePoint::PhaseSpacePoint(RVector q_, RVector p_) : q(std::move(q_)), p(std::move(p_)) {
    require_same_dimension(static_cast<std::size_t>(q.size()), static_cast<std::size_t>(p.size()),
                           "PhaseSpacePoint q/p");
}

double hermiticity_defect(const CMatrix &m) {
    require_square(m, "hermiticity_defect");
    double worst = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = r; c < m.cols(); ++c) {
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return worst;
}

HermitianObservable::HermitianObservable(CMatrix matrix, double herm_tol) : matrix_(std::move(matrix)) {
    require_square(matrix_, "HermitianObservable");
    if (matrix_.rows() == 0) {
        fail(ErrorCode::DimensionMismatch, "HermitianObservable: empty matrix");
    }
    double defect = hermiticity_defect(matrix_);
    if (!(defect <= herm_tol)) {
        fail(ErrorCode::NotHermitian, "max |A_nm - conj(A_mn)| = " + std::to_string(defect), defect);
    }
}

HermitianObservable HermitianObservable::symmetrized(const CMatrix &matrix) {
    require_square(matrix, "HermitianObservable::symmetrized");
    if (matrix.rows() == 0) {
        fail(ErrorCode::DimensionMismatch, "HermitianObservable: empty matrix");
    }
    CMatrix sym = (matrix + matrix.adjoint()) * 0.5;
    return HermitianObservable(std::move(sym), Trusted{});
}

GeneralQuadraticObservable GeneralQuadraticObservable::make(double constant, CVector linear,
                                                            HermitianObservable hermitian, CMatrix anomalous,
                                                            double herm_tol) {
    std::size_t d = hermitian.dimension();
    require_same_dimension(static_cast<std::size_t>(linear.size()), d, "linear part");
    require_square(anomalous, "anomalous part");
    require_same_dimension(static_cast<std::size_t>(anomalous.rows()), d, "anomalous part");
    double asym = (anomalous - anomalous.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= herm_tol)) {
        fail(ErrorCode::ValidationError, "anomalous part is not symmetric, max |B_nm - B_mn| = " + std::to_string(asym),
             asym);
    }
    return GeneralQuadraticObservable{constant, std::move(linear), std::move(hermitian), std::move(anomalous)};
}

GeneralQuadraticObservable GeneralQuadraticObservable::from_hermitian(const HermitianObservable &hermitian) {
    auto d = static_cast<Eigen::Index>(hermitian.dimension());
    return GeneralQuadraticObservable{0.0, CVector::Zero(d), hermitian, CMatrix::Zero(d, d)};
}

StateVector make_state(CVector components, double hbar, double shell_tol) {
    if (components.size() == 0) {
        fail(ErrorCode::DimensionMismatch, "state vector has no components");
    }
    require_positive(hbar, "hbar");
    double norm2 = components.squaredNorm();
    double residual = norm2 - hbar;
    if (!(std::abs(residual) <= shell_tol * hbar)) {
        fail(ErrorCode::OffShell,
             "sum |psi_n|^2 - hbar = " + std::to_string(residual) + " (hbar = " + std::to_string(hbar) + ")",
             residual);
    }
    return StateVector(std::move(components), hbar);
}

StateVector project_to_shell(const CVector &raw, double hbar, double zero_tol) {
    require_positive(hbar, "hbar");
    if (raw.size() == 0 || raw.cwiseAbs().maxCoeff() < zero_tol) {
        fail(ErrorCode::ZeroVector, "cannot project a zero vector onto the shell");
    }
    CVector scaled = raw * std::sqrt(hbar / raw.squaredNorm());
    return make_state(std::move(scaled), hbar);
}

CVector canonical_phase(const CVector &v, double zero_tol) {
    for (Eigen::Index n = 0; n < v.size(); ++n) {
        double modulus = std::abs(v[n]);
        if (modulus > zero_tol) {
            Complex unit = std::conj(v[n]) / modulus;
            CVector out = v * unit;
            // Exactly real and positive, no rounding residue in the key entry.
            out[n] = Complex(modulus, 0.0);
            return out;
        }
    }
    return v;
}

StateVector canonical_phase(const StateVector &s, double zero_tol) {
    // A unit-modulus factor keeps the norm within rounding of the original.
    return make_state(canonical_phase(s.components(), zero_tol), s.hbar());
}

bool states_equal(const StateVector &a, const StateVector &b, double tolerance) {
    require_same_dimension(a.dimension(), b.dimension(), "states_equal");
    if (a.hbar() != b.hbar()) {
        fail(ErrorCode::InvalidArgument, "states_equal: states live on shells of different hbar");
    }
    double overlap = std::abs(a.components().dot(b.components()));
    double scale = a.components().norm() * b.components().norm();
    // Four ulps of slack so that tolerance = 0 is still reflexive.
    constexpr double kSlack = 4 * std::numeric_limits<double>::epsilon();
    return overlap >= scale * (1.0 - tolerance - kSlack);
}

HermitianObservable config_observable(std::size_t d) {
    if (d == 0) {
        fail(ErrorCode::InvalidArgument, "config_observable: d must be >= 1");
    }
    auto n = static_cast<Eigen::Index>(d);
    CMatrix q = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        q(k, k) = static_cast<double>(k + 1);
    }
    return HermitianObservable(std::move(q));
}

}  // namespace qshell
