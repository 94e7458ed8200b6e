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
 * Domain types for a d-dimensional oscillator living on the energy shell
 * <psi|psi> = hbar, together with Hermitian-form observables.
 */

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qshell {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Default tolerances. Every operation that needs one takes it as an
/// argument defaulted from here.
namespace tol {
inline constexpr double kShell = 1e-10;    // relative to hbar
inline constexpr double kHerm = 1e-12;     // absolute, O(1) entries
inline constexpr double kZero = 1e-12;     // modulus below which a component is zero
inline constexpr double kCluster = 1e-8;   // relative eigenvalue gap for degeneracy
inline constexpr double kNonReal = 1e-8;   // imaginary residue of a real-valued form
}  // namespace tol

/// Runtime-adjustable copy of the tolerances, used by scenario files.
struct Tolerances {
    double shell = tol::kShell;
    double herm = tol::kHerm;
    double zero = tol::kZero;
    double cluster = tol::kCluster;

    bool operator==(const Tolerances &) const = default;
};

class OscillatorParams {
  public:
    static OscillatorParams make(std::size_t dimension, double mass = 1.0, double frequency = 1.0, double hbar = 1.0);

    std::size_t dimension() const noexcept {
        return dimension_;
    }
    double mass() const noexcept {
        return mass_;
    }
    double frequency() const noexcept {
        return frequency_;
    }
    double hbar() const noexcept {
        return hbar_;
    }
    /// E = hbar * omega.
    double energy() const noexcept {
        return hbar_ * frequency_;
    }
    /// s = (d - 1) / 2. Carried as metadata only.
    double spin() const noexcept {
        return (static_cast<double>(dimension_) - 1.0) / 2.0;
    }

  private:
    OscillatorParams(std::size_t d, double m, double w, double h) : dimension_(d), mass_(m), frequency_(w), hbar_(h) {
    }

    std::size_t dimension_;
    double mass_;
    double frequency_;
    double hbar_;
};

/// Real coordinates and momenta of the oscillator.
struct PhaseSpacePoint {
    RVector q;
    RVector p;

    PhaseSpacePoint(RVector q_, RVector p_);

    std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(q.size());
    }
};

/// A complex state vector validated against the shell sum |psi_n|^2 = hbar.
/// Only constructible through make_state / project_to_shell.
class StateVector {
  public:
    const CVector &components() const noexcept {
        return components_;
    }
    double hbar() const noexcept {
        return hbar_;
    }
    std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(components_.size());
    }
    Complex operator[](std::size_t n) const {
        return components_[static_cast<Eigen::Index>(n)];
    }

  private:
    friend StateVector make_state(CVector components, double hbar, double shell_tol);
    StateVector(CVector components, double hbar) : components_(std::move(components)), hbar_(hbar) {
    }

    CVector components_;
    double hbar_;
};

/// A d x d matrix Hermitian within tol_herm, identified with the form
/// A(psi, psi*) = <psi|A|psi>.
class HermitianObservable {
  public:
    /// Validates squareness and Hermiticity.
    explicit HermitianObservable(CMatrix matrix, double herm_tol = tol::kHerm);

    /// (M + M^dagger) / 2, exactly Hermitian. M must be square.
    static HermitianObservable symmetrized(const CMatrix &matrix);

    const CMatrix &matrix() const noexcept {
        return matrix_;
    }
    std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(matrix_.rows());
    }
    double frobenius_norm() const {
        return matrix_.norm();
    }

  private:
    struct Trusted {};
    HermitianObservable(CMatrix matrix, Trusted) : matrix_(std::move(matrix)) {
    }

    CMatrix matrix_;
};

/// Quadratic truncation of a general real observable:
///   A0 + sum conj(An) psi_n + sum An conj(psi_n) + <psi|A|psi>
///      + sum Bnm conj(psi_n) conj(psi_m) + sum conj(Bnm) psi_n psi_m.
struct GeneralQuadraticObservable {
    double constant = 0.0;
    CVector linear;
    HermitianObservable hermitian;
    CMatrix anomalous;

    /// Validates shapes and that `anomalous` is symmetric within herm_tol.
    static GeneralQuadraticObservable make(double constant, CVector linear, HermitianObservable hermitian,
                                           CMatrix anomalous, double herm_tol = tol::kHerm);

    /// Zero constant, linear and anomalous parts.
    static GeneralQuadraticObservable from_hermitian(const HermitianObservable &hermitian);

    std::size_t dimension() const noexcept {
        return hermitian.dimension();
    }
};

StateVector make_state(CVector components, double hbar, double shell_tol = tol::kShell);

StateVector project_to_shell(const CVector &raw, double hbar, double zero_tol = tol::kZero);

/// Representative whose first component with modulus above zero_tol is real
/// and positive. Works on any nonzero vector; the norm is unchanged.
CVector canonical_phase(const CVector &v, double zero_tol = tol::kZero);
StateVector canonical_phase(const StateVector &s, double zero_tol = tol::kZero);

/// Phase-insensitive equality: |<a|b>| >= |a||b| (1 - tol).
bool states_equal(const StateVector &a, const StateVector &b, double tolerance);

/// Q = sum_n n |n><n|, i.e. diag(1, ..., d).
HermitianObservable config_observable(std::size_t d);

/// max_{n,m} |M_nm - conj(M_mn)|. M must be square.
double hermiticity_defect(const CMatrix &m);

}  // namespace qshell
