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

#include <vector>

#include "qshell/core_model.hpp"

namespace qshell {

/// Eigenvalues in ascending order with unit-norm eigenvectors stored as the
/// columns of `vectors`, and the partition of indices into degeneracy
/// clusters (consecutive runs of numerically equal eigenvalues).
///
/// Within a cluster the pairs are ordered by the index of the largest
/// component of the eigenvector, so `values` is ascending up to the cluster
/// tolerance inside a cluster and strictly across clusters.
struct EigenSystem {
    RVector values;
    CMatrix vectors;
    std::vector<std::vector<std::size_t>> clusters;
    int sweeps = 0;

    std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(values.size());
    }
    CVector vector(std::size_t n) const {
        return vectors.col(static_cast<Eigen::Index>(n));
    }
    /// Mean eigenvalue of a cluster.
    double cluster_value(std::size_t cluster) const;
    /// Index of the cluster containing eigenpair n.
    std::size_t cluster_of(std::size_t n) const;
};

struct EighOptions {
    int max_sweeps = 50;
    /// Converged when the off-diagonal Frobenius norm <= off_tol * ||A||_F.
    double off_tol = 1e-12;
    double cluster_tol = tol::kCluster;
};

/// True iff max |M_nm - conj(M_mn)| <= tolerance. Throws NotSquare.
bool check_hermitian(const CMatrix &m, double tolerance);

/// Cyclic complex Jacobi eigensolver. Deterministic: fixed sweep order and
/// each eigenvector passed through canonical_phase.
EigenSystem eigh(const HermitianObservable &a, const EighOptions &options = {});

/// AB - BA.
CMatrix commutator(const HermitianObservable &a, const HermitianObservable &b);

/// i [A, B] as an observable; the matrix realization of the Poisson bracket.
HermitianObservable bracket_observable(const HermitianObservable &a, const HermitianObservable &b);

/// U(t) = sum_n exp(-i a_n t) |a_n><a_n|.
CMatrix unitary_propagator(const EigenSystem &spectrum, double t);
CMatrix unitary_propagator(const HermitianObservable &a, double t);

}  // namespace qshell
