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
 * Measurement of a Hermitian observable on the shell.
 *
 * Outcomes are the eigenvalues a_n of the observable, grouped into
 * degeneracy clusters. The n-th outcome is the minimum of <psi|A|psi> / hbar
 * over the admissible set S_n (shell states orthogonal to |a_1>..|a_{n-1}>);
 * its probability is p_n = |<a_n|psi>|^2 / hbar, summed over a cluster.
 * Collapse projects onto the cluster eigenspace.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "qshell/core_model.hpp"
#include "qshell/linalg.hpp"
#include "qshell/rng.hpp"

namespace qshell {

/// Shell states orthogonal to `basis`. Level n has n - 1 basis vectors.
struct AdmissibleSubspace {
    std::size_t level = 1;
    std::vector<CVector> basis;

    /// S_n built from the first n - 1 eigenvectors of `spectrum`.
    static AdmissibleSubspace from_spectrum(const EigenSystem &spectrum, std::size_t level);
    /// Validates dimensions and orthonormality of `basis` within 1e-10.
    static AdmissibleSubspace from_basis(std::size_t dimension, std::vector<CVector> basis);
};

struct Outcome {
    double value;
    double probability;
    std::size_t multiplicity;
};

struct ProbabilityDistribution {
    std::vector<Outcome> outcomes;
    std::size_t dimension = 0;

    std::vector<double> probabilities() const;
    double total() const;
};

struct MeasurementRecord {
    double value;
    std::size_t cluster;
    StateVector post;
};

/// Eigen-decomposition with degeneracy clusters; cluster values are the
/// possible outcomes.
EigenSystem spectrum(const HermitianObservable &a, const EighOptions &options = {});

ProbabilityDistribution born_probabilities(const EigenSystem &spectrum, const StateVector &psi);
ProbabilityDistribution born_probabilities(const HermitianObservable &a, const StateVector &psi);

/// sum_n a_n p_n(psi).
double mean_value(const EigenSystem &spectrum, const StateVector &psi);
double mean_value(const HermitianObservable &a, const StateVector &psi);

struct MinimizerOptions {
    /// Step is step_scale / ||A||_F.
    double step_scale = 0.1;
    /// Converged when the projected gradient norm <= gradient_tol * ||A||_F * hbar.
    double gradient_tol = 1e-9;
    int max_restarts = 8;
    std::int64_t max_iterations = 100'000;
};

struct ConstrainedMinResult {
    /// Outcome value: the minimum of the form divided by hbar.
    double eigenvalue;
    /// Raw minimum of <psi|A|psi> on the shell, hbar * eigenvalue.
    double form_value;
    StateVector argmin;
    std::int64_t iterations;
    int restarts;
};

/// Minimizes <psi|A|psi> over the admissible subspace by projected gradient
/// descent from a seeded random start. Throws NoConvergence (detail: best
/// eigenvalue estimate) if no restart converges.
ConstrainedMinResult constrained_min(const HermitianObservable &a, const AdmissibleSubspace &sub, double hbar,
                                     std::uint64_t seed, const MinimizerOptions &options = {});

/// Inverse-CDF draw of a cluster index.
std::size_t sample_outcome(const ProbabilityDistribution &dist, CounterRng &rng);

/// Observable with its spectrum computed once, for repeated measurement.
class Measurement {
  public:
    explicit Measurement(HermitianObservable a, const EighOptions &options = {});

    const HermitianObservable &observable() const noexcept {
        return observable_;
    }
    const EigenSystem &spectrum() const noexcept {
        return spectrum_;
    }

    ProbabilityDistribution distribution(const StateVector &psi) const;
    MeasurementRecord measure(const StateVector &psi, CounterRng &rng) const;
    /// Collapse onto a given cluster. Throws DegenerateProjectionUnderflow if
    /// psi has no weight there.
    MeasurementRecord collapse(const StateVector &psi, std::size_t cluster) const;

  private:
    HermitianObservable observable_;
    EigenSystem spectrum_;
};

MeasurementRecord measure(const HermitianObservable &a, const StateVector &psi, CounterRng &rng);

}  // namespace qshell
