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

#include "qshell/measurement.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qshell/error.hpp"
#include "qshell/phase_space.hpp"

namespace qshell {

namespace {

void project_out(CVector &v, const std::vector<CVector> &basis) {
    for (const CVector &b : basis) {
        v -= b * b.dot(v);
    }
}

}  // namespace

AdmissibleSubspace AdmissibleSubspace::from_spectrum(const EigenSystem &spectrum, std::size_t level) {
    if (level < 1 || level > spectrum.dimension()) {
        fail(ErrorCode::InvalidArgument, "admissible level " + std::to_string(level) + " outside 1.." +
                                             std::to_string(spectrum.dimension()));
    }
    AdmissibleSubspace sub;
    sub.level = level;
    for (std::size_t m = 0; m + 1 < level; ++m) {
        sub.basis.push_back(spectrum.vector(m));
    }
    return sub;
}

AdmissibleSubspace AdmissibleSubspace::from_basis(std::size_t dimension, std::vector<CVector> basis) {
    if (basis.size() >= dimension) {
        fail(ErrorCode::InvalidArgument, "admissible basis must leave at least one free direction");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        require_same_dimension(static_cast<std::size_t>(basis[i].size()), dimension, "admissible basis");
        for (std::size_t j = 0; j <= i; ++j) {
            Complex overlap = basis[j].dot(basis[i]);
            double expected = i == j ? 1.0 : 0.0;
            if (std::abs(overlap - expected) > 1e-10) {
                fail(ErrorCode::ValidationError, "admissible basis is not orthonormal");
            }
        }
    }
    AdmissibleSubspace sub;
    sub.level = basis.size() + 1;
    sub.basis = std::move(basis);
    return sub;
}

std::vector<double> ProbabilityDistribution::probabilities() const {
    std::vector<double> out;
    out.reserve(outcomes.size());
    for (const Outcome &o : outcomes) {
        out.push_back(o.probability);
    }
    return out;
}

double ProbabilityDistribution::total() const {
    double sum = 0.0;
    for (const Outcome &o : outcomes) {
        sum += o.probability;
    }
    return sum;
}

EigenSystem spectrum(const HermitianObservable &a, const EighOptions &options) {
    return eigh(a, options);
}

ProbabilityDistribution born_probabilities(const EigenSystem &spectrum, const StateVector &psi) {
    require_same_dimension(psi.dimension(), spectrum.dimension(), "born_probabilities");
    const CVector amplitudes = spectrum.vectors.adjoint() * psi.components();
    ProbabilityDistribution dist;
    dist.dimension = spectrum.dimension();
    for (std::size_t c = 0; c < spectrum.clusters.size(); ++c) {
        double weight = 0.0;
        for (std::size_t k : spectrum.clusters[c]) {
            weight += std::norm(amplitudes[static_cast<Eigen::Index>(k)]);
        }
        double p = std::max(0.0, weight / psi.hbar());
        dist.outcomes.push_back(Outcome{spectrum.cluster_value(c), p, spectrum.clusters[c].size()});
    }
    return dist;
}

ProbabilityDistribution born_probabilities(const HermitianObservable &a, const StateVector &psi) {
    require_same_dimension(psi.dimension(), a.dimension(), "born_probabilities");
    return born_probabilities(spectrum(a), psi);
}

double mean_value(const EigenSystem &spectrum, const StateVector &psi) {
    double mean = 0.0;
    for (const Outcome &o : born_probabilities(spectrum, psi).outcomes) {
        mean += o.value * o.probability;
    }
    return mean;
}

double mean_value(const HermitianObservable &a, const StateVector &psi) {
    require_same_dimension(psi.dimension(), a.dimension(), "mean_value");
    return mean_value(spectrum(a), psi);
}

ConstrainedMinResult constrained_min(const HermitianObservable &a, const AdmissibleSubspace &sub, double hbar,
                                     std::uint64_t seed, const MinimizerOptions &options) {
    const std::size_t d = a.dimension();
    for (const CVector &b : sub.basis) {
        require_same_dimension(static_cast<std::size_t>(b.size()), d, "constrained_min basis");
    }
    if (sub.level < 1 || sub.level > d || sub.basis.size() + 1 != sub.level) {
        fail(ErrorCode::InvalidArgument, "constrained_min: inconsistent admissible level " + std::to_string(sub.level));
    }
    if (!(hbar > 0.0)) {
        fail(ErrorCode::InvalidArgument, "constrained_min: hbar must be > 0");
    }

    const CMatrix &m = a.matrix();
    const double scale = a.frobenius_norm();
    const double radius = std::sqrt(hbar);
    const double step = scale > 0.0 ? options.step_scale / scale : 0.0;
    const double threshold = options.gradient_tol * scale * hbar;

    double best_value = std::numeric_limits<double>::infinity();
    std::int64_t total_iterations = 0;
    for (int restart = 0; restart < options.max_restarts; ++restart) {
        CounterRng rng(seed, static_cast<std::uint64_t>(restart));
        CVector psi(static_cast<Eigen::Index>(d));
        for (auto &z : psi) {
            z = Complex(rng.normal(), rng.normal());
        }
        project_out(psi, sub.basis);
        project_out(psi, sub.basis);
        double norm = psi.norm();
        if (norm == 0.0) {
            continue;
        }
        psi *= radius / norm;

        for (std::int64_t it = 0; it <= options.max_iterations; ++it) {
            const CVector a_psi = m * psi;
            const double value = psi.dot(a_psi).real();
            best_value = std::min(best_value, value);
            // Riemannian gradient of the form on the shell, restricted to S_n.
            CVector grad = a_psi - (value / hbar) * psi;
            project_out(grad, sub.basis);
            if (grad.norm() <= threshold) {
                total_iterations += it;
                StateVector argmin = project_to_shell(psi, hbar);
                double form_value = evaluate_form(a, argmin.components());
                return ConstrainedMinResult{form_value / hbar, form_value, std::move(argmin), total_iterations,
                                            restart};
            }
            psi -= step * grad;
            project_out(psi, sub.basis);
            psi *= radius / psi.norm();
        }
        total_iterations += options.max_iterations;
    }
    fail(ErrorCode::NoConvergence,
         "constrained_min did not converge within " + std::to_string(options.max_restarts) + " restarts; best value " +
             std::to_string(best_value / hbar),
         best_value / hbar);
}

std::size_t sample_outcome(const ProbabilityDistribution &dist, CounterRng &rng) {
    if (dist.outcomes.empty()) {
        fail(ErrorCode::InvalidArgument, "sample_outcome: empty distribution");
    }
    const double u = rng.uniform() * dist.total();
    double cumulative = 0.0;
    std::size_t last_supported = 0;
    for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
        const double p = dist.outcomes[k].probability;
        if (p <= 0.0) {
            continue;
        }
        last_supported = k;
        cumulative += p;
        if (u < cumulative) {
            return k;
        }
    }
    return last_supported;
}

Measurement::Measurement(HermitianObservable a, const EighOptions &options)
    : observable_(std::move(a)), spectrum_(eigh(observable_, options)) {
}

ProbabilityDistribution Measurement::distribution(const StateVector &psi) const {
    return born_probabilities(spectrum_, psi);
}

MeasurementRecord Measurement::measure(const StateVector &psi, CounterRng &rng) const {
    std::size_t cluster = sample_outcome(distribution(psi), rng);
    return collapse(psi, cluster);
}

MeasurementRecord Measurement::collapse(const StateVector &psi, std::size_t cluster) const {
    require_same_dimension(psi.dimension(), spectrum_.dimension(), "collapse");
    if (cluster >= spectrum_.clusters.size()) {
        fail(ErrorCode::InvalidArgument, "collapse: cluster " + std::to_string(cluster) + " out of range");
    }
    CVector projected = CVector::Zero(psi.components().size());
    for (std::size_t k : spectrum_.clusters[cluster]) {
        CVector v = spectrum_.vector(k);
        projected += v * v.dot(psi.components());
    }
    const double weight = projected.norm();
    if (weight <= tol::kZero * std::sqrt(psi.hbar())) {
        fail(ErrorCode::DegenerateProjectionUnderflow,
             "state has no weight on outcome cluster " + std::to_string(cluster), weight);
    }
    return MeasurementRecord{spectrum_.cluster_value(cluster), cluster, project_to_shell(projected, psi.hbar())};
}

MeasurementRecord measure(const HermitianObservable &a, const StateVector &psi, CounterRng &rng) {
    require_same_dimension(psi.dimension(), a.dimension(), "measure");
    return Measurement(a).measure(psi, rng);
}

}  // namespace qshell
