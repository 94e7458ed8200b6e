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

#include <cstdint>
#include <string>
#include <vector>

#include "qshell/core_model.hpp"
#include "qshell/measurement.hpp"
#include "qshell/rng.hpp"

namespace qshell {

/// Outcome counts per cluster for N independent measurements of a freshly
/// prepared state.
struct FrequencyTable {
    std::int64_t trials = 0;
    std::vector<std::int64_t> counts;
    std::vector<double> frequencies;
    ProbabilityDistribution reference;
    std::uint64_t seed = 0;
    std::string rng_algorithm{CounterRng::kAlgorithm};

    bool operator==(const FrequencyTable &other) const;
};

struct VerificationReport {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::size_t dimension = 0;
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
};

/// Trial k draws from the stream derived from (seed, k), so the table is
/// identical for every `threads` value (0 = hardware concurrency).
FrequencyTable run_trials(const Measurement &measurement, const StateVector &psi, std::int64_t trials,
                          std::uint64_t seed, unsigned threads = 0);
FrequencyTable run_trials(const HermitianObservable &a, const StateVector &psi, std::int64_t trials,
                          std::uint64_t seed, unsigned threads = 0);

/// 99.9th percentile of the chi-square distribution: tabulated for dof 1..32,
/// Wilson-Hilferty beyond.
double chi_square_critical_value(int dof);

/// Pearson goodness-of-fit of the observed counts against the reference
/// distribution. Categories with expected count < 5 are pooled.
VerificationReport chi_square(const FrequencyTable &table);

/// Empirical mean of sampled outcomes against <psi|A|psi> / hbar. Passes when
/// the difference is within 4 sample standard errors (plus a 1e-10 max(1,
/// ||A||_F) rounding floor, which matters only for zero-variance samples).
VerificationReport verify_qm2(const HermitianObservable &a, const StateVector &psi, std::int64_t trials,
                              std::uint64_t seed, unsigned threads = 0);
VerificationReport verify_qm2(const Measurement &measurement, const StateVector &psi, std::int64_t trials,
                              std::uint64_t seed, unsigned threads = 0);

inline constexpr double kCourantFischerTolerance = 1e-6;

/// Runs constrained_min at every admissible level and compares with eigh.
/// Statistic: max_n |a_n(min) - a_n(eigh)| / max(1, |a_n|). Never throws on
/// minimizer failure; the report fails instead.
VerificationReport courant_fischer_check(const HermitianObservable &a, double hbar, std::uint64_t seed,
                                         std::string name = "courant_fischer");

std::vector<VerificationReport> courant_fischer_suite(const std::vector<std::size_t> &dims, int per_dim,
                                                      std::uint64_t seed, double hbar = 1.0);

/// Flow psi under A to each time; statistic is the worst of the relative
/// shell drift and the relative change of <psi|A|psi>. Threshold 1e-9.
VerificationReport norm_conservation_check(const HermitianObservable &a, const StateVector &psi,
                                           const std::vector<double> &times);

/// Random generators shared by the verification suites and tests.
/// Diagonal entries N(0, 1); off-diagonal entries (N(0,1) + i N(0,1)) / sqrt(2).
HermitianObservable random_hermitian(std::size_t d, CounterRng &rng);
/// Complex Gaussian vector projected onto the shell.
StateVector random_state(std::size_t d, double hbar, CounterRng &rng);
/// exp(-i H) for a random Hermitian H.
CMatrix random_unitary(std::size_t d, CounterRng &rng);

}  // namespace qshell
