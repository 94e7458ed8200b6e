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

#include "qshell/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "qshell/dynamics.hpp"
#include "qshell/error.hpp"
#include "qshell/linalg.hpp"
#include "qshell/phase_space.hpp"

namespace qshell {

namespace {

// chi2.ppf(0.999, dof) for dof = 1..32.
constexpr std::array<double, 32> kChiSquare999 = {
    10.827566170662733, 13.815510557964274, 16.26623619623813, 18.46682695290317,
    20.515005652432873, 22.457744484825323, 24.321886347856854, 26.12448155837614,
    27.877164871256568, 29.58829844507442, 31.264133620239985, 32.90949040736021,
    34.52817897487089, 36.12327368039813, 37.69729821835383, 39.252354790768464,
    40.79021670690253, 42.31239633167996, 43.82019596451753, 45.31474661812586,
    46.797038041561315, 48.26794229083518, 49.7282324664315, 51.17859777737739,
    52.619655776172834, 54.05196238857664, 55.47602020574521, 56.892285393353625,
    58.301173489794905, 59.70306430442994, 61.098306081058126, 62.487219057088474,
};

// Standard normal quantile at 0.999.
constexpr double kZ999 = 3.090232306167813;

constexpr double kNormConservationTolerance = 1e-9;

}  // namespace

bool FrequencyTable::operator==(const FrequencyTable &other) const {
    if (trials != other.trials || counts != other.counts || frequencies != other.frequencies || seed != other.seed ||
        rng_algorithm != other.rng_algorithm || reference.dimension != other.reference.dimension ||
        reference.outcomes.size() != other.reference.outcomes.size()) {
        return false;
    }
    for (std::size_t k = 0; k < reference.outcomes.size(); ++k) {
        const Outcome &x = reference.outcomes[k];
        const Outcome &y = other.reference.outcomes[k];
        if (x.value != y.value || x.probability != y.probability || x.multiplicity != y.multiplicity) {
            return false;
        }
    }
    return true;
}

FrequencyTable run_trials(const Measurement &measurement, const StateVector &psi, std::int64_t trials,
                          std::uint64_t seed, unsigned threads) {
    if (trials < 1) {
        fail(ErrorCode::InvalidArgument, "run_trials: trials must be >= 1");
    }
    const ProbabilityDistribution dist = measurement.distribution(psi);
    std::vector<std::uint32_t> outcomes(static_cast<std::size_t>(trials));

    auto run_range = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t k = begin; k < end; ++k) {
            CounterRng rng = derived_stream(seed, static_cast<std::uint64_t>(k));
            const std::size_t cluster = sample_outcome(dist, rng);
            // The collapse is performed to honour the measurement contract;
            // only the cluster index is tallied.
            outcomes[static_cast<std::size_t>(k)] =
                static_cast<std::uint32_t>(measurement.collapse(psi, cluster).cluster);
        }
    };

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    const auto workers = static_cast<std::int64_t>(std::min<std::int64_t>(threads, trials));
    if (workers <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (trials + workers - 1) / workers;
        for (std::int64_t w = 0; w < workers; ++w) {
            const std::int64_t begin = w * chunk;
            const std::int64_t end = std::min(trials, begin + chunk);
            if (begin < end) {
                pool.emplace_back(run_range, begin, end);
            }
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    FrequencyTable table;
    table.trials = trials;
    table.seed = seed;
    table.reference = dist;
    table.counts.assign(dist.outcomes.size(), 0);
    for (std::uint32_t c : outcomes) {
        ++table.counts[c];
    }
    for (std::int64_t count : table.counts) {
        table.frequencies.push_back(static_cast<double>(count) / static_cast<double>(trials));
    }
    return table;
}

FrequencyTable run_trials(const HermitianObservable &a, const StateVector &psi, std::int64_t trials,
                          std::uint64_t seed, unsigned threads) {
    require_same_dimension(psi.dimension(), a.dimension(), "run_trials");
    return run_trials(Measurement(a), psi, trials, seed, threads);
}

double chi_square_critical_value(int dof) {
    if (dof < 1) {
        fail(ErrorCode::InvalidArgument, "chi-square needs dof >= 1");
    }
    if (dof <= static_cast<int>(kChiSquare999.size())) {
        return kChiSquare999[static_cast<std::size_t>(dof - 1)];
    }
    const double k = dof;
    const double c = 2.0 / (9.0 * k);
    return k * std::pow(1.0 - c + kZ999 * std::sqrt(c), 3);
}

VerificationReport chi_square(const FrequencyTable &table) {
    constexpr double kMinExpected = 5.0;
    const double n = static_cast<double>(table.trials);

    struct Category {
        double observed = 0.0;
        double expected = 0.0;
    };
    std::vector<Category> large;
    Category pool;
    bool pooled_any = false;
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
        Category c{static_cast<double>(table.counts[k]), n * table.reference.outcomes[k].probability};
        if (c.expected >= kMinExpected) {
            large.push_back(c);
        } else {
            pool.observed += c.observed;
            pool.expected += c.expected;
            pooled_any = true;
        }
    }
    if (pooled_any) {
        if (pool.expected >= kMinExpected || large.empty()) {
            large.push_back(pool);
        } else {
            auto smallest = std::min_element(large.begin(), large.end(), [](const Category &x, const Category &y) {
                return x.expected < y.expected;
            });
            smallest->observed += pool.observed;
            smallest->expected += pool.expected;
        }
    }
    if (large.size() < 2) {
        fail(ErrorCode::InsufficientTrials,
             "chi-square needs at least 2 categories with expected count >= 5 after pooling");
    }

    double statistic = 0.0;
    for (const Category &c : large) {
        statistic += (c.observed - c.expected) * (c.observed - c.expected) / c.expected;
    }
    const int dof = static_cast<int>(large.size()) - 1;
    VerificationReport report;
    report.name = "chi_square";
    report.statistic = statistic;
    report.threshold = chi_square_critical_value(dof);
    report.pass = statistic <= report.threshold;
    report.dimension = table.reference.dimension;
    report.seed = table.seed;
    report.trials = table.trials;
    return report;
}

VerificationReport verify_qm2(const HermitianObservable &a, const StateVector &psi, std::int64_t trials,
                              std::uint64_t seed, unsigned threads) {
    require_same_dimension(psi.dimension(), a.dimension(), "verify_qm2");
    return verify_qm2(Measurement(a), psi, trials, seed, threads);
}

VerificationReport verify_qm2(const Measurement &measurement, const StateVector &psi, std::int64_t trials,
                              std::uint64_t seed, unsigned threads) {
    if (trials < 100) {
        fail(ErrorCode::InvalidArgument, "verify_qm2 needs at least 100 trials");
    }
    const HermitianObservable &a = measurement.observable();
    const FrequencyTable table = run_trials(measurement, psi, trials, seed, threads);
    const double n = static_cast<double>(trials);
    double mean = 0.0;
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
        mean += table.reference.outcomes[k].value * (static_cast<double>(table.counts[k]) / n);
    }
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
        const double dev = table.reference.outcomes[k].value - mean;
        sum_sq += static_cast<double>(table.counts[k]) * dev * dev;
    }
    const double sd = std::sqrt(sum_sq / (n - 1.0));
    const double target = evaluate_observable(a, psi) / psi.hbar();

    VerificationReport report;
    report.name = "qm2_mean";
    report.statistic = std::abs(mean - target);
    report.threshold = 4.0 * sd / std::sqrt(n) + 1e-10 * std::max(1.0, a.frobenius_norm());
    report.pass = report.statistic <= report.threshold;
    report.dimension = a.dimension();
    report.seed = seed;
    report.trials = trials;
    return report;
}

VerificationReport courant_fischer_check(const HermitianObservable &a, double hbar, std::uint64_t seed,
                                         std::string name) {
    const EigenSystem spec = eigh(a);
    double worst = 0.0;
    for (std::size_t level = 1; level <= spec.dimension(); ++level) {
        const AdmissibleSubspace sub = AdmissibleSubspace::from_spectrum(spec, level);
        const std::uint64_t level_seed = CounterRng(seed, level).next_u64();
        const double exact = spec.values[static_cast<Eigen::Index>(level - 1)];
        double found;
        try {
            found = constrained_min(a, sub, hbar, level_seed).eigenvalue;
        } catch (const Error &e) {
            if (e.code() != ErrorCode::NoConvergence) {
                throw;
            }
            found = e.detail();
        }
        const double dev = std::abs(found - exact) / std::max(1.0, std::abs(exact));
        worst = std::isnan(dev) ? std::numeric_limits<double>::infinity() : std::max(worst, dev);
    }
    VerificationReport report;
    report.name = std::move(name);
    report.statistic = worst;
    report.threshold = kCourantFischerTolerance;
    report.pass = worst <= kCourantFischerTolerance;
    report.dimension = a.dimension();
    report.seed = seed;
    return report;
}

std::vector<VerificationReport> courant_fischer_suite(const std::vector<std::size_t> &dims, int per_dim,
                                                      std::uint64_t seed, double hbar) {
    if (dims.empty()) {
        fail(ErrorCode::InvalidArgument, "courant_fischer_suite: dims is empty");
    }
    std::vector<VerificationReport> reports;
    CounterRng rng(seed, 0);
    for (std::size_t d : dims) {
        if (d < 1) {
            fail(ErrorCode::InvalidArgument, "courant_fischer_suite: dimension must be >= 1");
        }
        for (int i = 0; i < per_dim; ++i) {
            HermitianObservable a = random_hermitian(d, rng);
            std::uint64_t matrix_seed = rng.next_u64();
            reports.push_back(courant_fischer_check(
                a, hbar, matrix_seed, "courant_fischer d=" + std::to_string(d) + " #" + std::to_string(i)));
        }
    }
    return reports;
}

VerificationReport norm_conservation_check(const HermitianObservable &a, const StateVector &psi,
                                           const std::vector<double> &times) {
    const double hbar = psi.hbar();
    const double initial = evaluate_observable(a, psi);
    const double value_scale = std::max(1.0, a.frobenius_norm()) * hbar;
    const EigenSystem spec = eigh(a);
    double worst = 0.0;
    for (double t : times) {
        const CVector moved = unitary_propagator(spec, t) * psi.components();
        const double drift = std::abs(moved.squaredNorm() - hbar) / hbar;
        const double change = std::abs(evaluate_form(a, moved) - initial) / value_scale;
        worst = std::max({worst, drift, change});
    }
    VerificationReport report;
    report.name = "norm_conservation";
    report.statistic = worst;
    report.threshold = kNormConservationTolerance;
    report.pass = worst <= kNormConservationTolerance;
    report.dimension = a.dimension();
    return report;
}

HermitianObservable random_hermitian(std::size_t d, CounterRng &rng) {
    const auto n = static_cast<Eigen::Index>(d);
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        m(r, r) = rng.normal();
        for (Eigen::Index c = r + 1; c < n; ++c) {
            Complex z(rng.normal() / std::sqrt(2.0), rng.normal() / std::sqrt(2.0));
            m(r, c) = z;
            m(c, r) = std::conj(z);
        }
    }
    return HermitianObservable(std::move(m));
}

StateVector random_state(std::size_t d, double hbar, CounterRng &rng) {
    CVector v(static_cast<Eigen::Index>(d));
    for (auto &z : v) {
        z = Complex(rng.normal(), rng.normal());
    }
    return project_to_shell(v, hbar);
}

CMatrix random_unitary(std::size_t d, CounterRng &rng) {
    return unitary_propagator(random_hermitian(d, rng), 1.0);
}

}  // namespace qshell
