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

#include "qshell/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qshell/error.hpp"

namespace qshell {

namespace {

double off_diagonal_norm(const CMatrix &m) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r != c) {
                sum += std::norm(m(r, c));
            }
        }
    }
    return std::sqrt(sum);
}

// Annihilates work(p, q) with the unitary J = D R D^dagger, where D removes
// the phase of work(p, q) and R is the classical real Jacobi rotation.
void rotate(CMatrix &work, CMatrix &vectors, Eigen::Index p, Eigen::Index q) {
    const Complex apq = work(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) {
        return;
    }
    const Complex phase = apq / r;
    const double app = work(p, p).real();
    const double aqq = work(q, q).real();
    const double theta = (aqq - app) / (2.0 * r);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) {
        t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex j_pp = c;
    const Complex j_qq = c;
    const Complex j_pq = s * phase;
    const Complex j_qp = -s * std::conj(phase);

    const Eigen::Index d = work.rows();
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex kp = work(k, p);
        const Complex kq = work(k, q);
        work(k, p) = kp * j_pp + kq * j_qp;
        work(k, q) = kp * j_pq + kq * j_qq;
    }
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex pk = work(p, k);
        const Complex qk = work(q, k);
        work(p, k) = std::conj(j_pp) * pk + std::conj(j_qp) * qk;
        work(q, k) = std::conj(j_pq) * pk + std::conj(j_qq) * qk;
    }
    work(p, q) = 0.0;
    work(q, p) = 0.0;
    work(p, p) = app - t * r;
    work(q, q) = aqq + t * r;

    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex kp = vectors(k, p);
        const Complex kq = vectors(k, q);
        vectors(k, p) = kp * j_pp + kq * j_qp;
        vectors(k, q) = kp * j_pq + kq * j_qq;
    }
}

Eigen::Index largest_component(const CMatrix &vectors, Eigen::Index col) {
    Eigen::Index best = 0;
    double best_mod = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
        double m = std::abs(vectors(r, col));
        if (m > best_mod) {
            best_mod = m;
            best = r;
        }
    }
    return best;
}

bool same_cluster(double a, double b, double tolerance) {
    return std::abs(a - b) <= tolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

double EigenSystem::cluster_value(std::size_t cluster) const {
    const auto &members = clusters.at(cluster);
    double sum = 0.0;
    for (std::size_t k : members) {
        sum += values[static_cast<Eigen::Index>(k)];
    }
    return sum / static_cast<double>(members.size());
}

std::size_t EigenSystem::cluster_of(std::size_t n) const {
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        if (std::find(clusters[c].begin(), clusters[c].end(), n) != clusters[c].end()) {
            return c;
        }
    }
    fail(ErrorCode::InvalidArgument, "eigenpair index " + std::to_string(n) + " out of range");
}

bool check_hermitian(const CMatrix &m, double tolerance) {
    return hermiticity_defect(m) <= tolerance;
}

EigenSystem eigh(const HermitianObservable &a, const EighOptions &options) {
    const Eigen::Index d = static_cast<Eigen::Index>(a.dimension());
    CMatrix work = a.matrix();
    CMatrix vectors = CMatrix::Identity(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        work(k, k) = work(k, k).real();
    }

    const double scale = work.norm();
    int sweeps = 0;
    double off = off_diagonal_norm(work);
    while (off > options.off_tol * scale) {
        if (sweeps >= options.max_sweeps) {
            fail(ErrorCode::NoConvergence,
                 "Jacobi eigensolver did not converge in " + std::to_string(options.max_sweeps) +
                     " sweeps (relative off-diagonal norm " + std::to_string(off / scale) + ")",
                 off / scale);
        }
        for (Eigen::Index p = 0; p + 1 < d; ++p) {
            for (Eigen::Index q = p + 1; q < d; ++q) {
                rotate(work, vectors, p, q);
            }
        }
        ++sweeps;
        off = off_diagonal_norm(work);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return work(x, x).real() < work(y, y).real(); });

    // Group the ascending run into clusters (transitive closure over
    // neighbours), then order each cluster by the largest-component index.
    std::vector<std::vector<Eigen::Index>> groups;
    for (std::size_t k = 0; k < order.size(); ++k) {
        double value = work(order[k], order[k]).real();
        if (k > 0) {
            double prev = work(order[k - 1], order[k - 1]).real();
            if (same_cluster(prev, value, options.cluster_tol)) {
                groups.back().push_back(order[k]);
                continue;
            }
        }
        groups.push_back({order[k]});
    }

    EigenSystem out;
    out.values.resize(d);
    out.vectors.resize(d, d);
    out.sweeps = sweeps;
    Eigen::Index slot = 0;
    for (auto &group : groups) {
        std::stable_sort(group.begin(), group.end(), [&](Eigen::Index x, Eigen::Index y) {
            return largest_component(vectors, x) < largest_component(vectors, y);
        });
        std::vector<std::size_t> members;
        for (Eigen::Index src : group) {
            out.values[slot] = work(src, src).real();
            out.vectors.col(slot) = canonical_phase(CVector(vectors.col(src)));
            members.push_back(static_cast<std::size_t>(slot));
            ++slot;
        }
        out.clusters.push_back(std::move(members));
    }
    return out;
}

CMatrix commutator(const HermitianObservable &a, const HermitianObservable &b) {
    require_same_dimension(a.dimension(), b.dimension(), "commutator");
    return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

HermitianObservable bracket_observable(const HermitianObservable &a, const HermitianObservable &b) {
    return HermitianObservable::symmetrized(Complex(0.0, 1.0) * commutator(a, b));
}

CMatrix unitary_propagator(const EigenSystem &spectrum, double t) {
    const Eigen::Index d = static_cast<Eigen::Index>(spectrum.dimension());
    if (t == 0.0) {
        return CMatrix::Identity(d, d);
    }
    CVector phases(d);
    for (Eigen::Index n = 0; n < d; ++n) {
        phases[n] = std::polar(1.0, -spectrum.values[n] * t);
    }
    return spectrum.vectors * phases.asDiagonal() * spectrum.vectors.adjoint();
}

CMatrix unitary_propagator(const HermitianObservable &a, double t) {
    return unitary_propagator(eigh(a), t);
}

}  // namespace qshell
