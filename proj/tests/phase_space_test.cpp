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


#include <cmath>

#include <gtest/gtest.h>

#include "qshell/experiments.hpp"
#include "qshell/linalg.hpp"
#include "qshell/phase_space.hpp"
#include "test_util.hpp"

namespace qshell {
namespace {

using testing::error_code_of;
using testing::uniform_in;

const Complex I(0.0, 1.0);

CMatrix sigma_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

CMatrix sigma_y() {
    CMatrix m(2, 2);
    m << 0.0, -I, I, 0.0;
    return m;
}

RVector rvec(std::initializer_list<double> xs) {
    RVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index k = 0;
    for (double x : xs) {
        v[k++] = x;
    }
    return v;
}

TEST(ToComplex, Examples) {
    CVector psi = to_complex(PhaseSpacePoint(rvec({1.0, 0.0}), rvec({0.0, 2.0})), OscillatorParams::make(2, 1.0, 2.0));
    EXPECT_NEAR(std::abs(psi[0] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi[1] - I), 0.0, 1e-15);

    CVector zero = to_complex(PhaseSpacePoint(RVector::Zero(3), RVector::Zero(3)), OscillatorParams::make(3));
    EXPECT_EQ(zero, CVector::Zero(3));

    CVector one = to_complex(PhaseSpacePoint(rvec({1.0}), rvec({0.0})), OscillatorParams::make(1, 2.0, 1.0));
    EXPECT_NEAR(std::abs(one[0] - 1.0), 0.0, 1e-15);
}

TEST(ToComplex, DimensionMismatch) {
    PhaseSpacePoint pt(RVector::Zero(2), RVector::Zero(2));
    EXPECT_EQ(error_code_of([&] { to_complex(pt, OscillatorParams::make(3)); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(error_code_of([&] { to_real(CVector::Zero(2), OscillatorParams::make(3)); }),
              ErrorCode::DimensionMismatch);
}

TEST(ToReal, Examples) {
    CVector psi(2);
    psi << 1.0, I;
    PhaseSpacePoint pt = to_real(psi, OscillatorParams::make(2, 1.0, 2.0));
    EXPECT_NEAR(pt.q[0], 1.0, 1e-15);
    EXPECT_NEAR(pt.q[1], 0.0, 1e-15);
    EXPECT_NEAR(pt.p[0], 0.0, 1e-15);
    EXPECT_NEAR(pt.p[1], 2.0, 1e-15);

    PhaseSpacePoint rest = to_real(CVector::Zero(2), OscillatorParams::make(2));
    EXPECT_EQ(rest.q, RVector::Zero(2));
    EXPECT_EQ(rest.p, RVector::Zero(2));
}

TEST(ToReal, RoundTripThousandPoints) {
    CounterRng rng(31);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t d = 1 + k % 8;
        const double m = uniform_in(rng, 0.1, 10.0);
        const double w = uniform_in(rng, 0.1, 10.0);
        OscillatorParams params = OscillatorParams::make(d, m, w);
        RVector q(static_cast<Eigen::Index>(d));
        RVector p(static_cast<Eigen::Index>(d));
        for (Eigen::Index n = 0; n < q.size(); ++n) {
            q[n] = rng.normal();
            p[n] = rng.normal();
        }
        PhaseSpacePoint back = to_real(to_complex(PhaseSpacePoint(q, p), params), params);
        ASSERT_LE((back.q - q).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_LE((back.p - p).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(ShellResidual, Examples) {
    const double m = 2.0;
    const double w = 3.0;
    const double h = 0.7;
    OscillatorParams params = OscillatorParams::make(3, m, w, h);
    PhaseSpacePoint on(rvec({std::sqrt(2 * h / (m * w)), 0.0, 0.0}), RVector::Zero(3));
    EXPECT_NEAR(shell_residual(on, params), 0.0, 1e-15);
    PhaseSpacePoint rest(RVector::Zero(3), RVector::Zero(3));
    EXPECT_EQ(shell_residual(rest, params), -h);
}

TEST(ShellResidual, MatchesComplexNorm) {
    CounterRng rng(32);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t d = 1 + k % 8;
        OscillatorParams params =
            OscillatorParams::make(d, uniform_in(rng, 0.1, 10.0), uniform_in(rng, 0.1, 10.0), uniform_in(rng, 0.1, 2.0));
        RVector q(static_cast<Eigen::Index>(d));
        RVector p(static_cast<Eigen::Index>(d));
        for (Eigen::Index n = 0; n < q.size(); ++n) {
            q[n] = rng.normal();
            p[n] = rng.normal();
        }
        PhaseSpacePoint pt(q, p);
        const double via_complex = to_complex(pt, params).squaredNorm() - params.hbar();
        ASSERT_NEAR(shell_residual(pt, params), via_complex, 1e-12 * std::max(1.0, std::abs(via_complex)));
    }
}

TEST(EvaluateObservable, Examples) {
    const double h = 0.3;
    CounterRng rng(33);
    StateVector psi = random_state(4, h, rng);
    EXPECT_NEAR(evaluate_observable(HermitianObservable(CMatrix::Identity(4, 4)), psi), h, 1e-15);

    CVector e1(2);
    e1 << std::sqrt(h), 0.0;
    EXPECT_NEAR(evaluate_observable(config_observable(2), make_state(e1, h)), h, 1e-15);

    CVector eq(2);
    eq << std::sqrt(h / 2), std::sqrt(h / 2);
    EXPECT_NEAR(evaluate_observable(config_observable(2), make_state(eq, h)), 1.5 * h, 1e-15);
}

TEST(EvaluateForm, NonRealValue) {
    // A matrix accepted only under a deliberately loose Hermiticity tolerance
    // yields a visibly complex form.
    CMatrix far(2, 2);
    far << 0.0, I, I, 0.0;
    HermitianObservable loose(far, 10.0);
    CVector psi(2);
    psi << 1.0, 1.0;
    EXPECT_EQ(error_code_of([&] { evaluate_form(loose, psi); }), ErrorCode::NonRealValue);

    CMatrix near(2, 2);
    near << 0.0, Complex(1.0, 1e-13), 1.0, 0.0;
    EXPECT_NO_THROW(evaluate_form(HermitianObservable(near), psi));
}

TEST(EvaluateGeneral, Examples) {
    const double h = 1.7;
    CounterRng rng(34);
    StateVector psi = random_state(3, h, rng);
    auto identity = GeneralQuadraticObservable::from_hermitian(HermitianObservable(CMatrix::Identity(3, 3)));
    EXPECT_NEAR(evaluate_general(identity, psi.components()), h, 1e-14);

    auto constant = GeneralQuadraticObservable::make(5.0, CVector::Zero(3), HermitianObservable(CMatrix::Zero(3, 3)),
                                                     CMatrix::Zero(3, 3));
    EXPECT_EQ(evaluate_general(constant, psi.components()), 5.0);

    CMatrix b(1, 1);
    b << 1.0;
    auto anomalous =
        GeneralQuadraticObservable::make(0.0, CVector::Zero(1), HermitianObservable(CMatrix::Zero(1, 1)), b);
    CVector one(1);
    one << 1.0;
    EXPECT_NEAR(evaluate_general(anomalous, one), 2.0, 1e-15);
}

TEST(EvaluateGeneral, ReducesToHermitianFormExactly) {
    CounterRng rng(35);
    for (int k = 0; k < 200; ++k) {
        const std::size_t d = 1 + k % 8;
        HermitianObservable a = random_hermitian(d, rng);
        StateVector psi = random_state(d, 1.0, rng);
        EXPECT_EQ(evaluate_general(GeneralQuadraticObservable::from_hermitian(a), psi.components()),
                  evaluate_observable(a, psi));
    }
}

TEST(EvaluateGeneral, MatchesLoopOracle) {
    CounterRng rng(36);
    for (int k = 0; k < 100; ++k) {
        const std::size_t d = 1 + k % 5;
        const auto n = static_cast<Eigen::Index>(d);
        CVector lin = testing::gaussian_vector(d, rng);
        CMatrix b(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = r; c < n; ++c) {
                b(r, c) = b(c, r) = Complex(rng.normal(), rng.normal());
            }
        }
        HermitianObservable a = random_hermitian(d, rng);
        const double a0 = rng.normal();
        auto g = GeneralQuadraticObservable::make(a0, lin, a, b);
        CVector psi = testing::gaussian_vector(d, rng);
        Complex sum = a0 + testing::loop_form(a.matrix(), psi);
        for (Eigen::Index i = 0; i < n; ++i) {
            sum += std::conj(lin[i]) * psi[i] + lin[i] * std::conj(psi[i]);
            for (Eigen::Index j = 0; j < n; ++j) {
                sum += b(i, j) * std::conj(psi[i]) * std::conj(psi[j]) + std::conj(b(i, j)) * psi[i] * psi[j];
            }
        }
        EXPECT_NEAR(evaluate_general(g, psi), sum.real(), 1e-12 * std::max(1.0, std::abs(sum)));
    }
}

TEST(Gradient, MatchesFiniteDifferences) {
    CounterRng rng(37);
    for (int k = 0; k < 100; ++k) {
        const std::size_t d = 1 + k % 8;
        HermitianObservable a = random_hermitian(d, rng);
        CVector psi = random_state(d, 1.0, rng).components();
        auto f = [&](const CVector &v) { return evaluate_form(a, v); };
        CVector g_conj = gradient_conj(a, psi);
        CVector g = gradient(a, psi);
        for (Eigen::Index n = 0; n < psi.size(); ++n) {
            EXPECT_LE(std::abs(g_conj[n] - testing::fd_wirtinger_conj(f, psi, n, 1e-5)), 1e-6);
            EXPECT_LE(std::abs(g[n] - testing::fd_wirtinger(f, psi, n, 1e-5)), 1e-6);
        }
    }
}

TEST(PoissonBracket, Examples) {
    CVector up(2);
    up << 1.0, 0.0;
    StateVector psi = make_state(up, 1.0);
    HermitianObservable sx(sigma_x());
    HermitianObservable sy(sigma_y());
    EXPECT_NEAR(poisson_bracket(sx, sy, psi).value, -2.0, 1e-15);
    EXPECT_EQ(poisson_bracket(sx, sx, psi).value, 0.0);

    CounterRng rng(38);
    HermitianObservable a = random_hermitian(4, rng);
    StateVector phi = random_state(4, 1.0, rng);
    EXPECT_NEAR(poisson_bracket(a, HermitianObservable(CMatrix::Identity(4, 4)), phi).value, 0.0, 1e-14);
}

TEST(PoissonBracket, DimensionMismatch) {
    CounterRng rng(39);
    StateVector psi = random_state(2, 1.0, rng);
    EXPECT_EQ(error_code_of([&] { poisson_bracket(config_observable(2), config_observable(3), psi); }),
              ErrorCode::DimensionMismatch);
}

TEST(PoissonBracket, AgreesWithDerivativeForm) {
    CounterRng rng(40);
    for (int k = 0; k < 200; ++k) {
        const std::size_t d = 1 + k % 8;
        HermitianObservable a = random_hermitian(d, rng);
        HermitianObservable b = random_hermitian(d, rng);
        StateVector psi = random_state(d, 1.0, rng);
        EXPECT_NEAR(poisson_bracket(a, b, psi).value, testing::fd_bracket(a.matrix(), b.matrix(), psi.components(), 1e-5),
                    1e-6);
    }
}

TEST(PoissonBracket, BilinearAntisymmetricJacobi) {
    CounterRng rng(41);
    for (int k = 0; k < 200; ++k) {
        const std::size_t d = 2 + k % 7;
        HermitianObservable a = random_hermitian(d, rng);
        HermitianObservable b = random_hermitian(d, rng);
        HermitianObservable c = random_hermitian(d, rng);
        StateVector psi = random_state(d, 1.0, rng);
        const double ab = poisson_bracket(a, b, psi).value;
        EXPECT_NEAR(ab, -poisson_bracket(b, a, psi).value, 1e-12);

        const double alpha = rng.normal();
        HermitianObservable lin = HermitianObservable::symmetrized(alpha * a.matrix() + c.matrix());
        EXPECT_NEAR(poisson_bracket(lin, b, psi).value, alpha * ab + poisson_bracket(c, b, psi).value, 1e-11);

        const double jacobi = poisson_bracket(a, bracket_observable(b, c), psi).value +
                              poisson_bracket(b, bracket_observable(c, a), psi).value +
                              poisson_bracket(c, bracket_observable(a, b), psi).value;
        EXPECT_LE(std::abs(jacobi), 1e-8);
    }
}

TEST(HermitianFromFunction, Examples) {
    HermitianObservable q = config_observable(2);
    auto fq = [&](const CVector &v) { return evaluate_form(q, v); };
    HermitianObservable got = hermitian_from_function(fq, 2, 1e-3);
    EXPECT_LE((got.matrix() - q.matrix()).cwiseAbs().maxCoeff(), 1e-6);

    HermitianObservable zero = hermitian_from_function([](const CVector &) { return 0.0; }, 3, 1e-3);
    EXPECT_EQ(zero.matrix(), CMatrix::Zero(3, 3));

    HermitianObservable sx(sigma_x());
    auto fx = [&](const CVector &v) { return evaluate_form(sx, v); };
    EXPECT_LE((hermitian_from_function(fx, 2, 1e-3).matrix() - sx.matrix()).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(HermitianFromFunction, RecoversRandomComplexKernels) {
    CounterRng rng(42);
    for (int k = 0; k < 20; ++k) {
        const std::size_t d = 1 + k % 6;
        HermitianObservable a = random_hermitian(d, rng);
        auto f = [&](const CVector &v) { return testing::loop_form(a.matrix(), v); };
        HermitianObservable got = hermitian_from_function(f, d, default_extraction_step(1.0));
        EXPECT_LE((got.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-6);
        EXPECT_EQ(hermiticity_defect(got.matrix()), 0.0);
    }
}

TEST(HermitianFromFunction, NotVanishingAtRest) {
    EXPECT_EQ(error_code_of([] { hermitian_from_function([](const CVector &) { return 1.0; }, 2, 1e-3); }),
              ErrorCode::NotVanishingAtRest);
}

}  // namespace
}  // namespace qshell
