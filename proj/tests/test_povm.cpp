// Copyright 2026 The uqsd Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "uqsd/errors.hpp"
#include "uqsd/povm.hpp"

namespace uqsd {
namespace {

constexpr Complex kI{0.0, 1.0};
const double kSqrt2 = std::numbers::sqrt2;

struct Trig {
    double s, c, sw, cw, s2, c2, omega;
    explicit Trig(const SystemParams &p)
        : s(std::sin(p.theta)),
          c(std::cos(p.theta)),
          sw(std::sin(manifold_frequency(p.kappa) * p.theta)),
          cw(std::cos(manifold_frequency(p.kappa) * p.theta)),
          s2(std::sin(kSqrt2 * p.kappa * p.theta)),
          c2(std::cos(kSqrt2 * p.kappa * p.theta)),
          omega(manifold_frequency(p.kappa)) {}
};

// Kraus operators written out term by term in the field basis.
KrausSet kraus_oracle(const SystemParams &p) {
    const Trig t(p);
    const Complex al = p.alpha, be = p.beta;
    const double w2 = t.omega * t.omega;
    KrausSet k;
    k.m_a(0, 0) = al;
    k.m_a(1, 0) = -kI * be * t.s;
    k.m_a(1, 1) = al * t.c;
    k.m_a(2, 1) = -kI * be * (kSqrt2 / t.omega) * t.sw;
    k.m_a(2, 2) = al * (1.0 + (2.0 / w2) * (t.cw - 1.0));

    k.m_b(0, 0) = be * t.c;
    k.m_b(0, 1) = -kI * al * t.s;
    k.m_b(1, 1) = be * t.cw;
    k.m_b(1, 2) = -kI * al * (kSqrt2 / t.omega) * t.sw;
    k.m_b(2, 2) = be * t.c2;

    k.m_c(0, 1) = -kI * be * (p.kappa / t.omega) * t.sw;
    k.m_c(0, 2) = al * (kSqrt2 * p.kappa / w2) * (t.cw - 1.0);
    k.m_c(1, 2) = -kI * be * t.s2;
    return k;
}

OperatorMatrix hermitian_from_upper(const OperatorMatrix &upper) {
    OperatorMatrix h = upper;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < i; ++j) h(i, j) = std::conj(h(j, i));
    }
    return h;
}

// POVM elements as closed-form entries; diagonal and upper triangle.
PovmSet povm_oracle(const SystemParams &p) {
    const Trig t(p);
    const double a2 = std::norm(p.alpha), b2 = std::norm(p.beta);
    const Complex ab = p.alpha * std::conj(p.beta);
    const double w2 = t.omega * t.omega;
    const double kk = p.kappa * p.kappa;
    const double brace = 1.0 + (2.0 / w2) * (t.cw - 1.0);
    PovmSet e;
    e.e_a(0, 0) = a2 + b2 * t.s * t.s;
    e.e_a(0, 1) = kI * t.s * t.c * ab;
    e.e_a(1, 1) = a2 * t.c * t.c + b2 * (2.0 / w2) * t.sw * t.sw;
    e.e_a(1, 2) = kI * (kSqrt2 / t.omega) * t.sw * brace * ab;
    e.e_a(2, 2) = a2 * brace * brace;

    e.e_b(0, 0) = b2 * t.c * t.c;
    e.e_b(0, 1) = -kI * t.s * t.c * ab;
    e.e_b(1, 1) = a2 * t.s * t.s + b2 * t.cw * t.cw;
    e.e_b(1, 2) = -kI * (kSqrt2 / t.omega) * t.sw * t.cw * ab;
    e.e_b(2, 2) = a2 * (2.0 / w2) * t.sw * t.sw + b2 * t.c2 * t.c2;

    e.e_c(1, 1) = b2 * (kk / w2) * t.sw * t.sw;
    e.e_c(1, 2) = kI * (kSqrt2 * kk / (w2 * t.omega)) * t.sw * (t.cw - 1.0) * ab;
    e.e_c(2, 2) = a2 * (2.0 * kk / (w2 * w2)) * (t.cw - 1.0) * (t.cw - 1.0) + b2 * t.s2 * t.s2;

    e.e_a = hermitian_from_upper(e.e_a);
    e.e_b = hermitian_from_upper(e.e_b);
    e.e_c = hermitian_from_upper(e.e_c);
    return e;
}

std::vector<double> kappa_grid_for_tests() {
    std::vector<double> ks;
    for (double k = 0.25; k <= 40.0; k *= 1.37) ks.push_back(k);
    ks.push_back(std::numbers::sqrt2);
    return ks;
}

TEST(Kraus, IdentityProtocol) {
    SystemParams p;
    const auto k = extract_kraus(protocol_unitary(p));
    EXPECT_LE(max_norm_diff(k.m_a, OperatorMatrix::identity(3)), 1e-15);
    EXPECT_LE(max_norm_diff(k.m_b, OperatorMatrix(3, 3)), 1e-15);
    EXPECT_LE(max_norm_diff(k.m_c, OperatorMatrix(3, 3)), 1e-15);
}

TEST(Kraus, RamseyOnly) {
    SystemParams p;
    p.alpha = Complex(0.6, 0.0);
    p.beta = Complex(0.0, -0.8);
    const auto k = extract_kraus(protocol_unitary(p));
    const auto id = OperatorMatrix::identity(3);
    EXPECT_LE(max_norm_diff(k.m_a, p.alpha * id), 1e-15);
    EXPECT_LE(max_norm_diff(k.m_b, p.beta * id), 1e-15);
    EXPECT_LE(max_norm_diff(k.m_c, OperatorMatrix(3, 3)), 1e-15);
}

TEST(Kraus, MatchesTermByTermExpressions) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = testing::random_params(rng);
        const auto k = extract_kraus(protocol_unitary(p));
        const auto o = kraus_oracle(p);
        EXPECT_LE(max_norm_diff(k.m_a, o.m_a), 1e-10);
        EXPECT_LE(max_norm_diff(k.m_b, o.m_b), 1e-10);
        EXPECT_LE(max_norm_diff(k.m_c, o.m_c), 1e-10);
        EXPECT_LE(std::abs(k.m_a(1, 0) - (-kI * p.beta * std::sin(p.theta))), 1e-10);
    }
}

TEST(Kraus, CompleteAtArbitraryParameters) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const auto k =
            extract_kraus(protocol_unitary(testing::random_params(rng, 20.0, 0.01, 50.0)));
        EXPECT_LE(k.completeness_residual(), 1e-10);
    }
}

TEST(Kraus, RejectsNonUnitaryAndWrongShape) {
    EXPECT_THROW(extract_kraus(Complex(2.0) * OperatorMatrix::identity(9)), CompletenessViolation);
    EXPECT_THROW(extract_kraus(OperatorMatrix::identity(3)), ShapeMismatch);
}

TEST(Povm, IdentityProtocol) {
    const auto e = povm_from_kraus(extract_kraus(protocol_unitary(SystemParams{})));
    EXPECT_LE(max_norm_diff(e.e_a, OperatorMatrix::identity(3)), 1e-15);
    EXPECT_LE(max_norm_diff(e.e_b, OperatorMatrix(3, 3)), 1e-15);
    EXPECT_LE(max_norm_diff(e.e_c, OperatorMatrix(3, 3)), 1e-15);
}

TEST(Povm, CompleteHermitianPsdForRandomParameters) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const auto e = pipeline_povm(testing::random_params(rng));
        EXPECT_LE(e.completeness_residual(), 1e-10);
        EXPECT_TRUE(e.elements_valid());
        for (AtomLevel nu : kAtomLevels) EXPECT_GE(min_eigenvalue(e[nu]), -1e-10);
    }
}

TEST(Povm, MatchesClosedFormEntries) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = testing::random_params(rng);
        const auto e = pipeline_povm(p);
        const auto o = povm_oracle(p);
        for (AtomLevel nu : kAtomLevels) {
            EXPECT_LE(max_norm_diff(e[nu], o[nu]), 1e-10) << to_string(nu);
        }
    }
}

TEST(Povm, NoCOutcomeWithoutRamseyMixing) {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = testing::random_params(rng);
        p.alpha = 1.0;
        p.beta = 0.0;
        const auto e = pipeline_povm(p);
        EXPECT_LE(max_norm_diff(e.e_c.block(0, 0, 2, 2), OperatorMatrix(2, 2)), 1e-12);
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_LE(std::abs(e.e_c(0, k)), 1e-12);
            EXPECT_LE(std::abs(e.e_c(k, 0)), 1e-12);
        }
    }
}

TEST(DiscriminationParams, QuarterPhase) {
    const auto p = discrimination_params(0, std::numbers::sqrt2);
    EXPECT_NEAR(p.theta, std::numbers::pi / 4.0, 1e-15);
    EXPECT_NEAR(p.alpha.real(), std::numbers::sqrt2 / 2.0, 1e-15);
    EXPECT_EQ(p.alpha.imag(), 0.0);
    EXPECT_EQ(p.beta.real(), 0.0);
    EXPECT_NEAR(p.beta.imag(), std::numbers::sqrt2 / 2.0, 1e-15);
    ASSERT_TRUE(p.m.has_value());
    EXPECT_EQ(*p.m, 0u);
    EXPECT_NO_THROW(p.validate());
}

TEST(DiscriminationParams, StrongCouplingLimit) {
    const auto p = discrimination_params(0, 1e8);
    EXPECT_LT(p.theta, 1e-7);
    EXPECT_NEAR(p.alpha.real(), 1.0, 1e-14);
    EXPECT_LT(std::abs(p.beta), 1e-7);
    EXPECT_THROW(discrimination_params(0, 0.0), InvalidKappa);
}

TEST(DiscriminationParams, Unambiguous) {
    const auto ens = Ensemble::standard();
    for (unsigned m = 0; m <= 10; ++m) {
        for (double kappa : kappa_grid_for_tests()) {
            const auto e = pipeline_povm(discrimination_params(m, kappa));
            EXPECT_LE(std::abs(expectation(e.e_c, ens.psi1)), 1e-12) << m << ' ' << kappa;
            EXPECT_LE(std::abs(expectation(e.e_b, ens.psi2)), 1e-12) << m << ' ' << kappa;
        }
    }
}

TEST(EffectivePovm, QuarterPhaseValues) {
    const auto eff = effective_povm(0, std::numbers::sqrt2);
    const auto perp = Ensemble::psi2_perp();
    EXPECT_LE(max_norm_diff(eff.povm.e_b, Complex(0.5) * OperatorMatrix::outer(perp, perp)), 1e-15);
    OperatorMatrix ec(3, 3);
    ec(1, 1) = 0.25;
    EXPECT_LE(max_norm_diff(eff.povm.e_c, ec), 1e-15);
}

TEST(EffectivePovm, BAnnihilatesPsi2) {
    const auto psi2 = Ensemble::standard().psi2;
    for (unsigned m = 0; m <= 5; ++m) {
        for (double kappa : kappa_grid_for_tests()) {
            const auto v = effective_povm(m, kappa).povm.e_b * psi2;
            EXPECT_LE(max_norm_diff(v, StateVector(3)), 1e-16);
        }
    }
}

TEST(EffectivePovm, AgreesWithPipelineOnLowBlock) {
    for (unsigned m = 0; m <= 6; ++m) {
        for (double kappa : kappa_grid_for_tests()) {
            const auto eff = effective_povm(m, kappa);
            const auto full = pipeline_povm(discrimination_params(m, kappa));
            for (AtomLevel nu : kAtomLevels) {
                EXPECT_LE(max_norm_diff(eff.povm[nu].block(0, 0, 2, 2), full[nu].block(0, 0, 2, 2)),
                          1e-10)
                    << to_string(nu) << " m=" << m << " kappa=" << kappa;
            }
            EXPECT_LE(eff.povm.completeness_residual(2), 1e-10);
        }
    }
}

TEST(EffectivePovm, DroppedWeightDoesNotReachSupportedStates) {
    const auto eff = effective_povm(1, 4.5);
    const auto full = pipeline_povm(discrimination_params(1, 4.5));
    const auto ens = Ensemble::standard();
    for (AtomLevel nu : kAtomLevels) {
        EXPECT_GT(eff.dropped_weight[static_cast<std::size_t>(nu)], 0.0);
        for (const auto &psi : {ens.psi1, ens.psi2}) {
            EXPECT_NEAR(expectation(eff.povm[nu], psi).real(), expectation(full[nu], psi).real(),
                        1e-10);
        }
    }
}

TEST(Probabilities, PublishedOptimumForFirstOrder) {
    const auto r = probabilities(1, 4.50, 0.5);
    EXPECT_NEAR(r.p_s, 0.2644, 5e-5);
    EXPECT_TRUE(r.invariants_hold());
}

TEST(Probabilities, CertainFirstState) {
    for (unsigned m : {0u, 2u, 7u}) {
        for (double kappa : {0.3, 2.0, 9.0}) {
            const auto r = probabilities(m, kappa, 1.0);
            const double s2t = std::sin(2.0 * r.params.theta);
            EXPECT_EQ(r.p_c, 0.0);
            EXPECT_NEAR(r.p_b, 0.25 * s2t * s2t, 1e-15);
        }
    }
}

TEST(Probabilities, QuarterPhaseValues) {
    const auto r = probabilities(0, std::numbers::sqrt2, 0.5);
    EXPECT_NEAR(r.p_b, 0.125, 1e-15);
    EXPECT_NEAR(r.p_c, 0.0625, 1e-15);
    EXPECT_NEAR(r.p_s, 0.1875, 1e-15);
    EXPECT_NEAR(r.p_in, 0.8125, 1e-15);
}

TEST(Probabilities, ClosedFormMatchesTraceRoute) {
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned m = static_cast<unsigned>(rng() % 11);
        const double kappa = 0.1 + 30.0 * u01(rng);
        const double q1 = u01(rng);
        const auto params = discrimination_params(m, kappa);
        const auto closed = probabilities(m, kappa, q1);
        const auto traced = probabilities(pipeline_povm(params), Ensemble::standard(q1), params);
        EXPECT_NEAR(closed.p_b, traced.p_b, 1e-10);
        EXPECT_NEAR(closed.p_c, traced.p_c, 1e-10);
        EXPECT_NEAR(closed.p_in, traced.p_in, 1e-10);
        EXPECT_TRUE(closed.invariants_hold());
        EXPECT_TRUE(traced.invariants_hold());
    }
}

TEST(Probabilities, RejectsBadPriors) {
    EXPECT_THROW(probabilities(0, 1.0, 1.5), InvalidPrior);
    EXPECT_THROW(Ensemble::standard(-0.1), InvalidPrior);
}

TEST(Report, ClampOnlyForDisplay) {
    EXPECT_EQ(DiscriminationReport::clamped(-1e-13), 0.0);
    EXPECT_EQ(DiscriminationReport::clamped(1.0 + 1e-13), 1.0);
    DiscriminationReport r;
    r.p_b = -1e-11;
    r.p_s = r.p_b;
    r.p_in = 1.0 - r.p_s;
    EXPECT_FALSE(r.invariants_hold());
}

TEST(PostMeasurement, IdentityProtocolLeavesStateAlone) {
    const auto k = extract_kraus(protocol_unitary(SystemParams{}));
    const auto rho = Ensemble::standard(0.3).density_matrix();
    const auto out = post_measurement_state(k, AtomLevel::a, rho);
    EXPECT_NEAR(out.probability, 1.0, 1e-15);
    EXPECT_LE(max_norm_diff(out.rho, rho), 1e-15);
}

TEST(PostMeasurement, CNeverFiresOnFirstState) {
    const auto k = extract_kraus(protocol_unitary(discrimination_params(1, 4.5)));
    const auto psi1 = Ensemble::standard().psi1;
    EXPECT_THROW(post_measurement_state(k, AtomLevel::c, OperatorMatrix::outer(psi1, psi1)),
                 ZeroProbabilityOutcome);
}

TEST(PostMeasurement, UnitTraceForRandomInputs) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const auto k = extract_kraus(protocol_unitary(testing::random_params(rng)));
        auto a = testing::random_matrix(3, 3, rng);
        OperatorMatrix rho = a * a.adjoint();
        rho *= Complex(1.0 / rho.trace().real());
        for (AtomLevel nu : kAtomLevels) {
            try {
                const auto out = post_measurement_state(k, nu, rho);
                EXPECT_NEAR(out.rho.trace().real(), 1.0, 1e-12);
                EXPECT_TRUE(out.rho.is_hermitian(1e-12));
            } catch (const ZeroProbabilityOutcome &) {
            }
        }
    }
}

TEST(PostMeasurement, RejectsInvalidDensityMatrix) {
    const auto k = extract_kraus(protocol_unitary(SystemParams{}));
    EXPECT_THROW(
        post_measurement_state(k, AtomLevel::a, Complex(2.0) * OperatorMatrix::identity(3)),
        PreconditionError);
    EXPECT_THROW(post_measurement_state(k, AtomLevel::a, OperatorMatrix::identity(2)),
                 ShapeMismatch);
}

}  // namespace
}  // namespace uqsd
