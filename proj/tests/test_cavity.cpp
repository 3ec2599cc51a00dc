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
#include "uqsd/cavity.hpp"
#include "uqsd/errors.hpp"

namespace uqsd {
namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t ix(AtomLevel atom, std::size_t n) { return joint_index(atom, FockIndex(n)); }

TEST(Basis, AtomMajorOrdering) {
    EXPECT_EQ(ix(AtomLevel::a, 0), 0u);
    EXPECT_EQ(ix(AtomLevel::a, 2), 2u);
    EXPECT_EQ(ix(AtomLevel::b, 0), 3u);
    EXPECT_EQ(ix(AtomLevel::c, 2), 8u);
    EXPECT_THROW(FockIndex(3), std::out_of_range);
}

TEST(Hamiltonian, VacuumGroundStateIsDark) {
    const auto h = build_hamiltonian(2.3);
    for (std::size_t x = 0; x < kJointDim; ++x) {
        EXPECT_EQ(h(ix(AtomLevel::a, 0), x), Complex(0.0));
        EXPECT_EQ(h(x, ix(AtomLevel::a, 0)), Complex(0.0));
    }
}

TEST(Hamiltonian, MatrixElements) {
    const double kappa = 1.7;
    const auto h = build_hamiltonian(kappa);
    EXPECT_EQ(h(ix(AtomLevel::b, 0), ix(AtomLevel::a, 1)), Complex(1.0));
    EXPECT_EQ(h(ix(AtomLevel::c, 0), ix(AtomLevel::b, 1)), Complex(kappa));
    EXPECT_EQ(h(ix(AtomLevel::a, 2), ix(AtomLevel::b, 1)), Complex(std::sqrt(2.0)));
    EXPECT_EQ(h(ix(AtomLevel::c, 1), ix(AtomLevel::b, 2)), Complex(kappa * std::sqrt(2.0)));
}

TEST(Hamiltonian, TruncatedCouplingAbsent) {
    // |b,2> would need |a,3>; only its |c,1> neighbour survives.
    const auto h = build_hamiltonian(0.9);
    int nonzero = 0;
    for (std::size_t x = 0; x < kJointDim; ++x)
        nonzero += h(ix(AtomLevel::b, 2), x) != Complex(0.0);
    EXPECT_EQ(nonzero, 1);
}

TEST(Hamiltonian, HermitianByConstruction) {
    for (double kappa : {0.1, 1.0, 4.5, 50.0})
        EXPECT_TRUE(build_hamiltonian(kappa).is_hermitian(0.0));
}

TEST(Hamiltonian, ConservesExcitationNumber) {
    const auto h = build_hamiltonian(3.1);
    for (std::size_t i = 0; i < kJointDim; ++i) {
        for (std::size_t j = 0; j < kJointDim; ++j) {
            if (excitation_number(i) != excitation_number(j)) {
                EXPECT_EQ(h(i, j), Complex(0.0));
            }
        }
    }
}

TEST(Hamiltonian, RejectsNonPositiveKappa) {
    EXPECT_THROW(build_hamiltonian(0.0), InvalidKappa);
    EXPECT_THROW(build_hamiltonian(-1.0), InvalidKappa);
    EXPECT_THROW(build_hamiltonian(std::nan("")), InvalidKappa);
}

TEST(Ramsey, IdentityAndSwap) {
    EXPECT_EQ(ramsey_unitary(1.0, 0.0), OperatorMatrix::identity(kJointDim));
    const auto swap = ramsey_unitary(0.0, 1.0);
    for (std::size_t n = 0; n < kFockDim; ++n) {
        EXPECT_EQ(swap * joint_basis(AtomLevel::a, n), joint_basis(AtomLevel::b, n));
        EXPECT_EQ(swap * joint_basis(AtomLevel::c, n), joint_basis(AtomLevel::c, n));
    }
}

TEST(Ramsey, UnitaryForRandomAmplitudes) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = testing::random_params(rng);
        const auto u = ramsey_unitary(p.alpha, p.beta);
        EXPECT_TRUE(u.is_unitary());
        EXPECT_LE(max_norm_diff(u * joint_basis(AtomLevel::a, 1),
                                p.alpha * joint_basis(AtomLevel::a, 1) +
                                    p.beta * joint_basis(AtomLevel::b, 1)),
                  1e-15);
    }
}

TEST(Ramsey, RejectsUnnormalizedAmplitudes) {
    EXPECT_THROW(ramsey_unitary(1.0, 1.0), NotNormalized);
    SystemParams p;
    p.alpha = 0.5;
    EXPECT_THROW(protocol_unitary(p), NotNormalized);
}

TEST(Protocol, ZeroPhaseIsIdentity) {
    SystemParams p;
    p.theta = 0.0;
    EXPECT_LE(max_norm_diff(protocol_unitary(p), OperatorMatrix::identity(kJointDim)), 1e-15);
}

TEST(Protocol, VacuumColumnClosedForm) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = testing::random_params(rng);
        const auto col = protocol_unitary(p).column(ix(AtomLevel::a, 0));
        StateVector expected(kJointDim);
        expected[ix(AtomLevel::a, 0)] = p.alpha;
        expected[ix(AtomLevel::a, 1)] = -kI * p.beta * std::sin(p.theta);
        expected[ix(AtomLevel::b, 0)] = p.beta * std::cos(p.theta);
        EXPECT_LE(max_norm_diff(col, expected), 1e-10);
    }
}

TEST(Protocol, AnalyticColumnsMatchExponential) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = testing::random_params(rng);
        const auto u = protocol_unitary(p);
        const auto cols = analytic_columns(p);
        for (std::size_t n = 0; n < kFockDim; ++n) {
            EXPECT_LE(max_norm_diff(cols[n], u.column(ix(AtomLevel::a, n))), 1e-10)
                << "n = " << n << " theta = " << p.theta << " kappa = " << p.kappa;
            EXPECT_TRUE(cols[n].is_normalized(1e-10));
        }
    }
}

TEST(Protocol, AnalyticColumnsAtZeroPhase) {
    SystemParams p;
    p.theta = 0.0;
    p.alpha = Complex(0.6, 0.0);
    p.beta = Complex(0.0, 0.8);
    const auto cols = analytic_columns(p);
    for (std::size_t n = 0; n < kFockDim; ++n) {
        EXPECT_LE(max_norm_diff(cols[n], p.alpha * joint_basis(AtomLevel::a, n) +
                                             p.beta * joint_basis(AtomLevel::b, n)),
                  1e-15);
    }
}

TEST(Protocol, SinglePhotonColumnCoefficientOfCVacuum) {
    SystemParams p;
    p.kappa = 1.0;
    p.theta = std::numbers::pi / (2.0 * std::sqrt(3.0));
    p.alpha = 0.0;
    p.beta = 1.0;
    const Complex expected = -kI / std::sqrt(3.0);
    EXPECT_LE(std::abs(analytic_columns(p)[1][ix(AtomLevel::c, 0)] - expected), 1e-15);
    EXPECT_LE(std::abs(protocol_unitary(p)(ix(AtomLevel::c, 0), ix(AtomLevel::a, 1)) - expected),
              1e-12);
}

TEST(Protocol, PreservesBasisNorms) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = protocol_unitary(testing::random_params(rng));
        EXPECT_TRUE(u.is_unitary());
        for (std::size_t x = 0; x < kJointDim; ++x) {
            EXPECT_NEAR(u.column(x).norm_squared(), 1.0, 1e-12);
        }
    }
}

TEST(SystemParams, QuantizationCheck) {
    SystemParams p;
    p.kappa = 2.0;
    p.m = 1;
    p.theta = 1.5 * std::numbers::pi / std::sqrt(6.0);
    EXPECT_NO_THROW(p.validate());
    p.theta += 1e-3;
    EXPECT_THROW(p.validate(), PreconditionError);
}

}  // namespace
}  // namespace uqsd
