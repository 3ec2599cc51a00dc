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

#include "uqsd/cavity.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uqsd/errors.hpp"

namespace uqsd {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t idx(AtomLevel atom, std::size_t n) { return joint_index(atom, FockIndex(n)); }

void require_normalized(Complex alpha, Complex beta) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > tol::kParams) {
        throw NotNormalized("|alpha|^2 + |beta|^2 = " + std::to_string(norm));
    }
}

void require_kappa(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw InvalidKappa("kappa must be finite and > 0, got " + std::to_string(kappa));
    }
}

}  // namespace

const char *to_string(AtomLevel level) {
    switch (level) {
        case AtomLevel::a: return "a";
        case AtomLevel::b: return "b";
        case AtomLevel::c: return "c";
    }
    return "?";
}

StateVector joint_basis(AtomLevel atom, std::size_t n) {
    return StateVector::basis(kJointDim, idx(atom, n));
}

void SystemParams::validate() const {
    require_normalized(alpha, beta);
    require_kappa(kappa);
    if (m) {
        const double expected = (*m + 0.5) * std::numbers::pi / manifold_frequency(kappa);
        if (std::abs(theta - expected) > tol::kParams) {
            throw PreconditionError("theta does not satisfy the quantization rule for m = " +
                                    std::to_string(*m));
        }
    }
}

double manifold_frequency(double kappa) { return std::sqrt(2.0 + kappa * kappa); }

std::size_t excitation_number(std::size_t joint) { return joint / kFockDim + joint % kFockDim; }

OperatorMatrix build_hamiltonian(double kappa) {
    require_kappa(kappa);
    OperatorMatrix h(kJointDim, kJointDim);
    auto couple = [&h](std::size_t i, std::size_t j, double g) {
        h(i, j) = g;
        h(j, i) = g;
    };
    // sigma_ba a + h.c.: |a,n> <-> |b,n-1> with amplitude sqrt(n).
    for (std::size_t n = 1; n < kFockDim; ++n) {
        couple(idx(AtomLevel::b, n - 1), idx(AtomLevel::a, n), std::sqrt(double(n)));
    }
    // kappa (sigma_cb a + h.c.): |b,n> <-> |c,n-1> with amplitude kappa sqrt(n).
    for (std::size_t n = 1; n < kFockDim; ++n) {
        couple(idx(AtomLevel::c, n - 1), idx(AtomLevel::b, n), kappa * std::sqrt(double(n)));
    }
    return h;
}

OperatorMatrix ramsey_unitary(Complex alpha, Complex beta) {
    require_normalized(alpha, beta);
    OperatorMatrix atom = OperatorMatrix::identity(kAtomDim);
    atom(0, 0) = alpha;
    atom(1, 0) = beta;
    atom(0, 1) = -std::conj(beta);
    atom(1, 1) = std::conj(alpha);
    return tensor(atom, OperatorMatrix::identity(kFockDim));
}

OperatorMatrix protocol_unitary(const SystemParams &p) {
    p.validate();
    return expm_hermitian(build_hamiltonian(p.kappa), p.theta) * ramsey_unitary(p.alpha, p.beta);
}

std::array<StateVector, 3> analytic_columns(const SystemParams &p) {
    p.validate();
    const double th = p.theta;
    const double omega = manifold_frequency(p.kappa);
    const double sq2 = std::numbers::sqrt2;
    const Complex al = p.alpha;
    const Complex be = p.beta;

    const double s1 = std::sin(th);
    const double c1 = std::cos(th);
    const double sw = std::sin(omega * th);
    const double cw = std::cos(omega * th);
    const double s2 = std::sin(sq2 * p.kappa * th);
    const double c2 = std::cos(sq2 * p.kappa * th);

    std::array<StateVector, 3> cols{StateVector(kJointDim), StateVector(kJointDim),
                                    StateVector(kJointDim)};

    auto &u0 = cols[0];
    u0[idx(AtomLevel::a, 0)] = al;
    u0[idx(AtomLevel::a, 1)] = -kI * be * s1;
    u0[idx(AtomLevel::b, 0)] = be * c1;

    auto &u1 = cols[1];
    u1[idx(AtomLevel::a, 1)] = al * c1;
    u1[idx(AtomLevel::a, 2)] = -kI * be * (sq2 / omega) * sw;
    u1[idx(AtomLevel::b, 0)] = -kI * al * s1;
    u1[idx(AtomLevel::b, 1)] = be * cw;
    u1[idx(AtomLevel::c, 0)] = -kI * be * (p.kappa / omega) * sw;

    auto &u2 = cols[2];
    const double w2 = omega * omega;
    u2[idx(AtomLevel::a, 2)] = al * (1.0 + (2.0 / w2) * (cw - 1.0));
    u2[idx(AtomLevel::b, 1)] = -kI * al * (sq2 / omega) * sw;
    u2[idx(AtomLevel::b, 2)] = be * c2;
    u2[idx(AtomLevel::c, 0)] = al * (sq2 * p.kappa / w2) * (cw - 1.0);
    u2[idx(AtomLevel::c, 1)] = -kI * be * s2;

    return cols;
}

}  // namespace uqsd
