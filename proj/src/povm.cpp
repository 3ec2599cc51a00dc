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

#include "uqsd/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uqsd/errors.hpp"
#include "uqsd/kernels.hpp"

namespace uqsd {

namespace {

const OperatorMatrix &select(AtomLevel level, const OperatorMatrix &a, const OperatorMatrix &b,
                             const OperatorMatrix &c) {
    switch (level) {
        case AtomLevel::a: return a;
        case AtomLevel::b: return b;
        case AtomLevel::c: return c;
    }
    return a;
}

void require_prior(double q1) {
    if (!(q1 >= 0.0 && q1 <= 1.0)) {
        throw InvalidPrior("prior q1 must lie in [0, 1], got " + std::to_string(q1));
    }
}

double row_col_max(const OperatorMatrix &e, std::size_t index) {
    double worst = 0.0;
    for (std::size_t k = 0; k < e.rows(); ++k) {
        worst = std::max({worst, std::abs(e(index, k)), std::abs(e(k, index))});
    }
    return worst;
}

}  // namespace

const OperatorMatrix &KrausSet::operator[](AtomLevel level) const {
    return select(level, m_a, m_b, m_c);
}

double KrausSet::completeness_residual() const {
    OperatorMatrix sum = m_a.adjoint() * m_a;
    sum += m_b.adjoint() * m_b;
    sum += m_c.adjoint() * m_c;
    return max_norm_diff(sum, OperatorMatrix::identity(kFockDim));
}

const OperatorMatrix &PovmSet::operator[](AtomLevel level) const {
    return select(level, e_a, e_b, e_c);
}

double PovmSet::completeness_residual(std::size_t block) const {
    const OperatorMatrix sum = e_a + e_b + e_c;
    return max_norm_diff(sum.block(0, 0, block, block), OperatorMatrix::identity(block));
}

bool PovmSet::elements_valid() const {
    return std::all_of(kAtomLevels.begin(), kAtomLevels.end(), [this](AtomLevel nu) {
        const auto &e = (*this)[nu];
        return e.is_hermitian(tol::kHermiticity) && e.is_psd(tol::kPsd);
    });
}

Ensemble Ensemble::standard(double q1) {
    require_prior(q1);
    const double h = std::numbers::sqrt2 / 2.0;
    return Ensemble{StateVector{1.0, 0.0, 0.0}, StateVector{h, h, 0.0}, q1, 1.0 - q1};
}

StateVector Ensemble::psi2_perp() {
    const double h = std::numbers::sqrt2 / 2.0;
    return StateVector{h, -h, 0.0};
}

OperatorMatrix Ensemble::density_matrix() const {
    return Complex(q1) * OperatorMatrix::outer(psi1, psi1) +
           Complex(q2) * OperatorMatrix::outer(psi2, psi2);
}

void Ensemble::validate() const {
    if (!(q1 >= 0.0 && q2 >= 0.0) || std::abs(q1 + q2 - 1.0) > tol::kNormalization) {
        throw InvalidPrior("priors must be nonnegative and sum to 1");
    }
    if (psi1.dim() != kFockDim || psi2.dim() != kFockDim) {
        throw ShapeMismatch("ensemble states must live in the 3-dim field space");
    }
    if (!psi1.is_normalized() || !psi2.is_normalized()) {
        throw NotNormalized("ensemble states must be normalized");
    }
}

bool DiscriminationReport::invariants_hold() const {
    const auto in_range = [](double p) {
        return p >= -tol::kProbabilityRange && p <= 1.0 + tol::kProbabilityRange;
    };
    return in_range(p_b) && in_range(p_c) && in_range(p_in) && in_range(p_s) &&
           std::abs(p_s - (p_b + p_c)) <= tol::kProbabilitySum &&
           std::abs(p_s + p_in - 1.0) <= tol::kProbabilitySum;
}

KrausSet kraus_blocks(const OperatorMatrix &u) {
    if (u.rows() != kJointDim || u.cols() != kJointDim) {
        throw ShapeMismatch("extract_kraus expects a 9x9 unitary");
    }
    KrausSet k;
    OperatorMatrix *targets[] = {&k.m_a, &k.m_b, &k.m_c};
    for (AtomLevel nu : kAtomLevels) {
        OperatorMatrix &m = *targets[static_cast<std::size_t>(nu)];
        for (std::size_t n = 0; n < kFockDim; ++n) {
            for (std::size_t np = 0; np < kFockDim; ++np) {
                m(n, np) =
                    u(joint_index(nu, FockIndex(n)), joint_index(AtomLevel::a, FockIndex(np)));
            }
        }
    }
    return k;
}

KrausSet extract_kraus(const OperatorMatrix &u) {
    KrausSet k = kraus_blocks(u);
    const double residual = k.completeness_residual();
    if (residual > tol::kCompleteness) {
        throw CompletenessViolation("sum M^dagger M deviates from identity by " +
                                    std::to_string(residual));
    }
    return k;
}

PovmSet povm_from_kraus(const KrausSet &k) {
    return PovmSet{k.m_a.adjoint() * k.m_a, k.m_b.adjoint() * k.m_b, k.m_c.adjoint() * k.m_c};
}

SystemParams discrimination_params(unsigned m, double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw InvalidKappa("kappa must be finite and > 0, got " + std::to_string(kappa));
    }
    SystemParams p;
    p.kappa = kappa;
    p.theta = (m + 0.5) * std::numbers::pi / manifold_frequency(kappa);
    p.alpha = std::cos(p.theta);
    p.beta = Complex(0.0, std::sin(p.theta));
    p.m = m;
    return p;
}

PovmSet pipeline_povm(const SystemParams &p) {
    return povm_from_kraus(extract_kraus(protocol_unitary(p)));
}

EffectivePovm effective_povm(unsigned m, double kappa) {
    const SystemParams p = discrimination_params(m, kappa);
    const double s = std::sin(p.theta);
    const double c = std::cos(p.theta);
    const double s2 = s * s;
    const double c2 = c * c;
    const double sin2_2theta = 4.0 * s2 * c2;
    const double k2 = kappa * kappa;

    EffectivePovm out;
    auto &e = out.povm;
    e.e_a(0, 0) = c2 + s2 * s2;
    e.e_a(0, 1) = 0.25 * sin2_2theta;
    e.e_a(1, 0) = 0.25 * sin2_2theta;
    e.e_a(1, 1) = c2 * c2 + (2.0 / (2.0 + k2)) * s2;

    const auto perp = Ensemble::psi2_perp();
    e.e_b = Complex(0.5 * sin2_2theta) * OperatorMatrix::outer(perp, perp);

    e.e_c(1, 1) = (k2 / (2.0 + k2)) * s2;

    const PovmSet full = pipeline_povm(p);
    for (AtomLevel nu : kAtomLevels) {
        out.dropped_weight[static_cast<std::size_t>(nu)] = row_col_max(full[nu], 2);
    }
    return out;
}

std::array<double, 3> outcome_probabilities(const PovmSet &povm, const StateVector &psi) {
    return {expectation(povm.e_a, psi).real(), expectation(povm.e_b, psi).real(),
            expectation(povm.e_c, psi).real()};
}

DiscriminationReport probabilities(const PovmSet &povm, const Ensemble &ens,
                                   const SystemParams &params) {
    ens.validate();
    const OperatorMatrix rho = ens.density_matrix();
    DiscriminationReport r;
    r.p_in = (povm.e_a * rho).trace().real();
    r.p_b = (povm.e_b * rho).trace().real();
    r.p_c = (povm.e_c * rho).trace().real();
    r.p_s = r.p_b + r.p_c;
    r.params = params;
    r.q1 = ens.q1;
    r.q2 = ens.q2;
    return r;
}

DiscriminationReport probabilities(unsigned m, double kappa, double q1) {
    require_prior(q1);
    DiscriminationReport r;
    r.params = discrimination_params(m, kappa);
    const auto pt = kernels::closed_form_point(m, q1, kappa);
    r.p_b = pt.p_b;
    r.p_c = pt.p_c;
    r.p_in = pt.p_in;
    r.p_s = pt.p_s;
    r.q1 = q1;
    r.q2 = 1.0 - q1;
    return r;
}

CollapsedState post_measurement_state(const KrausSet &k, AtomLevel outcome,
                                      const OperatorMatrix &rho) {
    if (rho.rows() != kFockDim || rho.cols() != kFockDim) {
        throw ShapeMismatch("density matrix must be 3x3");
    }
    if (!rho.is_hermitian() || !rho.is_psd() ||
        std::abs(rho.trace() - Complex(1.0)) > tol::kProbabilitySum) {
        throw PreconditionError("rho is not a valid density matrix");
    }
    const OperatorMatrix &m = k[outcome];
    const double p = (m.adjoint() * m * rho).trace().real();
    if (p <= tol::kZeroProbability) {
        throw ZeroProbabilityOutcome(std::string("outcome ") + to_string(outcome) +
                                     " has probability " + std::to_string(p));
    }
    OperatorMatrix collapsed = m * rho * m.adjoint();
    collapsed *= Complex(1.0 / p);
    return {std::move(collapsed), p};
}

}  // namespace uqsd
