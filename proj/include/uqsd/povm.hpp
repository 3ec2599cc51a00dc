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

/**
 * @file
 * Measurement operators induced on the cavity field by detecting the atom.
 *
 * The atom starts in |a>, so outcome nu selects the block of U connecting
 * |a, n'> to |nu, n>: M_nu[n, n'] = <nu, n| U |a, n'>. The POVM elements are
 * E_nu = M_nu^dagger M_nu, and completeness follows from the orthonormality
 * of the first three columns of U.
 */

#pragma once

#include <array>

#include "uqsd/cavity.hpp"
#include "uqsd/linalg.hpp"

namespace uqsd {

struct KrausSet {
    OperatorMatrix m_a{kFockDim, kFockDim};
    OperatorMatrix m_b{kFockDim, kFockDim};
    OperatorMatrix m_c{kFockDim, kFockDim};

    const OperatorMatrix &operator[](AtomLevel level) const;
    /// ||sum_nu M_nu^dagger M_nu - I||_max
    double completeness_residual() const;
};

struct PovmSet {
    OperatorMatrix e_a{kFockDim, kFockDim};
    OperatorMatrix e_b{kFockDim, kFockDim};
    OperatorMatrix e_c{kFockDim, kFockDim};

    const OperatorMatrix &operator[](AtomLevel level) const;
    /// ||sum_nu E_nu - I||_max over the leading `block` x `block` corner.
    double completeness_residual(std::size_t block = kFockDim) const;
    /// Hermitian to tol::kHermiticity and PSD to tol::kPsd, every element.
    bool elements_valid() const;
};

/// Two candidate pure field states with priors q1, q2.
struct Ensemble {
    StateVector psi1;
    StateVector psi2;
    double q1;
    double q2;

    /// psi1 = |0>, psi2 = (|0> + |1>)/sqrt(2). Throws InvalidPrior unless 0 <= q1 <= 1.
    static Ensemble standard(double q1 = 0.5);
    /// (|0> - |1>)/sqrt(2), orthogonal to the standard psi2.
    static StateVector psi2_perp();

    /// q1 |psi1><psi1| + q2 |psi2><psi2|
    OperatorMatrix density_matrix() const;
    /// Throws InvalidPrior or NotNormalized.
    void validate() const;
};

/// Outcome probabilities. Values are kept raw; `clamped` exists for display.
struct DiscriminationReport {
    double p_b = 0.0;
    double p_c = 0.0;
    double p_in = 0.0;
    double p_s = 0.0;
    SystemParams params;
    double q1 = 0.5;
    double q2 = 0.5;

    static double clamped(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }
    /// Range, p_s = p_b + p_c, and p_s + p_in = 1.
    bool invariants_hold() const;
};

/// Raw blocks M_nu[n, n'] = U[(nu, n), (a, n')] without the completeness check.
KrausSet kraus_blocks(const OperatorMatrix &u);

/// kraus_blocks plus the completeness check. Throws CompletenessViolation when
/// the extracted set is not complete (non-unitary input or bad basis order).
KrausSet extract_kraus(const OperatorMatrix &u);

PovmSet povm_from_kraus(const KrausSet &k);

/// theta = (m + 1/2) pi / sqrt(2 + kappa^2), alpha = cos theta, beta = i sin theta.
/// Throws InvalidKappa.
SystemParams discrimination_params(unsigned m, double kappa);

/// Protocol unitary -> Kraus -> POVM.
PovmSet pipeline_povm(const SystemParams &p);

struct EffectivePovm {
    PovmSet povm;  // row and column |2> are zero
    /// Per outcome (a, b, c): largest |entry| the full pipeline E_nu has in row
    /// or column |2>, i.e. what the truncation to span{|0>, |1>} discards.
    std::array<double, 3> dropped_weight{};
};

/// Closed-form POVM on span{|0>, |1>} under the discrimination conditions.
/// Throws InvalidKappa.
EffectivePovm effective_povm(unsigned m, double kappa);

/// Trace route: p_nu = Tr(E_nu rho).
DiscriminationReport probabilities(const PovmSet &povm, const Ensemble &ens,
                                   const SystemParams &params);

/// Closed-form route for the standard ensemble. Throws InvalidKappa, InvalidPrior.
DiscriminationReport probabilities(unsigned m, double kappa, double q1);

/// <psi|E_nu|psi> for nu = a, b, c.
std::array<double, 3> outcome_probabilities(const PovmSet &povm, const StateVector &psi);

struct CollapsedState {
    OperatorMatrix rho;
    double probability;
};

/// M rho M^dagger / p with p = Tr(M^dagger M rho). Throws ZeroProbabilityOutcome
/// when p <= tol::kZeroProbability, PreconditionError for an invalid density matrix.
CollapsedState post_measurement_state(const KrausSet &k, AtomLevel outcome,
                                      const OperatorMatrix &rho);

}  // namespace uqsd
