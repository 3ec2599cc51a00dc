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
 * Ladder atom {a, b, c} coupled resonantly to one cavity mode truncated at
 * two photons. Energies are in units of the a-b coupling g1 and time enters
 * only through theta = g1 * t, so the b-c coupling is the ratio kappa = g2 / g1.
 *
 * Joint basis ordering is atom-major: index = 3 * atom + fock.
 */

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "uqsd/linalg.hpp"

namespace uqsd {

inline constexpr std::size_t kFockDim = 3;
inline constexpr std::size_t kAtomDim = 3;
inline constexpr std::size_t kJointDim = kFockDim * kAtomDim;

enum class AtomLevel : std::size_t { a = 0, b = 1, c = 2 };

inline constexpr std::array<AtomLevel, 3> kAtomLevels = {AtomLevel::a, AtomLevel::b, AtomLevel::c};

const char *to_string(AtomLevel level);

/// Photon number in the truncated mode.
class FockIndex {
   public:
    /// Throws std::out_of_range for n >= kFockDim.
    constexpr explicit FockIndex(std::size_t n) : n_(check(n)) {}
    constexpr std::size_t value() const noexcept { return n_; }

   private:
    static constexpr std::size_t check(std::size_t n);
    std::size_t n_;
};

constexpr std::size_t joint_index(AtomLevel atom, FockIndex n) {
    return static_cast<std::size_t>(atom) * kFockDim + n.value();
}

/// |atom, n> in the 9-dimensional joint space.
StateVector joint_basis(AtomLevel atom, std::size_t n);

struct SystemParams {
    double theta = 0.0;  // g1 * t
    double kappa = 1.0;  // g2 / g1
    Complex alpha = 1.0;
    Complex beta = 0.0;
    std::optional<unsigned> m;  // set when theta is quantized

    /// Throws NotNormalized, InvalidKappa, or PreconditionError (theta does not
    /// match the quantization rule for the recorded m).
    void validate() const;
};

/// sqrt(2 + kappa^2): the Rabi frequency (in units of g1) of the
/// |a,2>, |b,1>, |c,0> manifold.
double manifold_frequency(double kappa);

/// H / (hbar g1) with a^dagger|2> = 0. Throws InvalidKappa for kappa <= 0.
OperatorMatrix build_hamiltonian(double kappa);

/// Ramsey-zone rotation |a> -> alpha|a> + beta|b>, |b> -> -beta*|a> + alpha*|b>,
/// |c> fixed, tensored with the field identity. Throws NotNormalized.
OperatorMatrix ramsey_unitary(Complex alpha, Complex beta);

/// U = exp(-i theta H) * U_RZ.
OperatorMatrix protocol_unitary(const SystemParams &p);

/// Closed-form images U|a,0>, U|a,1>, U|a,2>, written out term by term instead
/// of via the matrix exponential.
std::array<StateVector, 3> analytic_columns(const SystemParams &p);

/// Total ladder excitation of a joint basis index: atom level (a=0, b=1, c=2)
/// plus photon number. The Hamiltonian conserves it.
std::size_t excitation_number(std::size_t joint);

// ---------------------------------------------------------------------------

constexpr std::size_t FockIndex::check(std::size_t n) {
    if (n >= kFockDim) throw std::out_of_range("FockIndex out of range");
    return n;
}

}  // namespace uqsd
