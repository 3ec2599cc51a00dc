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

#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "uqsd/cavity.hpp"
#include "uqsd/linalg.hpp"

namespace uqsd::testing {

inline OperatorMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    OperatorMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    }
    return m;
}

inline OperatorMatrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
    const OperatorMatrix a = random_matrix(n, n, rng);
    OperatorMatrix h = a + a.adjoint();
    h *= Complex(0.5);
    return h;
}

/// Uniform-ish random SystemParams with normalized complex Ramsey amplitudes.
inline SystemParams random_params(std::mt19937_64 &rng, double theta_max = 2.0 * std::numbers::pi,
                                  double kappa_lo = 0.1, double kappa_hi = 10.0) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SystemParams p;
    p.theta = theta_max * u01(rng);
    p.kappa = kappa_lo + (kappa_hi - kappa_lo) * u01(rng);
    const double mix = std::acos(std::sqrt(u01(rng)));
    p.alpha = std::polar(std::cos(mix), 2.0 * std::numbers::pi * u01(rng));
    p.beta = std::polar(std::sin(mix), 2.0 * std::numbers::pi * u01(rng));
    return p;
}

}  // namespace uqsd::testing
