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

#include <cmath>
#include <numbers>

#include "uqsd/kernels.hpp"

namespace uqsd::kernels {

ClosedFormPoint closed_form_point(unsigned m, double q1, double kappa) {
    const double q2 = 1.0 - q1;
    const double k2 = kappa * kappa;
    const double theta = (m + 0.5) * std::numbers::pi / std::sqrt(2.0 + k2);
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double s2 = s * s;
    const double c2 = c * c;

    ClosedFormPoint p{};
    p.theta = theta;
    p.p_b = q1 * s2 * c2;
    p.p_c = 0.5 * q2 * (k2 / (2.0 + k2)) * s2;
    p.p_in = q1 * (c2 + s2 * s2) + 0.5 * q2 * (1.0 + c2 + (2.0 / (2.0 + k2)) * s2);
    p.p_s = p.p_b + p.p_c;
    return p;
}

namespace detail {

void closed_form_scalar(unsigned m, double q1, std::span<const double> kappa,
                        ClosedFormColumns out) {
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        const auto p = closed_form_point(m, q1, kappa[i]);
        out.p_b[i] = p.p_b;
        out.p_c[i] = p.p_c;
        out.p_in[i] = p.p_in;
        out.p_s[i] = p.p_s;
    }
}

}  // namespace detail

}  // namespace uqsd::kernels
