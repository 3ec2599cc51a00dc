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
 * Batched closed-form outcome probabilities over a grid of coupling ratios.
 *
 * For timing index m and coupling ratio kappa the quantized interaction
 * phase is theta = (m + 1/2) pi / sqrt(2 + kappa^2), and with the default
 * state pair {|0>, (|0>+|1>)/sqrt(2)} and priors (q1, 1 - q1):
 *
 *   p_b  = q1 sin^2 theta cos^2 theta
 *   p_c  = (q2 / 2) kappa^2 / (2 + kappa^2) sin^2 theta
 *   p_in = q1 (cos^2 theta + sin^4 theta)
 *        + (q2 / 2) (1 + cos^2 theta + 2 / (2 + kappa^2) sin^2 theta)
 *   p_s  = p_b + p_c
 *
 * The scalar kernel is the reference. The AVX2 kernel evaluates four kappas
 * per step with its own sin/cos polynomial and is kept within
 * kSimdAgreement of the reference. Selection happens at runtime.
 */

#pragma once

#include <cstddef>
#include <span>

namespace uqsd::kernels {

enum class Isa { scalar, avx2 };

const char *to_string(Isa isa);

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);

/// Widest available ISA, or scalar if the environment variable
/// UQSD_FORCE_SCALAR is set to a non-empty value other than "0".
Isa active_isa();

/// Max absolute difference allowed between a SIMD kernel and the reference.
inline constexpr double kSimdAgreement = 1e-14;

struct ClosedFormPoint {
    double theta;
    double p_b;
    double p_c;
    double p_in;
    double p_s;
};

/// Output columns; each must have the same length as the kappa input.
struct ClosedFormColumns {
    std::span<double> p_b;
    std::span<double> p_c;
    std::span<double> p_in;
    std::span<double> p_s;
};

/// Scalar reference for a single point. No argument validation.
ClosedFormPoint closed_form_point(unsigned m, double q1, double kappa);

/// Throws std::invalid_argument on column length mismatch or an ISA that is
/// not available.
void closed_form_batch(Isa isa, unsigned m, double q1, std::span<const double> kappa,
                       ClosedFormColumns out);

inline void closed_form_batch(unsigned m, double q1, std::span<const double> kappa,
                              ClosedFormColumns out) {
    closed_form_batch(active_isa(), m, q1, kappa, out);
}

namespace detail {

void closed_form_scalar(unsigned m, double q1, std::span<const double> kappa,
                        ClosedFormColumns out);
#if defined(UQSD_HAVE_AVX2)
void closed_form_avx2(unsigned m, double q1, std::span<const double> kappa, ClosedFormColumns out);
#endif

}  // namespace detail

}  // namespace uqsd::kernels
