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

// Compiled with -mavx2 -mfma. Only reached through closed_form_batch after a
// CPU feature check.

#include <immintrin.h>

#include <numbers>

#include "uqsd/kernels.hpp"

namespace uqsd::kernels::detail {

namespace {

// pi/2 split into three parts so that q * kPio2Hi is exact for the phases
// that occur here (|theta| well below 2^20).
constexpr double kPio2Hi = 1.57079625129699707031e+00;
constexpr double kPio2Mid = 7.54978941586159635336e-08;
constexpr double kPio2Lo = 5.39030285815811905290e-15;

// Minimax coefficients on [-pi/4, pi/4] (Cephes sin.c).
constexpr double kSin[] = {1.58962301576546568060e-10, -2.50507477628578072866e-08,
                           2.75573136213857245213e-06, -1.98412698295895385996e-04,
                           8.33333333332211858878e-03, -1.66666666666666307295e-01};
constexpr double kCos[] = {-1.13585365213876817300e-11, 2.08757008419747316778e-09,
                           -2.75573141792967388112e-07, 2.48015872888517045348e-05,
                           -1.38888888888730564116e-03, 4.16666666666665929218e-02};

inline __m256d horner(__m256d z, const double (&c)[6]) {
    __m256d acc = _mm256_set1_pd(c[0]);
    for (int i = 1; i < 6; ++i) acc = _mm256_fmadd_pd(acc, z, _mm256_set1_pd(c[i]));
    return acc;
}

/// sin^2 x and cos^2 x. Signs are irrelevant for squares, so only the parity
/// of the quadrant matters.
inline void sin_cos_squared(__m256d x, __m256d &sin2, __m256d &cos2) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(2.0 / std::numbers::pi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

    const __m256d z = _mm256_mul_pd(r, r);
    const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), horner(z, kSin), r);
    const __m256d cos_r =
        _mm256_fmadd_pd(_mm256_mul_pd(z, z), horner(z, kCos),
                        _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));

    const __m256d half_q = _mm256_mul_pd(q, _mm256_set1_pd(0.5));
    const __m256d odd = _mm256_cmp_pd(half_q, _mm256_floor_pd(half_q), _CMP_NEQ_OQ);

    const __m256d ss = _mm256_mul_pd(sin_r, sin_r);
    const __m256d cc = _mm256_mul_pd(cos_r, cos_r);
    sin2 = _mm256_blendv_pd(ss, cc, odd);
    cos2 = _mm256_blendv_pd(cc, ss, odd);
}

}  // namespace

void closed_form_avx2(unsigned m, double q1, std::span<const double> kappa, ClosedFormColumns out) {
    const double q2 = 1.0 - q1;
    const __m256d vq1 = _mm256_set1_pd(q1);
    const __m256d half_q2 = _mm256_set1_pd(0.5 * q2);
    const __m256d phase = _mm256_set1_pd((m + 0.5) * std::numbers::pi);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d one = _mm256_set1_pd(1.0);

    const std::size_t n = kappa.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d k = _mm256_loadu_pd(kappa.data() + i);
        const __m256d k2 = _mm256_mul_pd(k, k);
        const __m256d denom = _mm256_add_pd(two, k2);
        const __m256d theta = _mm256_div_pd(phase, _mm256_sqrt_pd(denom));

        __m256d s2, c2;
        sin_cos_squared(theta, s2, c2);

        const __m256d p_b = _mm256_mul_pd(vq1, _mm256_mul_pd(s2, c2));
        const __m256d p_c = _mm256_mul_pd(_mm256_mul_pd(half_q2, _mm256_div_pd(k2, denom)), s2);
        const __m256d in1 = _mm256_mul_pd(vq1, _mm256_fmadd_pd(s2, s2, c2));
        const __m256d in2 = _mm256_mul_pd(
            half_q2,
            _mm256_add_pd(_mm256_add_pd(one, c2), _mm256_mul_pd(_mm256_div_pd(two, denom), s2)));

        _mm256_storeu_pd(out.p_b.data() + i, p_b);
        _mm256_storeu_pd(out.p_c.data() + i, p_c);
        _mm256_storeu_pd(out.p_in.data() + i, _mm256_add_pd(in1, in2));
        _mm256_storeu_pd(out.p_s.data() + i, _mm256_add_pd(p_b, p_c));
    }

    if (i < n) {
        const std::size_t tail = n - i;
        closed_form_scalar(m, q1, kappa.subspan(i),
                           {out.p_b.subspan(i, tail), out.p_c.subspan(i, tail),
                            out.p_in.subspan(i, tail), out.p_s.subspan(i, tail)});
    }
}

}  // namespace uqsd::kernels::detail
