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

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "uqsd/kernels.hpp"

namespace uqsd::kernels {

const char *to_string(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(UQSD_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() {
    static const Isa selected = [] {
        const char *force = std::getenv("UQSD_FORCE_SCALAR");
        if (force != nullptr && *force != '\0' && std::string_view(force) != "0") {
            return Isa::scalar;
        }
        return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    }();
    return selected;
}

void closed_form_batch(Isa isa, unsigned m, double q1, std::span<const double> kappa,
                       ClosedFormColumns out) {
    const std::size_t n = kappa.size();
    if (out.p_b.size() != n || out.p_c.size() != n || out.p_in.size() != n || out.p_s.size() != n) {
        throw std::invalid_argument("closed_form_batch: output column length mismatch");
    }
    if (!isa_available(isa)) {
        throw std::invalid_argument(std::string("closed_form_batch: ISA not available: ") +
                                    to_string(isa));
    }
    switch (isa) {
        case Isa::scalar: detail::closed_form_scalar(m, q1, kappa, out); return;
        case Isa::avx2:
#if defined(UQSD_HAVE_AVX2)
            detail::closed_form_avx2(m, q1, kappa, out);
#endif
            return;
    }
}

}  // namespace uqsd::kernels
