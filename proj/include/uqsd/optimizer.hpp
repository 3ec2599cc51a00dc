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

#include <cstddef>
#include <span>
#include <vector>

#include "uqsd/kernels.hpp"

namespace uqsd {

struct KappaRange {
    double lo;
    double hi;
    double step;
};

/// lo, lo + step, ... up to hi (inclusive, with a 1e-9 step slack). lo == hi
/// gives one point. Throws InvalidRange unless 0 < lo <= hi and step > 0.
std::vector<double> kappa_grid(const KappaRange &range);

struct SweepPoint {
    double kappa;
    double p_s;
    double p_b;
    double p_c;
    double p_in;
};

struct SweepCurve {
    unsigned m = 0;
    double q1 = 0.5;
    std::vector<SweepPoint> points;  // kappa strictly increasing

    /// Index of the largest p_s; the first one on ties.
    std::size_t argmax() const;
};

/// Closed-form probabilities at every grid kappa. Throws InvalidRange, InvalidPrior.
SweepCurve sweep(unsigned m, double q1, const KappaRange &range);
SweepCurve sweep(unsigned m, double q1, const KappaRange &range, kernels::Isa isa);

struct OptimumRow {
    unsigned m = 0;
    double kappa_star = 0.0;
    double p_in = 0.0;
    double p_b = 0.0;
    double p_c = 0.0;
    double p_s = 0.0;
};

struct ScanSettings {
    double step = 1e-2;
    /// The coarse scan covers (0, span_per_m * (m + 1)].
    double span_per_m = 12.0;
    double kappa_tol = 1e-6;
};

/// Upper end of the coarse scan for timing index m.
double scan_limit(unsigned m, const ScanSettings &settings = {});

/// Global maximizer of p_s over kappa: a coarse grid scan followed by
/// golden-section refinement between the neighbours of the best grid point.
/// Ties go to the smaller kappa. Throws InvalidPrior.
OptimumRow optimize_kappa(unsigned m, double q1, const ScanSettings &settings = {});

std::vector<OptimumRow> table(double q1, std::span<const unsigned> ms,
                              const ScanSettings &settings = {});

/// Success probability of projecting the field onto |1>, which only fires for
/// psi2: q2 / 2. Throws InvalidPrior.
double projective_baseline(double q1);

/// Reference optimum for unambiguous discrimination of the standard pair at
/// equal priors.
inline constexpr double kReferenceBound = 0.292;

/// kReferenceBound - row.p_s. Throws UnsupportedPrior unless q1 == 0.5.
double bound_gap(double q1, const OptimumRow &row);

}  // namespace uqsd
