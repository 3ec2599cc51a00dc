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

#include "uqsd/optimizer.hpp"

#include <cmath>
#include <string>

#include "uqsd/errors.hpp"

namespace uqsd {

namespace {

void require_prior(double q1) {
    if (!(q1 >= 0.0 && q1 <= 1.0)) {
        throw InvalidPrior("prior q1 must lie in [0, 1], got " + std::to_string(q1));
    }
}

struct Columns {
    explicit Columns(std::size_t n) : p_b(n), p_c(n), p_in(n), p_s(n) {}
    kernels::ClosedFormColumns view() { return {p_b, p_c, p_in, p_s}; }
    std::vector<double> p_b, p_c, p_in, p_s;
};

double success(unsigned m, double q1, double kappa) {
    return kernels::closed_form_point(m, q1, kappa).p_s;
}

/// Maximize p_s on [lo, hi]. On equal values the lower bracket is kept.
double golden_section(unsigned m, double q1, double lo, double hi, double tol) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    double fc = success(m, q1, c);
    double fd = success(m, q1, d);
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = success(m, q1, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = success(m, q1, d);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> kappa_grid(const KappaRange &range) {
    if (!(range.lo > 0.0) || !(range.hi >= range.lo) || !(range.step > 0.0) ||
        !std::isfinite(range.hi) || !std::isfinite(range.step)) {
        throw InvalidRange("kappa range must satisfy 0 < lo <= hi and step > 0");
    }
    const auto count =
        static_cast<std::size_t>(std::floor((range.hi - range.lo) / range.step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = range.lo + static_cast<double>(i) * range.step;
    return grid;
}

std::size_t SweepCurve::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].p_s > points[best].p_s) best = i;
    }
    return best;
}

SweepCurve sweep(unsigned m, double q1, const KappaRange &range) {
    return sweep(m, q1, range, kernels::active_isa());
}

SweepCurve sweep(unsigned m, double q1, const KappaRange &range, kernels::Isa isa) {
    require_prior(q1);
    const auto grid = kappa_grid(range);
    Columns cols(grid.size());
    kernels::closed_form_batch(isa, m, q1, grid, cols.view());

    SweepCurve curve;
    curve.m = m;
    curve.q1 = q1;
    curve.points.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        curve.points.push_back({grid[i], cols.p_s[i], cols.p_b[i], cols.p_c[i], cols.p_in[i]});
    }
    return curve;
}

double scan_limit(unsigned m, const ScanSettings &settings) {
    return settings.span_per_m * (m + 1.0);
}

OptimumRow optimize_kappa(unsigned m, double q1, const ScanSettings &settings) {
    require_prior(q1);
    const auto n = static_cast<std::size_t>(std::llround(scan_limit(m, settings) / settings.step));
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i + 1) * settings.step;

    Columns cols(n);
    kernels::closed_form_batch(m, q1, grid, cols.view());
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (cols.p_s[i] > cols.p_s[best]) best = i;
    }

    // The kernel result at the grid point may differ from the scalar reference
    // in the last bits; compare like with like.
    double kappa = grid[best];
    double best_ps = success(m, q1, kappa);

    const double lo = best == 0 ? 0.5 * grid[0] : grid[best - 1];
    const double hi = best + 1 == n ? grid[best] : grid[best + 1];
    const double refined = golden_section(m, q1, lo, hi, settings.kappa_tol);
    const double refined_ps = success(m, q1, refined);
    if (refined_ps > best_ps || (refined_ps == best_ps && refined < kappa)) {
        kappa = refined;
        best_ps = refined_ps;
    }

    const auto pt = kernels::closed_form_point(m, q1, kappa);
    return OptimumRow{m, kappa, pt.p_in, pt.p_b, pt.p_c, pt.p_s};
}

std::vector<OptimumRow> table(double q1, std::span<const unsigned> ms,
                              const ScanSettings &settings) {
    require_prior(q1);
    std::vector<OptimumRow> rows;
    rows.reserve(ms.size());
    for (unsigned m : ms) rows.push_back(optimize_kappa(m, q1, settings));
    return rows;
}

double projective_baseline(double q1) {
    require_prior(q1);
    return (1.0 - q1) / 2.0;
}

double bound_gap(double q1, const OptimumRow &row) {
    if (q1 != 0.5) {
        throw UnsupportedPrior("the reference bound is only quoted for q1 = q2 = 0.5");
    }
    return kReferenceBound - row.p_s;
}

}  // namespace uqsd
