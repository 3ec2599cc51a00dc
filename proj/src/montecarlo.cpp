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

#include "uqsd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uqsd/errors.hpp"

namespace uqsd {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Cdf {
    double a;
    double ab;
};

Cdf outcome_cdf(const PovmSet &povm, const StateVector &psi) {
    const auto p = outcome_probabilities(povm, psi);
    const double total = p[0] + p[1] + p[2];
    if (std::abs(total - 1.0) > tol::kProbabilitySum) {
        throw CompletenessViolation("outcome probabilities sum to " + std::to_string(total));
    }
    return {p[0], p[0] + p[1]};
}

}  // namespace

std::uint64_t CounterRng::next_u64() noexcept { return mix64(key_ + ++counter_ * kGoldenGamma); }

double CounterRng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t CounterRng::derive_key(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + kGoldenGamma));
}

std::uint64_t TrialStats::outcome_total(AtomLevel nu) const {
    const auto k = static_cast<std::size_t>(nu);
    return counts[0][k] + counts[1][k];
}

std::uint64_t TrialStats::count(Preparation prep, AtomLevel nu) const {
    return counts[static_cast<std::size_t>(prep)][static_cast<std::size_t>(nu)];
}

double TrialStats::rate(AtomLevel nu) const {
    return n_trials == 0 ? 0.0
                         : static_cast<double>(outcome_total(nu)) / static_cast<double>(n_trials);
}

double TrialStats::p_s() const {
    if (n_trials == 0) return 0.0;
    return static_cast<double>(outcome_total(AtomLevel::b) + outcome_total(AtomLevel::c)) /
           static_cast<double>(n_trials);
}

double TrialStats::standard_error(double p) const {
    return n_trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n_trials));
}

TrialStats run_trials(const TrialConfig &cfg) {
    if (cfg.n_trials == 0) throw PreconditionError("run_trials: n_trials must be >= 1");
    if (cfg.chunk_size == 0) throw PreconditionError("run_trials: chunk_size must be >= 1");
    cfg.ensemble.validate();

    const PovmSet povm = pipeline_povm(cfg.params);
    const std::array<Cdf, 2> cdf = {outcome_cdf(povm, cfg.ensemble.psi1),
                                    outcome_cdf(povm, cfg.ensemble.psi2)};
    const double q1 = cfg.ensemble.q1;

    TrialStats stats;
    stats.n_trials = cfg.n_trials;
    const std::uint64_t chunks = (cfg.n_trials + cfg.chunk_size - 1) / cfg.chunk_size;
    for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
        CounterRng rng(CounterRng::derive_key(cfg.seed, chunk));
        const std::uint64_t begin = chunk * cfg.chunk_size;
        const std::uint64_t end = std::min(cfg.n_trials, begin + cfg.chunk_size);
        for (std::uint64_t t = begin; t < end; ++t) {
            const std::size_t prep = rng.uniform() < q1 ? 0 : 1;
            const double u = rng.uniform();
            const std::size_t outcome = u < cdf[prep].a ? 0 : (u < cdf[prep].ab ? 1 : 2);
            ++stats.counts[prep][outcome];
        }
    }
    return stats;
}

AuditVerdict never_wrong_audit(const TrialStats &stats) {
    if (stats.n_trials == 0) throw PreconditionError("never_wrong_audit: empty statistics");
    AuditVerdict v;
    v.b_given_psi2 = stats.count(Preparation::psi2, AtomLevel::b);
    v.c_given_psi1 = stats.count(Preparation::psi1, AtomLevel::c);
    v.pass = v.b_given_psi2 == 0 && v.c_given_psi1 == 0;
    return v;
}

}  // namespace uqsd
