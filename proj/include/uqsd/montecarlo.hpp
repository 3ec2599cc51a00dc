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

#include <array>
#include <cstdint>

#include "uqsd/cavity.hpp"
#include "uqsd/povm.hpp"

namespace uqsd {

/// Counter-based 64-bit generator: the i-th output is a SplitMix64 finalizer
/// applied to key + i * golden_gamma. Streams for different keys are
/// independent for all practical purposes.
class CounterRng {
   public:
    explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Key for sub-stream `index` of `seed`.
    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index) noexcept;

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class Preparation : std::size_t { psi1 = 0, psi2 = 1 };

struct TrialConfig {
    std::uint64_t n_trials = 1;
    std::uint64_t seed = 0;
    SystemParams params;
    Ensemble ensemble = Ensemble::standard();
    /// Trials per independently keyed chunk.
    std::uint64_t chunk_size = 1u << 16;
};

struct TrialStats {
    std::uint64_t n_trials = 0;
    /// counts[preparation][outcome], outcome order (a, b, c).
    std::array<std::array<std::uint64_t, 3>, 2> counts{};

    std::uint64_t outcome_total(AtomLevel nu) const;
    std::uint64_t count(Preparation prep, AtomLevel nu) const;

    double rate(AtomLevel nu) const;
    double p_in() const { return rate(AtomLevel::a); }
    double p_b() const { return rate(AtomLevel::b); }
    double p_c() const { return rate(AtomLevel::c); }
    double p_s() const;

    /// Binomial standard error sqrt(p (1 - p) / n).
    double standard_error(double p) const;
};

/// Each trial draws psi_k with probability q_k, then outcome nu with
/// probability <psi_k|E_nu|psi_k> by inverse CDF over (a, b, c).
/// Deterministic per (seed, chunk_size). Throws PreconditionError for
/// n_trials == 0 or chunk_size == 0, CompletenessViolation if an outcome
/// distribution does not sum to one.
TrialStats run_trials(const TrialConfig &cfg);

struct AuditVerdict {
    bool pass = false;
    std::uint64_t b_given_psi2 = 0;
    std::uint64_t c_given_psi1 = 0;
};

/// PASS iff no trial named the wrong state. Throws PreconditionError on empty stats.
AuditVerdict never_wrong_audit(const TrialStats &stats);

}  // namespace uqsd
