// Copyright 2026 The entdetect Authors
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

#ifndef ENTDETECT_MONTECARLO_H
#define ENTDETECT_MONTECARLO_H

#include <array>
#include <cstdint>
#include <optional>

#include "entdetect/imperfections.h"
#include "entdetect/protocol.h"

namespace entdetect {

/// Stateless counter-based generator: every draw is a hash of (seed, trial index, draw index),
/// so a trial's randomness does not depend on which thread or shard runs it.
class CounterRng {
   public:
    CounterRng(uint64_t seed, uint64_t trial);

    uint64_t bits(uint64_t draw) const;
    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform(uint64_t draw) const;

   private:
    uint64_t key_;
};

/// SplitMix64 finalizer.
uint64_t mix64(uint64_t x);

inline constexpr uint64_t kDefaultTrials = 100000;

struct ProtocolConfig {
    AtomPair pair = AtomPair::bell();
    FaradayPhases phases = FaradayPhases::ideal();
    ScatterMode mode = ScatterMode::kIdeal;
    /// Absent: every photon that reaches a detector clicks.
    std::optional<Efficiencies> efficiencies;

    void validate() const;
};

/// Exact per-measurement outcome distributions, computed once and sampled per trial.
struct SamplingPlan {
    /// D1D3, D1D4, D2D3, D2D4, lost.
    std::array<double, 5> round_one{};
    /// D1, D2, lost; conditioned on the D1D3 coincidence.
    std::array<double, 3> round_two{};
    /// Probability that a photon survives transmission and clicks.
    double photon_efficiency = 1;

    static SamplingPlan from_config(const ProtocolConfig &cfg);
};

/// Raw counters. Merging is plain addition, so shards combine associatively.
struct TrialCounts {
    uint64_t n_trials = 0;
    /// Both round-one photons detected on D1 and D3.
    uint64_t n_round1_success = 0;
    /// Detected triples: round-one coincidence followed by D1.
    uint64_t n_full_success = 0;
    /// Round-one events where both photons clicked: D1D3, D1D4, D2D3, D2D4.
    std::array<uint64_t, 4> round_one_clicks{};
    uint64_t round_two_d1 = 0;
    uint64_t round_two_d2 = 0;
    uint64_t photons_sent = 0;

    TrialCounts &operator+=(const TrialCounts &other);
    bool operator==(const TrialCounts &other) const = default;
};

/// Simulates trials with global indices [begin, end).
TrialCounts run_shard(const SamplingPlan &plan, uint64_t seed, uint64_t begin, uint64_t end);

struct TrialStats {
    uint64_t seed = 0;
    TrialCounts counts;
    uint64_t n_trials = 0;
    uint64_t n_round1_success = 0;
    uint64_t n_full_success = 0;
    /// n_full_success / n_trials.
    double p_hat = 0;
    /// 2 sqrt(p_hat).
    double c_hat = 0;
    /// 95% Wilson interval mapped through p -> 2 sqrt(p).
    double ci_low = 0;
    double ci_high = 0;
    /// p_hat divided by the three-photon efficiency budget; equals p_hat without losses.
    double p_hat_loss_adjusted = 0;
    /// n_full_success / photons_sent.
    double triples_per_photon = 0;
};

TrialStats summarize(const TrialCounts &counts, uint64_t seed, double photon_efficiency);

/// Runs n trials split into `threads` contiguous shards. The result depends only on
/// (cfg, n, seed).
TrialStats run_trials(const ProtocolConfig &cfg, uint64_t n, uint64_t seed, unsigned threads = 1);

struct Interval {
    double low = 0;
    double high = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(uint64_t successes, uint64_t trials, double z = kZ95);

struct ConcurrenceEstimate {
    double p_hat = 0;
    Interval p_interval;
    double c_hat = 0;
    Interval c_interval;
};

/// c_hat = 2 sqrt(p_hat) with the Wilson interval pushed through the same monotone map.
ConcurrenceEstimate estimate_concurrence(const TrialStats &stats);

}  // namespace entdetect

#endif
