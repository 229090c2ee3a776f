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

#include "entdetect/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace entdetect {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

template <size_t N>
size_t sample(const std::array<double, N> &probabilities, double u) {
    double cumulative = 0;
    for (size_t k = 0; k + 1 < N; k++) {
        cumulative += probabilities[k];
        if (u < cumulative) {
            return k;
        }
    }
    return N - 1;
}

}  // namespace

uint64_t mix64(uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(uint64_t seed, uint64_t trial) : key_(mix64(mix64(seed) ^ (trial * kGolden + 1))) {
}

uint64_t CounterRng::bits(uint64_t draw) const {
    return mix64(key_ + (draw + 1) * 0xD1B54A32D192ED03ULL);
}

double CounterRng::uniform(uint64_t draw) const {
    return static_cast<double>(bits(draw) >> 11) * 0x1.0p-53;
}

void ProtocolConfig::validate() const {
    pair.validate();
    if (mode == ScatterMode::kIdeal && !phases.is_ideal()) {
        throw std::invalid_argument("Ideal scattering mode needs theta = pi and theta_0 = pi/2.");
    }
    if (std::abs(phases.r_hot) > 1 + 1e-12 || std::abs(phases.r_cold) > 1 + 1e-12) {
        throw std::invalid_argument("Reflection coefficients must not exceed unit modulus.");
    }
    if (efficiencies) {
        efficiencies->validate();
    }
}

SamplingPlan SamplingPlan::from_config(const ProtocolConfig &cfg) {
    cfg.validate();
    ProtocolResult exact = run_protocol(cfg.pair, cfg.phases, cfg.mode);
    SamplingPlan plan;
    const RoundOneOutcomes &o = exact.round_one_outcomes;
    plan.round_one = {o.plus_plus, o.plus_minus, o.minus_plus, o.minus_minus, o.lost};
    if (exact.status == ProtocolStatus::kUnmeasurableRoundOne) {
        plan.round_one[0] = 0;
        plan.round_two = {0, 0, 1};
    } else {
        plan.round_two = {exact.p2, exact.round_two_minus, exact.round_two_lost};
    }
    plan.photon_efficiency = cfg.efficiencies ? cfg.efficiencies->per_photon() : 1.0;
    return plan;
}

TrialCounts &TrialCounts::operator+=(const TrialCounts &other) {
    n_trials += other.n_trials;
    n_round1_success += other.n_round1_success;
    n_full_success += other.n_full_success;
    for (size_t k = 0; k < round_one_clicks.size(); k++) {
        round_one_clicks[k] += other.round_one_clicks[k];
    }
    round_two_d1 += other.round_two_d1;
    round_two_d2 += other.round_two_d2;
    photons_sent += other.photons_sent;
    return *this;
}

TrialCounts run_shard(const SamplingPlan &plan, uint64_t seed, uint64_t begin, uint64_t end) {
    TrialCounts counts;
    const double eta = plan.photon_efficiency;
    for (uint64_t trial = begin; trial < end; trial++) {
        CounterRng rng(seed, trial);
        counts.n_trials++;
        counts.photons_sent += 2;

        size_t first = sample(plan.round_one, rng.uniform(0));
        bool clicks = first < 4 && rng.uniform(1) < eta && rng.uniform(2) < eta;
        if (!clicks) {
            continue;
        }
        counts.round_one_clicks[first]++;
        if (first != 0) {
            continue;
        }
        counts.n_round1_success++;

        counts.photons_sent++;
        size_t second = sample(plan.round_two, rng.uniform(3));
        if (second == 2 || !(rng.uniform(4) < eta)) {
            continue;
        }
        if (second == 0) {
            counts.round_two_d1++;
            counts.n_full_success++;
        } else {
            counts.round_two_d2++;
        }
    }
    return counts;
}

TrialStats summarize(const TrialCounts &counts, uint64_t seed, double photon_efficiency) {
    if (counts.n_trials == 0) {
        throw std::invalid_argument("At least one trial is required.");
    }
    TrialStats stats;
    stats.seed = seed;
    stats.counts = counts;
    stats.n_trials = counts.n_trials;
    stats.n_round1_success = counts.n_round1_success;
    stats.n_full_success = counts.n_full_success;
    stats.p_hat = static_cast<double>(counts.n_full_success) / static_cast<double>(counts.n_trials);
    stats.c_hat = 2 * std::sqrt(stats.p_hat);
    Interval p = wilson_interval(counts.n_full_success, counts.n_trials);
    stats.ci_low = 2 * std::sqrt(p.low);
    stats.ci_high = 2 * std::sqrt(p.high);
    double budget = photon_efficiency * photon_efficiency * photon_efficiency;
    stats.p_hat_loss_adjusted = budget > 0 ? stats.p_hat / budget : 0;
    stats.triples_per_photon =
        counts.photons_sent > 0
            ? static_cast<double>(counts.n_full_success) / static_cast<double>(counts.photons_sent)
            : 0;
    return stats;
}

TrialStats run_trials(const ProtocolConfig &cfg, uint64_t n, uint64_t seed, unsigned threads) {
    if (n == 0) {
        throw std::invalid_argument("At least one trial is required.");
    }
    SamplingPlan plan = SamplingPlan::from_config(cfg);
    uint64_t shards = std::clamp<uint64_t>(threads, 1, n);
    std::vector<TrialCounts> partial(shards);
    std::vector<std::thread> workers;
    workers.reserve(shards);
    for (uint64_t k = 0; k < shards; k++) {
        uint64_t begin = n * k / shards;
        uint64_t end = n * (k + 1) / shards;
        if (shards == 1) {
            partial[k] = run_shard(plan, seed, begin, end);
        } else {
            workers.emplace_back([&, k, begin, end] { partial[k] = run_shard(plan, seed, begin, end); });
        }
    }
    for (auto &w : workers) {
        w.join();
    }
    TrialCounts total;
    for (const auto &c : partial) {
        total += c;
    }
    return summarize(total, seed, plan.photon_efficiency);
}

Interval wilson_interval(uint64_t successes, uint64_t trials, double z) {
    if (trials == 0 || successes > trials) {
        throw std::invalid_argument("wilson_interval needs 0 <= successes <= trials and trials > 0.");
    }
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) {
        out.low = 0;
    }
    if (successes == trials) {
        out.high = 1;
    }
    return out;
}

ConcurrenceEstimate estimate_concurrence(const TrialStats &stats) {
    if (stats.n_trials == 0) {
        throw std::invalid_argument("estimate_concurrence needs at least one trial.");
    }
    ConcurrenceEstimate est;
    est.p_hat = static_cast<double>(stats.n_full_success) / static_cast<double>(stats.n_trials);
    est.p_interval = wilson_interval(stats.n_full_success, stats.n_trials);
    est.c_hat = 2 * std::sqrt(est.p_hat);
    est.c_interval = {2 * std::sqrt(est.p_interval.low), 2 * std::sqrt(est.p_interval.high)};
    return est;
}

}  // namespace entdetect
