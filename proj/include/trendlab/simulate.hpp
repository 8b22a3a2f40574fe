#pragma once

#include <cstdint>
#include <vector>

#include "trendlab/core_types.hpp"
#include "trendlab/noise.hpp"

namespace trendlab {

// Steps ignored by the stop rule while the novelty decay settles.
inline constexpr std::size_t kDefaultBurnIn = 10;

// gamma(t) = c/t for t >= 1, frozen at c/t* for t > t* in survival mode.
double gamma_at(const ModelParams& params, std::uint64_t t);

// One trajectory of the growth recursion. cumulative[0] = n0 and
// cumulative[t] = (1 + gamma(t) xi_t) cumulative[t-1]; the noise
// substream is keyed by (seed, topic_id, t), so the result depends only
// on those and never on evaluation order.
TopicSeries simulate_topic(const ModelParams& params, std::size_t topic_id);

// Applies the termination rule: the run ends at the first t > burn_in
// whose growth rate phi_t = N(t)/N(t-1) falls below theta. The returned
// length counts the surviving steps burn_in+1 .. failing step - 1; when
// no step fails the remaining horizon is returned with censored set.
TrendSequence apply_stop_rule(const TopicSeries& series, double theta, std::size_t burn_in);

struct CohortResult {
    std::vector<TopicSeries> series;       // sorted by topic id
    std::vector<TrendSequence> sequences;  // same order
};

// Batch driver over simulate_topic and apply_stop_rule. In survival
// mode (constant_gamma_after = t*) the burn-in is t* and theta is
// interpreted on the noise scale: the run ends when xi_t < theta,
// i.e. the raw rule is applied with threshold 1 + gamma_inf * theta.
// That makes the per-step stop probability equal stop_probability(theta)
// and the durations geometric.
CohortResult simulate_cohort(const ModelParams& params, std::size_t burn_in = kDefaultBurnIn);

}  // namespace trendlab
