#include "trendlab/simulate.hpp"

#include <algorithm>
#include <cstdio>

#include "trendlab/rng.hpp"

namespace trendlab {

namespace {

std::string topic_name(std::size_t topic_id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "topic-%06zu", topic_id);
    return buf;
}

}  // namespace

double gamma_at(const ModelParams& params, std::uint64_t t) {
    if (t == 0) {
        throw DomainError("gamma(t) is undefined at t = 0; the recursion starts at t = 1");
    }
    std::uint64_t effective = t;
    if (params.constant_gamma_after && t > *params.constant_gamma_after) {
        effective = *params.constant_gamma_after;
    }
    return params.gamma_scale / static_cast<double>(effective);
}

TopicSeries simulate_topic(const ModelParams& params, std::size_t topic_id) {
    params.validate();
    if (topic_id >= params.n_topics) {
        throw DomainError("topic_id out of range");
    }
    const NoiseSpec noise{params.noise_kind, params.sigma2};

    TopicSeries series;
    series.topic = topic_name(topic_id);
    series.cumulative.resize(params.n_intervals + 1);
    series.counts.resize(params.n_intervals + 1);
    series.cumulative[0] = params.n0;
    series.counts[0] = params.n0;
    for (std::uint64_t t = 1; t <= params.n_intervals; ++t) {
        SplitRng stream(params.seed, topic_id, t);
        const double xi = sample_noise(noise, stream);
        series.cumulative[t] = (1.0 + gamma_at(params, t) * xi) * series.cumulative[t - 1];
        series.counts[t] = series.cumulative[t] - series.cumulative[t - 1];
    }
    return series;
}

TrendSequence apply_stop_rule(const TopicSeries& series, double theta, std::size_t burn_in) {
    if (theta < 0.0) {
        throw DomainError("theta must be non-negative");
    }
    if (series.size() == 0 || burn_in >= series.size()) {
        throw DomainError("burn_in must fall inside the series");
    }

    const std::size_t horizon = series.size() - 1;  // last step index
    std::size_t failed_at = 0;
    for (std::size_t t = burn_in + 1; t <= horizon; ++t) {
        const double prev = series.cumulative[t - 1];
        if (prev > 0.0 && series.cumulative[t] / prev < theta) {
            failed_at = t;
            break;
        }
    }

    TrendSequence run;
    run.topic = series.topic;
    run.start = IntervalIndex{burn_in + 1};
    if (failed_at != 0) {
        run.length = failed_at - burn_in - 1;
        run.censored = false;
    } else {
        run.length = horizon - burn_in;
        run.censored = true;
    }

    // Restriction keeps absolute levels: everything up to the run start
    // collapses into the first bin, so the slice's cumulative equals the
    // original N over the run.
    if (run.length > 0) {
        std::vector<double> counts;
        counts.reserve(run.length);
        counts.push_back(series.cumulative[burn_in + 1]);
        for (std::size_t t = burn_in + 2; t <= burn_in + run.length; ++t) {
            counts.push_back(series.counts[t]);
        }
        run.series = TopicSeries::from_counts(series.topic, std::move(counts));
    } else {
        run.series.topic = series.topic;
    }
    return run;
}

CohortResult simulate_cohort(const ModelParams& params, std::size_t burn_in) {
    params.validate();

    std::size_t effective_burn_in = burn_in;
    double effective_theta = params.theta;
    if (params.constant_gamma_after) {
        effective_burn_in = *params.constant_gamma_after;
        const double gamma_inf =
            params.gamma_scale / static_cast<double>(*params.constant_gamma_after);
        effective_theta = 1.0 + gamma_inf * params.theta;
    }
    // leave at least one step for the stop rule on short horizons
    effective_burn_in = std::min(effective_burn_in, params.n_intervals - 1);

    CohortResult result;
    result.series.reserve(params.n_topics);
    result.sequences.reserve(params.n_topics);
    for (std::size_t q = 0; q < params.n_topics; ++q) {
        result.series.push_back(simulate_topic(params, q));
        result.sequences.push_back(
            apply_stop_rule(result.series.back(), effective_theta, effective_burn_in));
    }
    return result;
}

}  // namespace trendlab
