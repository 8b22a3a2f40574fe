#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trendlab/errors.hpp"

namespace trendlab {

// Width of one time bin. Event timestamps are binned into fixed
// 20-minute intervals anchored at the dataset's earliest timestamp.
inline constexpr std::uint64_t kIntervalSeconds = 1200;

// Index of one 20-minute bin on the dataset timeline.
struct IntervalIndex {
    std::uint64_t value = 0;

    friend auto operator<=>(const IntervalIndex&, const IntervalIndex&) = default;
};

// interval = floor((time - origin) / 1200). Throws DomainError when
// time precedes the origin.
IntervalIndex interval_of(std::uint64_t time_s, std::uint64_t origin_s);

// One event of the ingested stream. Times are seconds since the
// dataset's earliest timestamp; tweet text is never stored.
struct TweetRecord {
    std::string topic;
    std::string author;
    std::uint64_t time = 0;
    bool is_retweet = false;
    std::optional<std::string> retweeted_author;  // present iff is_retweet
    std::optional<std::uint64_t> followers;
    std::optional<double> tweet_rate;  // tweets per day
};

// Throws DomainError when a record invariant is broken: empty topic or
// author, retweet linkage present xor is_retweet, or self-crediting.
void validate(const TweetRecord& record);

// Per-topic interval counts n_q(t) and their running totals N_q(t).
// Counts are reals: ingested data happens to be integral, simulated
// trajectories are not.
struct TopicSeries {
    std::string topic;
    std::vector<double> counts;
    std::vector<double> cumulative;  // cumulative[i] = sum of counts[0..i]

    static TopicSeries from_counts(std::string topic, std::vector<double> counts);

    std::size_t size() const { return counts.size(); }
};

// One contiguous trending run of a topic. Runs produced by
// split_sequences always have length >= 1; stop-rule runs may have
// length 0 when the first checked step already fails.
struct TrendSequence {
    std::string topic;
    IntervalIndex start;
    std::uint64_t length = 0;  // intervals
    TopicSeries series;        // restricted to the run; empty when derived from appearances
    bool censored = false;     // run reached the horizon without a failing step
};

enum class NoiseKind { lognormal, gamma, degenerate };

// Simulator configuration for the multiplicative growth recursion
// N(t) = (1 + gamma(t) xi(t)) N(t-1) with gamma(t) = c/t.
struct ModelParams {
    std::size_t n_topics = 0;
    std::size_t n_intervals = 0;   // growth steps; a series has n_intervals + 1 entries
    double n0 = 1.0;               // initial count N(0)
    double gamma_scale = 1.0;      // c
    double sigma2 = 0.0;           // noise variance
    double theta = 0.0;            // stop threshold (see simulate.hpp for scales)
    NoiseKind noise_kind = NoiseKind::lognormal;
    std::uint64_t seed = 0;
    // Survival mode: freeze gamma at c/t* for all t > t*. Used for the
    // geometric-duration experiments, where theta is on the noise scale.
    std::optional<std::uint64_t> constant_gamma_after;

    // Throws DomainError on an invalid combination.
    void validate() const;
};

// Generic fit output shared by the regression-style estimators.
struct FitResult {
    std::map<std::string, double> params;  // e.g. slope, intercept, p
    double r_squared = 0.0;
    std::vector<double> residuals;
    std::size_t n_points = 0;  // == residuals.size()
};

// Cumulative-count ratios C_q(t_i, t_j) = N_q(t_i)/N_q(t_j) collected
// across topics, optionally on the log scale.
struct RatioSample {
    IntervalIndex t_i;
    IntervalIndex t_j;
    std::vector<double> values;
    std::size_t excluded = 0;  // topics dropped (zero denominator or short series)
    bool log_scale = false;
};

// Prefix sums. Throws DomainError on an empty list or a negative count.
std::vector<double> cumulate(const std::vector<double>& counts);

// N_q(t_i) / N_q(t_j). Requires t_i > t_j within the series; throws
// UndefinedValueError when N_q(t_j) = 0.
double ratio(const TopicSeries& series, IntervalIndex t_i, IntervalIndex t_j);

}  // namespace trendlab
