#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trendlab/core_types.hpp"

namespace trendlab {

struct AuthorStats {
    std::string author;
    std::uint64_t tweet_count = 0;
    std::uint64_t topics_initiated = 0;
    std::uint64_t topics_retweeted_in = 0;  // topics crediting this author
    std::uint64_t retweets_received = 0;
    std::optional<std::uint64_t> followers;
    std::optional<double> tweet_rate;  // tweets per day
};

struct TopicMetrics {
    std::string topic;
    std::uint64_t total_tweets = 0;
    std::uint64_t unique_authors = 0;
    double active_ratio = 0.0;  // total_tweets / unique_authors
    std::uint64_t retweet_count = 0;
    std::optional<double> domination_ratio;  // absent when the topic has no retweets
    std::uint64_t trend_duration = 0;        // trending intervals summed over sequences
    std::uint64_t sequence_count = 0;
};

struct SequenceDistributions {
    std::map<std::uint64_t, std::size_t> sequences_per_topic;  // count -> topics
    std::map<std::uint64_t, std::size_t> lengths;              // length -> sequences
    double multi_sequence_fraction = 0.0;
};

struct CorrelationReport {
    std::map<std::string, double> coefficients;
    std::vector<std::string> skipped;  // pair name + reason
};

// Maximal runs of consecutive trending intervals; a gap of one or more
// intervals starts a new sequence. Appearance lists must be sorted and
// duplicate-free.
std::vector<TrendSequence> split_sequences(
    const std::map<std::string, std::vector<IntervalIndex>>& appearances);

SequenceDistributions sequence_distributions(const std::vector<TrendSequence>& sequences);

// a_q = tweets / unique authors, always >= 1.
double active_ratio(const std::vector<TweetRecord>& topic_tweets);

// Fraction of the topic's retweets credited to its largest source.
// Throws UndefinedValueError when the topic has no retweets.
double domination_ratio(const std::vector<TweetRecord>& topic_tweets);

// Retweets received over topics credited in.
double retweet_ratio(std::uint64_t author_retweets, std::uint64_t author_topics);

// Authors credited as retweet source in at least min_topics topics,
// sorted by retweet ratio descending; ties broken by total retweets
// descending, then author id ascending.
std::vector<AuthorStats> top_retweeted(const std::vector<TweetRecord>& stream,
                                       std::size_t min_topics);

// Distinct authors, in order of first appearance, among tweets strictly
// before the trend start; stops after k authors. Tweets must be sorted
// by time.
std::vector<std::string> first_k_initiators(const std::vector<TweetRecord>& topic_tweets,
                                            IntervalIndex trend_start, std::size_t k);

// Per-topic metrics for topics that have at least one trending
// appearance; topics absent from `appearances` never trended and are
// skipped.
std::vector<TopicMetrics> compute_topic_metrics(
    const std::vector<TweetRecord>& stream,
    const std::map<std::string, std::vector<IntervalIndex>>& appearances);

// Pearson coefficients for the metric pairings; pairs that cannot be
// computed (missing optional fields, constant columns, < 3 points) are
// flagged rather than reported.
CorrelationReport correlation_report(const std::vector<TopicMetrics>& metrics,
                                     const std::vector<AuthorStats>& authors);

}  // namespace trendlab
