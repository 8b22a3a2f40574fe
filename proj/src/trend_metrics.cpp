#include "trendlab/trend_metrics.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "trendlab/estimators.hpp"

namespace trendlab {

std::vector<TrendSequence> split_sequences(
    const std::map<std::string, std::vector<IntervalIndex>>& appearances) {
    std::vector<TrendSequence> sequences;
    for (const auto& [topic, intervals] : appearances) {
        if (intervals.empty()) continue;
        for (std::size_t i = 1; i < intervals.size(); ++i) {
            if (intervals[i] <= intervals[i - 1]) {
                throw DomainError("split_sequences: appearance list for '" + topic +
                                  "' is not sorted and duplicate-free");
            }
        }
        std::size_t run_start = 0;
        for (std::size_t i = 1; i <= intervals.size(); ++i) {
            const bool run_ends =
                i == intervals.size() || intervals[i].value != intervals[i - 1].value + 1;
            if (!run_ends) continue;
            TrendSequence seq;
            seq.topic = topic;
            seq.start = intervals[run_start];
            seq.length = i - run_start;
            seq.series.topic = topic;
            sequences.push_back(std::move(seq));
            run_start = i;
        }
    }
    return sequences;
}

SequenceDistributions sequence_distributions(const std::vector<TrendSequence>& sequences) {
    SequenceDistributions out;
    std::map<std::string, std::uint64_t> per_topic;
    for (const auto& seq : sequences) {
        per_topic[seq.topic] += 1;
        out.lengths[seq.length] += 1;
    }
    std::size_t multi = 0;
    for (const auto& [topic, count] : per_topic) {
        out.sequences_per_topic[count] += 1;
        if (count > 1) ++multi;
    }
    if (!per_topic.empty()) {
        out.multi_sequence_fraction =
            static_cast<double>(multi) / static_cast<double>(per_topic.size());
    }
    return out;
}

double active_ratio(const std::vector<TweetRecord>& topic_tweets) {
    if (topic_tweets.empty()) {
        throw DomainError("active_ratio: no tweets");
    }
    std::unordered_set<std::string> authors;
    for (const auto& t : topic_tweets) authors.insert(t.author);
    return static_cast<double>(topic_tweets.size()) / static_cast<double>(authors.size());
}

double domination_ratio(const std::vector<TweetRecord>& topic_tweets) {
    std::unordered_map<std::string, std::uint64_t> credited;
    std::uint64_t total = 0;
    for (const auto& t : topic_tweets) {
        if (!t.is_retweet || !t.retweeted_author) continue;
        credited[*t.retweeted_author] += 1;
        ++total;
    }
    if (total == 0) {
        throw UndefinedValueError("domination_ratio: topic has no retweets");
    }
    std::uint64_t top = 0;
    for (const auto& [author, count] : credited) top = std::max(top, count);
    return static_cast<double>(top) / static_cast<double>(total);
}

double retweet_ratio(std::uint64_t author_retweets, std::uint64_t author_topics) {
    if (author_topics == 0) {
        throw DomainError("retweet_ratio: author_topics must be positive");
    }
    return static_cast<double>(author_retweets) / static_cast<double>(author_topics);
}

std::vector<AuthorStats> top_retweeted(const std::vector<TweetRecord>& stream,
                                       std::size_t min_topics) {
    struct Credit {
        std::uint64_t retweets = 0;
        std::set<std::string> topics;
        std::uint64_t own_tweets = 0;
    };
    std::map<std::string, Credit> credits;
    for (const auto& t : stream) {
        credits[t.author].own_tweets += 1;
        if (t.is_retweet && t.retweeted_author) {
            auto& c = credits[*t.retweeted_author];
            c.retweets += 1;
            c.topics.insert(t.topic);
        }
    }

    std::vector<AuthorStats> ranked;
    for (const auto& [author, c] : credits) {
        if (c.topics.size() < min_topics || c.topics.empty()) continue;
        AuthorStats stats;
        stats.author = author;
        stats.tweet_count = c.own_tweets;
        stats.retweets_received = c.retweets;
        stats.topics_retweeted_in = c.topics.size();
        ranked.push_back(std::move(stats));
    }
    std::sort(ranked.begin(), ranked.end(), [](const AuthorStats& a, const AuthorStats& b) {
        const double ra = retweet_ratio(a.retweets_received, a.topics_retweeted_in);
        const double rb = retweet_ratio(b.retweets_received, b.topics_retweeted_in);
        if (ra != rb) return ra > rb;
        if (a.retweets_received != b.retweets_received) {
            return a.retweets_received > b.retweets_received;
        }
        return a.author < b.author;
    });
    return ranked;
}

std::vector<std::string> first_k_initiators(const std::vector<TweetRecord>& topic_tweets,
                                            IntervalIndex trend_start, std::size_t k) {
    std::vector<std::string> initiators;
    std::unordered_set<std::string> seen;
    const std::uint64_t start_s = trend_start.value * kIntervalSeconds;
    for (const auto& t : topic_tweets) {
        if (t.time >= start_s) break;  // input is sorted by time
        if (initiators.size() >= k) break;
        if (seen.insert(t.author).second) {
            initiators.push_back(t.author);
        }
    }
    return initiators;
}

std::vector<TopicMetrics> compute_topic_metrics(
    const std::vector<TweetRecord>& stream,
    const std::map<std::string, std::vector<IntervalIndex>>& appearances) {
    std::map<std::string, std::vector<TweetRecord>> by_topic;
    for (const auto& t : stream) by_topic[t.topic].push_back(t);

    std::vector<TopicMetrics> metrics;
    for (const auto& [topic, tweets] : by_topic) {
        auto it = appearances.find(topic);
        if (it == appearances.end() || it->second.empty()) continue;  // never trended

        TopicMetrics m;
        m.topic = topic;
        m.total_tweets = tweets.size();
        std::unordered_set<std::string> authors;
        for (const auto& t : tweets) {
            authors.insert(t.author);
            if (t.is_retweet) ++m.retweet_count;
        }
        m.unique_authors = authors.size();
        m.active_ratio = active_ratio(tweets);
        if (m.retweet_count > 0) {
            m.domination_ratio = domination_ratio(tweets);
        }
        m.trend_duration = it->second.size();
        std::map<std::string, std::vector<IntervalIndex>> single{{topic, it->second}};
        m.sequence_count = split_sequences(single).size();
        metrics.push_back(std::move(m));
    }
    return metrics;
}

namespace {

void add_pair(CorrelationReport& report, const std::string& name,
              const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 3) {
        report.skipped.push_back(name + ": fewer than 3 points");
        return;
    }
    try {
        report.coefficients[name] = pearson(x, y);
    } catch (const UndefinedValueError&) {
        report.skipped.push_back(name + ": constant column");
    }
}

}  // namespace

CorrelationReport correlation_report(const std::vector<TopicMetrics>& metrics,
                                     const std::vector<AuthorStats>& authors) {
    CorrelationReport report;

    std::vector<double> duration;
    std::vector<double> unique_authors;
    std::vector<double> total_tweets;
    std::vector<double> retweets;
    for (const auto& m : metrics) {
        duration.push_back(static_cast<double>(m.trend_duration));
        unique_authors.push_back(static_cast<double>(m.unique_authors));
        total_tweets.push_back(static_cast<double>(m.total_tweets));
        retweets.push_back(static_cast<double>(m.retweet_count));
    }
    add_pair(report, "unique_authors_vs_duration", unique_authors, duration);
    add_pair(report, "total_tweets_vs_unique_authors", total_tweets, unique_authors);
    add_pair(report, "retweets_vs_duration", retweets, duration);

    std::vector<double> domination;
    std::vector<double> domination_duration;
    for (const auto& m : metrics) {
        if (!m.domination_ratio) continue;  // undefined without retweets
        domination.push_back(*m.domination_ratio);
        domination_duration.push_back(static_cast<double>(m.trend_duration));
    }
    add_pair(report, "domination_vs_duration", domination, domination_duration);

    std::vector<double> tweet_rate;
    std::vector<double> initiated_by_rate;
    std::vector<double> followers;
    std::vector<double> initiated_by_followers;
    for (const auto& a : authors) {
        if (a.tweet_rate) {
            tweet_rate.push_back(*a.tweet_rate);
            initiated_by_rate.push_back(static_cast<double>(a.topics_initiated));
        }
        if (a.followers) {
            followers.push_back(static_cast<double>(*a.followers));
            initiated_by_followers.push_back(static_cast<double>(a.topics_initiated));
        }
    }
    add_pair(report, "tweet_rate_vs_topics_initiated", tweet_rate, initiated_by_rate);
    add_pair(report, "followers_vs_topics_initiated", followers, initiated_by_followers);

    return report;
}

}  // namespace trendlab
