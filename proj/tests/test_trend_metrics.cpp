#include "doctest.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "trendlab/rng.hpp"
#include "trendlab/trend_metrics.hpp"

using namespace trendlab;

namespace {

TweetRecord tweet(std::string topic, std::string author, std::uint64_t time = 0) {
    TweetRecord r;
    r.topic = std::move(topic);
    r.author = std::move(author);
    r.time = time;
    return r;
}

TweetRecord retweet(std::string topic, std::string author, std::string credited,
                    std::uint64_t time = 0) {
    TweetRecord r = tweet(std::move(topic), std::move(author), time);
    r.is_retweet = true;
    r.retweeted_author = std::move(credited);
    return r;
}

std::vector<IntervalIndex> intervals(std::initializer_list<std::uint64_t> values) {
    std::vector<IntervalIndex> out;
    for (auto v : values) out.push_back(IntervalIndex{v});
    return out;
}

}  // namespace

TEST_CASE("split_sequences: gaps start new sequences") {
    SUBCASE("one gap") {
        const auto seqs = split_sequences({{"a", intervals({0, 1, 2, 5, 6})}});
        REQUIRE(seqs.size() == 2);
        CHECK(seqs[0].start.value == 0);
        CHECK(seqs[0].length == 3);
        CHECK(seqs[1].start.value == 5);
        CHECK(seqs[1].length == 2);
    }
    SUBCASE("singleton") {
        const auto seqs = split_sequences({{"a", intervals({4})}});
        REQUIRE(seqs.size() == 1);
        CHECK(seqs[0].start.value == 4);
        CHECK(seqs[0].length == 1);
    }
    SUBCASE("all gaps") {
        const auto seqs = split_sequences({{"a", intervals({0, 2, 4})}});
        REQUIRE(seqs.size() == 3);
        for (const auto& s : seqs) CHECK(s.length == 1);
    }
    SUBCASE("unsorted input is rejected") {
        CHECK_THROWS_AS(split_sequences({{"a", intervals({3, 1})}}), DomainError);
        CHECK_THROWS_AS(split_sequences({{"a", intervals({1, 1})}}), DomainError);
    }
}

TEST_CASE("split_sequences is a gap-separated partition of the appearances") {
    SplitRng rng(818, 0, 0);
    for (int rep = 0; rep < 100; ++rep) {
        std::map<std::string, std::vector<IntervalIndex>> appearances;
        std::size_t total = 0;
        for (int topic = 0; topic < 5; ++topic) {
            std::vector<IntervalIndex> list;
            std::uint64_t v = rng.next_u64() % 5;
            const std::size_t n = 1 + rng.next_u64() % 60;
            for (std::size_t i = 0; i < n && v < 1000; ++i) {
                list.push_back(IntervalIndex{v});
                v += 1 + rng.next_u64() % 4;  // sometimes consecutive, sometimes gapped
            }
            total += list.size();
            appearances["t" + std::to_string(topic)] = std::move(list);
        }
        const auto seqs = split_sequences(appearances);
        std::size_t covered = 0;
        std::map<std::string, std::vector<const TrendSequence*>> by_topic;
        for (const auto& s : seqs) {
            REQUIRE(s.length >= 1);
            covered += s.length;
            by_topic[s.topic].push_back(&s);
        }
        CHECK(covered == total);  // partition: every appearance in exactly one run
        for (const auto& [topic, runs] : by_topic) {
            for (std::size_t i = 1; i < runs.size(); ++i) {
                const std::uint64_t prev_end =
                    runs[i - 1]->start.value + runs[i - 1]->length - 1;
                CHECK(runs[i]->start.value > prev_end + 1);  // gap-separated
            }
        }
    }
}

TEST_CASE("sequence_distributions: histograms and multi-sequence fraction") {
    const auto seqs = split_sequences(
        {{"a", intervals({0, 1})}, {"b", intervals({0, 3})}});
    const SequenceDistributions dist = sequence_distributions(seqs);
    CHECK(dist.sequences_per_topic.at(1) == 1);  // topic a: one run
    CHECK(dist.sequences_per_topic.at(2) == 1);  // topic b: two runs
    CHECK(dist.multi_sequence_fraction == doctest::Approx(0.5));
    CHECK(dist.lengths.at(2) == 1);
    CHECK(dist.lengths.at(1) == 2);

    const auto singles = split_sequences({{"a", intervals({0})}, {"b", intervals({7})}});
    const SequenceDistributions single_dist = sequence_distributions(singles);
    CHECK(single_dist.lengths.size() == 1);
    CHECK(single_dist.lengths.at(1) == 2);
    CHECK(single_dist.multi_sequence_fraction == doctest::Approx(0.0));
}

TEST_CASE("active_ratio: tweets per distinct author") {
    std::vector<TweetRecord> tweets;
    for (int i = 0; i < 100; ++i) tweets.push_back(tweet("t", "author" + std::to_string(i % 25)));
    CHECK(active_ratio(tweets) == doctest::Approx(4.0));

    std::vector<TweetRecord> distinct;
    for (int i = 0; i < 9; ++i) distinct.push_back(tweet("t", "a" + std::to_string(i)));
    CHECK(active_ratio(distinct) == doctest::Approx(1.0));

    std::vector<TweetRecord> solo(7, tweet("t", "only"));
    CHECK(active_ratio(solo) == doctest::Approx(7.0));

    CHECK_THROWS_AS(active_ratio({}), DomainError);
}

TEST_CASE("domination_ratio: largest credited share") {
    std::vector<TweetRecord> tweets;
    for (int i = 0; i < 8; ++i) tweets.push_back(retweet("t", "u" + std::to_string(i), "A"));
    for (int i = 0; i < 2; ++i) tweets.push_back(retweet("t", "v" + std::to_string(i), "B"));
    tweets.push_back(tweet("t", "plain"));  // non-retweets don't count
    CHECK(domination_ratio(tweets) == doctest::Approx(0.8));

    CHECK(domination_ratio({retweet("t", "u", "A")}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(domination_ratio({tweet("t", "u")}), UndefinedValueError);
}

TEST_CASE("domination_ratio never decreases when the top author gains retweets") {
    SplitRng rng(2718, 0, 0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<TweetRecord> tweets;
        const std::size_t n = 2 + rng.next_u64() % 30;
        for (std::size_t i = 0; i < n; ++i) {
            tweets.push_back(retweet("t", "rt" + std::to_string(i),
                                     "src" + std::to_string(rng.next_u64() % 5)));
        }
        const double before = domination_ratio(tweets);
        // find the current dominator and add retweets crediting them
        std::map<std::string, int> credit;
        for (const auto& t : tweets) ++credit[*t.retweeted_author];
        std::string top = credit.begin()->first;
        for (const auto& [a, c] : credit) {
            if (c > credit[top]) top = a;
        }
        const std::size_t extra = 1 + rng.next_u64() % 10;
        for (std::size_t i = 0; i < extra; ++i) {
            tweets.push_back(retweet("t", "more" + std::to_string(i), top));
        }
        CHECK(domination_ratio(tweets) >= before - 1e-12);
    }
}

TEST_CASE("retweet_ratio reproduces the reference rows") {
    CHECK(std::fabs(retweet_ratio(11688, 65) - 179.81) < 0.01);
    CHECK(std::fabs(retweet_ratio(8444, 84) - 100.52) < 0.01);
    CHECK(std::fabs(retweet_ratio(342, 97) - 3.52) < 0.01);
    CHECK_THROWS_AS(retweet_ratio(10, 0), DomainError);
}

TEST_CASE("top_retweeted: threshold, ranking and tie-breaks") {
    std::vector<TweetRecord> stream;
    // "alpha": 6 retweets over 2 topics -> ratio 3
    // "beta":  6 retweets over 2 topics -> ratio 3 (tie, same retweets -> lexicographic)
    // "gamma": 8 retweets over 2 topics -> ratio 4
    // "delta": 2 retweets over 1 topic  -> below min_topics = 2
    int n = 0;
    auto add = [&](const std::string& credited, const std::string& topic, int count) {
        for (int i = 0; i < count; ++i) {
            stream.push_back(retweet(topic, "user" + std::to_string(n++), credited));
        }
    };
    add("alpha", "t1", 3);
    add("alpha", "t2", 3);
    add("beta", "t1", 3);
    add("beta", "t3", 3);
    add("gamma", "t1", 5);
    add("gamma", "t2", 3);
    add("delta", "t1", 2);

    const auto ranked = top_retweeted(stream, 2);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].author == "gamma");
    CHECK(ranked[1].author == "alpha");  // tie with beta broken lexicographically
    CHECK(ranked[2].author == "beta");
    CHECK(ranked[0].retweets_received == 8);
    CHECK(ranked[0].topics_retweeted_in == 2);

    CHECK(top_retweeted(stream, 50).empty());

    // the three-level tie-break is a total order: no equal neighbours
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        const bool equal =
            retweet_ratio(ranked[i - 1].retweets_received, ranked[i - 1].topics_retweeted_in) ==
                retweet_ratio(ranked[i].retweets_received, ranked[i].topics_retweeted_in) &&
            ranked[i - 1].retweets_received == ranked[i].retweets_received &&
            ranked[i - 1].author == ranked[i].author;
        CHECK_FALSE(equal);
    }
}

TEST_CASE("first_k_initiators: distinct authors before the trend start") {
    std::vector<TweetRecord> tweets{
        tweet("t", "A", 100), tweet("t", "B", 200), tweet("t", "A", 300),
        tweet("t", "C", 400), tweet("t", "D", 5000)};  // D is past the start

    const auto first3 = first_k_initiators(tweets, IntervalIndex{1}, 3);
    CHECK(first3 == std::vector<std::string>{"A", "B", "C"});

    const auto capped = first_k_initiators(tweets, IntervalIndex{1}, 100);
    CHECK(capped.size() == 3);  // only pre-trend tweets count

    CHECK(first_k_initiators(tweets, IntervalIndex{0}, 3).empty());

    const auto two = first_k_initiators(tweets, IntervalIndex{1}, 2);
    CHECK(two == std::vector<std::string>{"A", "B"});
}

TEST_CASE("compute_topic_metrics: counts, ratios, durations") {
    std::vector<TweetRecord> stream{
        tweet("a", "u1", 0),    tweet("a", "u2", 100), retweet("a", "u3", "u1", 1300),
        tweet("a", "u1", 2500), tweet("b", "v1", 0),   tweet("ghost", "g", 0)};
    const std::map<std::string, std::vector<IntervalIndex>> appearances{
        {"a", intervals({0, 1, 4, 5})}, {"b", intervals({2})}};

    const auto metrics = compute_topic_metrics(stream, appearances);
    REQUIRE(metrics.size() == 2);  // "ghost" never trended
    const TopicMetrics& a = metrics[0];
    CHECK(a.topic == "a");
    CHECK(a.total_tweets == 4);
    CHECK(a.unique_authors == 3);
    CHECK(a.active_ratio == doctest::Approx(4.0 / 3.0));
    CHECK(a.retweet_count == 1);
    REQUIRE(a.domination_ratio.has_value());
    CHECK(*a.domination_ratio == doctest::Approx(1.0));
    CHECK(a.trend_duration == 4);
    CHECK(a.sequence_count == 2);

    const TopicMetrics& b = metrics[1];
    CHECK(b.retweet_count == 0);
    CHECK_FALSE(b.domination_ratio.has_value());
    CHECK(b.sequence_count == 1);
}

TEST_CASE("correlation_report: exact pair and flagged pairs") {
    std::vector<TopicMetrics> metrics;
    for (int i = 1; i <= 6; ++i) {
        TopicMetrics m;
        m.topic = "t" + std::to_string(i);
        m.unique_authors = static_cast<std::uint64_t>(i);
        m.trend_duration = static_cast<std::uint64_t>(i);  // identical to unique_authors
        m.total_tweets = static_cast<std::uint64_t>(10 + (i % 3));
        m.retweet_count = static_cast<std::uint64_t>(i * i);
        metrics.push_back(m);
    }
    const CorrelationReport report = correlation_report(metrics, {});
    CHECK(report.coefficients.at("unique_authors_vs_duration") == doctest::Approx(1.0));
    CHECK(report.coefficients.count("domination_vs_duration") == 0);  // no retweet data
    bool flagged = false;
    for (const auto& note : report.skipped) {
        flagged = flagged || note.find("domination_vs_duration") != std::string::npos;
    }
    CHECK(flagged);
}

TEST_CASE("correlation_report: independent columns are near zero") {
    SplitRng rng(171717, 0, 0);
    std::vector<TopicMetrics> metrics(10'000);
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        metrics[i].topic = "t" + std::to_string(i);
        metrics[i].unique_authors = 1 + rng.next_u64() % 1000;
        metrics[i].trend_duration = 1 + rng.next_u64() % 1000;
        metrics[i].total_tweets = 1 + rng.next_u64() % 1000;
        metrics[i].retweet_count = rng.next_u64() % 1000;
    }
    const CorrelationReport report = correlation_report(metrics, {});
    CHECK(std::fabs(report.coefficients.at("unique_authors_vs_duration")) < 0.05);
    CHECK(std::fabs(report.coefficients.at("retweets_vs_duration")) < 0.05);
}

TEST_CASE("correlation_report: author pairs use only present optionals") {
    std::vector<AuthorStats> authors;
    for (int i = 1; i <= 5; ++i) {
        AuthorStats a;
        a.author = "a" + std::to_string(i);
        a.topics_initiated = static_cast<std::uint64_t>(i);
        a.tweet_rate = 2.0 * i;  // perfectly correlated
        if (i <= 2) a.followers = 100;  // only two rows -> skipped
        authors.push_back(a);
    }
    const CorrelationReport report = correlation_report({}, authors);
    CHECK(report.coefficients.at("tweet_rate_vs_topics_initiated") == doctest::Approx(1.0));
    CHECK(report.coefficients.count("followers_vs_topics_initiated") == 0);
    bool flagged = false;
    for (const auto& note : report.skipped) {
        flagged = flagged || note.find("followers_vs_topics_initiated") != std::string::npos;
    }
    CHECK(flagged);
}
