#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trendlab/core_types.hpp"

namespace trendlab {

struct StreamFileSummary {
    std::size_t records_read = 0;      // non-blank lines seen
    std::size_t records_rejected = 0;  // malformed or invariant-breaking
    std::size_t topics = 0;            // distinct topics among accepted records
    std::uint64_t time_span = 0;       // seconds between first and last accepted
    std::uint64_t first_timestamp = 0;
    std::vector<std::pair<std::size_t, std::string>> rejects;  // line number, reason
};

struct ParsedStream {
    std::vector<TweetRecord> records;
    StreamFileSummary summary;
};

struct BinnedStream {
    std::map<std::string, TopicSeries> series;
    std::size_t rejected = 0;  // records before the origin
};

// Newline-delimited JSON records, one object per line; fields: topic,
// author, time, is_retweet, retweeted_author (optional), followers
// (optional), tweet_rate (optional). Unknown fields are ignored.
// Malformed lines are counted with their line numbers; more than 10%
// of them is a CorruptInputError, an unreadable file an IoError.
ParsedStream parse_stream(const std::filesystem::path& path);
void write_stream(const std::vector<TweetRecord>& records, const std::filesystem::path& path);

// Bins records into 20-minute intervals from `origin`. Each topic's
// series runs from interval 0 to that topic's last tweet, gaps
// zero-filled; records before the origin are rejected and counted.
BinnedStream bin_intervals(const std::vector<TweetRecord>& records, std::uint64_t origin);

// CSV with header "topic,interval". Duplicate pairs are collapsed,
// rows with a negative interval rejected.
std::map<std::string, std::vector<IntervalIndex>> load_trend_appearances(
    const std::filesystem::path& path);
void write_appearances(const std::map<std::string, std::vector<IntervalIndex>>& appearances,
                       const std::filesystem::path& path);

// CSV with header "topic,interval,count,cumulative".
void write_series(const std::vector<TopicSeries>& cohort, const std::filesystem::path& path);
std::vector<TopicSeries> read_series(const std::filesystem::path& path);

// CSV with header "topic,duration,censored".
void write_durations(const std::vector<TrendSequence>& sequences,
                     const std::filesystem::path& path);
struct DurationRow {
    std::string topic;
    std::uint64_t duration = 0;
    bool censored = false;
};
std::vector<DurationRow> read_durations(const std::filesystem::path& path);

// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

// Expands a simulated cohort into tweet records: each interval's
// real-valued count becomes an integer multiplicity by stochastic
// rounding under a substream derived from `seed`, so the emitted stream
// is reproducible and each interval is off by at most 1.
std::vector<TweetRecord> cohort_to_stream(const std::vector<TopicSeries>& cohort,
                                          std::uint64_t seed);

}  // namespace trendlab
