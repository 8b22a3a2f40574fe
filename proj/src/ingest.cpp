#include "trendlab/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "trendlab/rng.hpp"

namespace trendlab {

namespace {

using nlohmann::json;

constexpr std::uint64_t kStreamEmissionTag = 0x73747265616dULL;
// cohorts whose projected record count exceeds this are rejected
constexpr std::uint64_t kStreamRecordGuard = 20'000'000;

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

TweetRecord record_from_json(const json& j) {
    if (!j.is_object()) {
        throw DomainError("line is not a JSON object");
    }
    TweetRecord r;
    r.topic = j.at("topic").get<std::string>();
    r.author = j.at("author").get<std::string>();
    const json& time = j.at("time");
    if (!time.is_number_integer() && !time.is_number_unsigned()) {
        throw DomainError("time must be an integer");
    }
    if (time.is_number_integer() && time.get<std::int64_t>() < 0) {
        throw DomainError("time must be non-negative");
    }
    r.time = time.get<std::uint64_t>();
    r.is_retweet = j.at("is_retweet").get<bool>();
    if (j.contains("retweeted_author") && !j["retweeted_author"].is_null()) {
        r.retweeted_author = j["retweeted_author"].get<std::string>();
    }
    if (j.contains("followers") && !j["followers"].is_null()) {
        const json& f = j["followers"];
        if (!f.is_number_integer() && !f.is_number_unsigned()) {
            throw DomainError("followers must be an integer");
        }
        if (f.is_number_integer() && f.get<std::int64_t>() < 0) {
            throw DomainError("followers must be non-negative");
        }
        r.followers = f.get<std::uint64_t>();
    }
    if (j.contains("tweet_rate") && !j["tweet_rate"].is_null()) {
        const double rate = j["tweet_rate"].get<double>();
        if (rate < 0.0) {
            throw DomainError("tweet_rate must be non-negative");
        }
        r.tweet_rate = rate;
    }
    validate(r);
    return r;
}

}  // namespace

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ParsedStream parse_stream(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);

    ParsedStream out;
    std::set<std::string> topics;
    std::uint64_t min_time = 0;
    std::uint64_t max_time = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        ++out.summary.records_read;
        try {
            TweetRecord r = record_from_json(json::parse(line));
            if (out.records.empty()) {
                min_time = max_time = r.time;
            } else {
                min_time = std::min(min_time, r.time);
                max_time = std::max(max_time, r.time);
            }
            topics.insert(r.topic);
            out.records.push_back(std::move(r));
        } catch (const std::exception& e) {
            ++out.summary.records_rejected;
            out.summary.rejects.emplace_back(line_no, e.what());
        }
    }

    out.summary.topics = topics.size();
    if (!out.records.empty()) {
        out.summary.first_timestamp = min_time;
        out.summary.time_span = max_time - min_time;
    }
    if (out.summary.records_read > 0 &&
        out.summary.records_rejected * 10 > out.summary.records_read) {
        std::ostringstream msg;
        msg << path.string() << ": " << out.summary.records_rejected << " of "
            << out.summary.records_read << " lines malformed (>10%)";
        throw CorruptInputError(msg.str());
    }
    return out;
}

void write_stream(const std::vector<TweetRecord>& records, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    for (const auto& r : records) {
        json j;
        j["topic"] = r.topic;
        j["author"] = r.author;
        j["time"] = r.time;
        j["is_retweet"] = r.is_retweet;
        if (r.retweeted_author) j["retweeted_author"] = *r.retweeted_author;
        if (r.followers) j["followers"] = *r.followers;
        if (r.tweet_rate) j["tweet_rate"] = *r.tweet_rate;
        out << j.dump() << '\n';
    }
}

BinnedStream bin_intervals(const std::vector<TweetRecord>& records, std::uint64_t origin) {
    BinnedStream out;
    std::map<std::string, std::vector<double>> counts;
    for (const auto& r : records) {
        if (r.time < origin) {
            ++out.rejected;
            continue;
        }
        const std::uint64_t idx = interval_of(r.time, origin).value;
        auto& v = counts[r.topic];
        if (v.size() <= idx) v.resize(idx + 1, 0.0);
        v[idx] += 1.0;
    }
    for (auto& [topic, v] : counts) {
        out.series.emplace(topic, TopicSeries::from_counts(topic, std::move(v)));
    }
    return out;
}

std::map<std::string, std::vector<IntervalIndex>> load_trend_appearances(
    const std::filesystem::path& path) {
    std::ifstream in = open_input(path);

    std::map<std::string, std::set<std::uint64_t>> collected;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        if (!header_seen) {
            header_seen = true;  // "topic,interval"
            continue;
        }
        const std::vector<std::string> fields = csv_split(line);
        if (fields.size() != 2 || fields[0].empty()) continue;
        try {
            const long long value = std::stoll(fields[1]);
            if (value < 0) continue;  // rejected row
            collected[fields[0]].insert(static_cast<std::uint64_t>(value));
        } catch (const std::exception&) {
            continue;
        }
    }

    std::map<std::string, std::vector<IntervalIndex>> out;
    for (const auto& [topic, intervals] : collected) {
        std::vector<IntervalIndex> sorted;
        sorted.reserve(intervals.size());
        for (std::uint64_t v : intervals) sorted.push_back(IntervalIndex{v});
        out.emplace(topic, std::move(sorted));
    }
    return out;
}

void write_appearances(const std::map<std::string, std::vector<IntervalIndex>>& appearances,
                       const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "topic,interval\n";
    for (const auto& [topic, intervals] : appearances) {
        for (IntervalIndex i : intervals) {
            out << csv_escape(topic) << ',' << i.value << '\n';
        }
    }
}

void write_series(const std::vector<TopicSeries>& cohort, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "topic,interval,count,cumulative\n";
    for (const auto& s : cohort) {
        for (std::size_t t = 0; t < s.size(); ++t) {
            out << csv_escape(s.topic) << ',' << t << ',' << format_double(s.counts[t]) << ','
                << format_double(s.cumulative[t]) << '\n';
        }
    }
}

std::vector<TopicSeries> read_series(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);

    std::vector<TopicSeries> cohort;
    std::map<std::string, std::size_t> index;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = csv_split(line);
        if (fields.size() != 4) {
            throw CorruptInputError(path.string() + ": series row needs 4 columns");
        }
        TopicSeries* series = nullptr;
        auto it = index.find(fields[0]);
        if (it == index.end()) {
            index.emplace(fields[0], cohort.size());
            cohort.emplace_back();
            cohort.back().topic = fields[0];
            series = &cohort.back();
        } else {
            series = &cohort[it->second];
        }
        try {
            const std::size_t interval = std::stoull(fields[1]);
            if (interval != series->size()) {
                throw CorruptInputError(path.string() + ": intervals out of order for '" +
                                        fields[0] + "'");
            }
            series->counts.push_back(std::stod(fields[2]));
            series->cumulative.push_back(std::stod(fields[3]));
        } catch (const CorruptInputError&) {
            throw;
        } catch (const std::exception&) {
            throw CorruptInputError(path.string() + ": unparsable series row");
        }
    }
    return cohort;
}

void write_durations(const std::vector<TrendSequence>& sequences,
                     const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "topic,duration,censored\n";
    for (const auto& seq : sequences) {
        out << csv_escape(seq.topic) << ',' << seq.length << ',' << (seq.censored ? 1 : 0)
            << '\n';
    }
}

std::vector<DurationRow> read_durations(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);

    std::vector<DurationRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = csv_split(line);
        if (fields.size() != 3) {
            throw CorruptInputError(path.string() + ": duration row needs 3 columns");
        }
        try {
            const long long duration = std::stoll(fields[1]);
            if (duration < 0) {
                throw CorruptInputError(path.string() + ": negative duration");
            }
            DurationRow row;
            row.topic = fields[0];
            row.duration = static_cast<std::uint64_t>(duration);
            row.censored = std::stoll(fields[2]) != 0;
            rows.push_back(std::move(row));
        } catch (const CorruptInputError&) {
            throw;
        } catch (const std::exception&) {
            throw CorruptInputError(path.string() + ": unparsable duration row");
        }
    }
    return rows;
}

std::vector<TweetRecord> cohort_to_stream(const std::vector<TopicSeries>& cohort,
                                          std::uint64_t seed) {
    const std::uint64_t emission_seed = derive_seed(seed, kStreamEmissionTag);

    std::uint64_t projected = 0;
    for (const auto& s : cohort) {
        if (!s.cumulative.empty()) {
            projected += static_cast<std::uint64_t>(s.cumulative.back()) + s.size();
        }
        if (projected > kStreamRecordGuard) {
            throw DomainError("cohort_to_stream: emission would exceed the record guard; "
                              "reduce topics or intervals");
        }
    }

    std::vector<TweetRecord> out;
    out.reserve(projected);
    char author[16];
    for (std::size_t q = 0; q < cohort.size(); ++q) {
        const TopicSeries& s = cohort[q];
        for (std::size_t t = 0; t < s.size(); ++t) {
            SplitRng stream(emission_seed, q, t);
            const double count = s.counts[t];
            std::uint64_t m = static_cast<std::uint64_t>(std::floor(count));
            if (stream.next_unit() < count - std::floor(count)) ++m;
            for (std::uint64_t j = 0; j < m; ++j) {
                TweetRecord r;
                r.topic = s.topic;
                std::snprintf(author, sizeof author, "u%03llu",
                              static_cast<unsigned long long>(stream.next_u64() % 128));
                r.author = author;
                r.time = static_cast<std::uint64_t>(t) * kIntervalSeconds +
                         j * kIntervalSeconds / m;
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

}  // namespace trendlab
