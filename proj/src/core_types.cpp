#include "trendlab/core_types.hpp"

#include <utility>

namespace trendlab {

IntervalIndex interval_of(std::uint64_t time_s, std::uint64_t origin_s) {
    if (time_s < origin_s) {
        throw DomainError("timestamp precedes the dataset origin");
    }
    return IntervalIndex{(time_s - origin_s) / kIntervalSeconds};
}

void validate(const TweetRecord& record) {
    if (record.topic.empty()) {
        throw DomainError("tweet record has an empty topic");
    }
    if (record.author.empty()) {
        throw DomainError("tweet record has an empty author");
    }
    if (record.is_retweet != record.retweeted_author.has_value()) {
        throw DomainError("retweeted_author must be present exactly when is_retweet");
    }
    if (record.retweeted_author && *record.retweeted_author == record.author) {
        throw DomainError("retweet credits its own author");
    }
}

std::vector<double> cumulate(const std::vector<double>& counts) {
    if (counts.empty()) {
        throw DomainError("cumulate: empty count list");
    }
    std::vector<double> out;
    out.reserve(counts.size());
    double running = 0.0;
    for (double c : counts) {
        if (c < 0.0) {
            throw DomainError("cumulate: negative count");
        }
        running += c;
        out.push_back(running);
    }
    return out;
}

TopicSeries TopicSeries::from_counts(std::string topic, std::vector<double> counts) {
    TopicSeries s;
    s.topic = std::move(topic);
    s.cumulative = cumulate(counts);
    s.counts = std::move(counts);
    return s;
}

double ratio(const TopicSeries& series, IntervalIndex t_i, IntervalIndex t_j) {
    if (t_i <= t_j) {
        throw DomainError("ratio: t_i must be later than t_j");
    }
    if (t_i.value >= series.cumulative.size()) {
        throw DomainError("ratio: t_i beyond the series horizon");
    }
    const double denom = series.cumulative[t_j.value];
    if (denom == 0.0) {
        throw UndefinedValueError("ratio: N_q(t_j) is zero");
    }
    return series.cumulative[t_i.value] / denom;
}

void ModelParams::validate() const {
    if (n_topics == 0) {
        throw DomainError("n_topics must be positive");
    }
    if (n_intervals == 0) {
        throw DomainError("n_intervals must be positive");
    }
    // overflow / memory guard for the cohort buffers
    if (n_topics > (std::size_t{1} << 26) || n_intervals > (std::size_t{1} << 26) ||
        n_topics * (n_intervals + 1) > (std::size_t{1} << 28)) {
        throw DomainError("n_topics * n_intervals exceeds the cohort size guard");
    }
    if (!(n0 > 0.0)) {
        throw DomainError("n0 must be positive");
    }
    if (gamma_scale < 0.0) {
        throw DomainError("gamma_scale must be non-negative");
    }
    if (sigma2 < 0.0) {
        throw DomainError("sigma2 must be non-negative");
    }
    if ((sigma2 == 0.0) != (noise_kind == NoiseKind::degenerate)) {
        throw DomainError("sigma2 = 0 exactly when the noise is degenerate");
    }
    if (theta < 0.0) {
        throw DomainError("theta must be non-negative");
    }
    if (!constant_gamma_after && theta >= 1.0 + gamma_scale) {
        throw DomainError("theta >= 1 + gamma_scale: nothing survives the first step");
    }
    if (constant_gamma_after) {
        if (*constant_gamma_after == 0) {
            throw DomainError("constant_gamma_after must be >= 1");
        }
        if (*constant_gamma_after >= n_intervals) {
            throw DomainError("constant_gamma_after must precede the horizon");
        }
    }
}

}  // namespace trendlab
