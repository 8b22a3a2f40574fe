#pragma once

#include <stdexcept>

namespace trendlab {

// Precondition violation: an argument outside the operation's domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The requested quantity is mathematically undefined for this input
// (zero-denominator ratio, domination of a topic with no retweets,
// correlation of a constant column).
struct UndefinedValueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Too few qualifying data points to produce the statistic.
struct InsufficientSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An analytic form was requested for a noise family that has none;
// callers should fall back to an empirical CDF.
struct UnsupportedAnalyticFormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input parses badly enough (>10% rejected lines) that results would
// be meaningless.
struct CorruptInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace trendlab
