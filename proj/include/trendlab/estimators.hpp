#pragma once

#include <cstdint>
#include <vector>

#include "trendlab/core_types.hpp"
#include "trendlab/noise.hpp"

namespace trendlab {

// Measured novelty-decay factor per time step.
struct GammaSeries {
    std::vector<std::uint64_t> t;  // >= 1; steps nobody covers are absent
    std::vector<double> gamma;
};

// Trending durations in intervals, possibly left-truncated at a minimum
// duration (e.g. the "more than 10 timestamps" cut).
struct DurationSample {
    std::vector<std::uint64_t> durations;
    std::uint64_t truncation = 0;
};

struct NormalityMoments {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

struct QqPoint {
    double theoretical = 0.0;
    double sample = 0.0;
};

// Cross-topic mean of the normalized second differences per step.
struct CurvatureSeries {
    std::vector<std::uint64_t> t;
    std::vector<double> mean;
    std::vector<std::size_t> topics;  // contributing topics per step
};

// gamma_hat(t) = <N_q(t)/N_q(t-1)>_q - 1, averaging over topics whose
// series covers t with N_q(t-1) > 0. Requires at least two topics.
GammaSeries measure_gamma(const std::vector<TopicSeries>& cohort);

// Ordinary least squares on (ln x, ln y) over the index window [lo, hi).
// params: slope, intercept. When SS_tot = 0 the fit is a perfect
// constant and r_squared is 1 by convention.
FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                        std::size_t lo, std::size_t hi);
FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

// ln C_q(t_i, t_j) over topics with N_q(t_j) > 0; excluded topics are
// counted in the result. Fewer than 10 qualifying topics is an
// InsufficientSampleError.
RatioSample log_ratio_sample(const std::vector<TopicSeries>& cohort,
                             IntervalIndex t_i, IntervalIndex t_j);

// Standard sample skewness and excess kurtosis; zero variance is a
// DomainError.
NormalityMoments moment_normality(const std::vector<double>& values);

// Normal Q-Q points at plotting positions (i - 0.5)/n. Both coordinates
// are standardized by their own mean and standard deviation, so a sample
// that already equals its plotting-position quantiles lies exactly on
// the identity line.
std::vector<QqPoint> qq_points(std::vector<double> values);

// Gaussian kernel density estimate with Silverman's rule-of-thumb
// bandwidth.
std::vector<double> gaussian_kde(const std::vector<double>& values,
                                 const std::vector<double>& eval_points);
double silverman_bandwidth(const std::vector<double>& values);

// For every topic with series length >= max(3, min_duration):
// d2[t] = N(t+1) - 2 N(t) + N(t-1), divided by that topic's mean
// cumulative count; returns the cross-topic mean per t.
CurvatureSeries normalized_second_derivative(const std::vector<TopicSeries>& cohort,
                                             std::size_t min_duration);

// Sample Pearson correlation. Constant input is an UndefinedValueError.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// p = F(log theta) where F is the CDF of log xi: for lognormal noise
// Phi((ln theta - mu)/s). Gamma noise has no analytic form here.
double stop_probability(double theta, const NoiseSpec& noise);

// theta = exp(F^{-1}(p)), the inverse of stop_probability.
double survival_threshold(double p, const NoiseSpec& noise);

// Geometric MLE after shifting by the truncation offset:
// p_hat = 1 / (1 + mean(shifted durations)). r_squared carries the
// unit-bin log-density fit when >= 3 nonempty bins exist (1 otherwise);
// residuals are the shifted durations around the fitted mean.
FitResult fit_geometric(const DurationSample& sample);

// Least-squares line on (duration, ln density) over the first `bins`
// unit-width bins, empty bins dropped. slope relates to p via
// slope = ln(1 - p).
FitResult fit_exponential_tail(const DurationSample& sample, std::size_t bins);

// <L> = 1/p - 1 for p in (0, 1).
double expected_duration(double p);

}  // namespace trendlab
