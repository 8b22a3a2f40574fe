#include "trendlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trendlab/normal.hpp"

namespace trendlab {

namespace {

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    std::vector<double> residuals;
};

// Plain least squares with the SS_tot = 0 -> R^2 = 1 convention.
OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mean_x) * (x[i] - mean_x);
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
    }
    OlsFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = mean_y - fit.slope * mean_x;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    fit.residuals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        fit.residuals.push_back(r);
        ss_res += r * r;
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
    return fit;
}

double sample_mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// n-1 denominator
double sample_stddev(const std::vector<double>& v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

GammaSeries measure_gamma(const std::vector<TopicSeries>& cohort) {
    if (cohort.size() < 2) {
        throw DomainError("measure_gamma needs at least two topics");
    }
    std::size_t max_len = 0;
    for (const auto& s : cohort) max_len = std::max(max_len, s.size());

    GammaSeries out;
    for (std::size_t t = 1; t < max_len; ++t) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& s : cohort) {
            if (s.size() <= t) continue;  // topic too short for this step
            const double prev = s.cumulative[t - 1];
            if (prev <= 0.0) continue;
            sum += s.cumulative[t] / prev;
            ++n;
        }
        if (n > 0) {
            out.t.push_back(t);
            out.gamma.push_back(sum / static_cast<double>(n) - 1.0);
        }
    }
    return out;
}

FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                        std::size_t lo, std::size_t hi) {
    if (x.size() != y.size()) {
        throw DomainError("fit_power_law: x and y differ in length");
    }
    hi = std::min(hi, x.size());
    if (lo >= hi || hi - lo < 3) {
        throw DomainError("fit_power_law: window needs at least 3 points");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    lx.reserve(hi - lo);
    ly.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw DomainError("fit_power_law: non-positive value in window");
        }
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const OlsFit fit = ols(lx, ly);
    FitResult result;
    result.params["slope"] = fit.slope;
    result.params["intercept"] = fit.intercept;
    result.r_squared = fit.r_squared;
    result.residuals = fit.residuals;
    result.n_points = fit.residuals.size();
    return result;
}

FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    return fit_power_law(x, y, 0, x.size());
}

RatioSample log_ratio_sample(const std::vector<TopicSeries>& cohort,
                             IntervalIndex t_i, IntervalIndex t_j) {
    if (t_i <= t_j) {
        throw DomainError("log_ratio_sample: t_i must be later than t_j");
    }
    RatioSample out;
    out.t_i = t_i;
    out.t_j = t_j;
    out.log_scale = true;
    for (const auto& s : cohort) {
        if (s.size() <= t_i.value || s.cumulative[t_j.value] <= 0.0) {
            ++out.excluded;
            continue;
        }
        out.values.push_back(std::log(s.cumulative[t_i.value] / s.cumulative[t_j.value]));
    }
    if (out.values.size() < 10) {
        throw InsufficientSampleError("log_ratio_sample: fewer than 10 qualifying topics");
    }
    return out;
}

NormalityMoments moment_normality(const std::vector<double>& values) {
    if (values.size() < 3) {
        throw DomainError("moment_normality needs at least 3 values");
    }
    const double mean = sample_mean(values);
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    const double n = static_cast<double>(values.size());
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 == 0.0) {
        throw DomainError("moment_normality: zero variance");
    }
    return {m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

std::vector<QqPoint> qq_points(std::vector<double> values) {
    const std::size_t n = values.size();
    if (n < 3) {
        throw DomainError("qq_points needs at least 3 values");
    }
    std::sort(values.begin(), values.end());
    const double mean_v = sample_mean(values);
    const double sd_v = sample_stddev(values, mean_v);
    if (sd_v == 0.0) {
        throw DomainError("qq_points: zero variance");
    }

    std::vector<double> quantiles(n);
    for (std::size_t i = 0; i < n; ++i) {
        quantiles[i] = normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    }
    const double mean_q = sample_mean(quantiles);
    const double sd_q = sample_stddev(quantiles, mean_q);

    std::vector<QqPoint> points(n);
    for (std::size_t i = 0; i < n; ++i) {
        points[i].theoretical = (quantiles[i] - mean_q) / sd_q;
        points[i].sample = (values[i] - mean_v) / sd_v;
    }
    return points;
}

double silverman_bandwidth(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw DomainError("silverman_bandwidth needs at least 2 values");
    }
    const double mean = sample_mean(values);
    const double sd = sample_stddev(values, mean);
    if (sd == 0.0) {
        throw DomainError("silverman_bandwidth: zero variance");
    }
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    auto percentile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const std::size_t idx = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(idx);
        return idx + 1 < n ? sorted[idx] * (1.0 - frac) + sorted[idx + 1] * frac : sorted[idx];
    };
    const double iqr = percentile(0.75) - percentile(0.25);
    double scale = sd;
    if (iqr > 0.0) scale = std::min(sd, iqr / 1.34);
    return 0.9 * scale * std::pow(static_cast<double>(n), -0.2);
}

std::vector<double> gaussian_kde(const std::vector<double>& values,
                                 const std::vector<double>& eval_points) {
    const double h = silverman_bandwidth(values);
    const double norm = 1.0 / (static_cast<double>(values.size()) * h * std::sqrt(2.0 * M_PI));
    std::vector<double> densities;
    densities.reserve(eval_points.size());
    for (double x : eval_points) {
        double sum = 0.0;
        for (double v : values) {
            const double z = (x - v) / h;
            sum += std::exp(-0.5 * z * z);
        }
        densities.push_back(sum * norm);
    }
    return densities;
}

CurvatureSeries normalized_second_derivative(const std::vector<TopicSeries>& cohort,
                                             std::size_t min_duration) {
    const std::size_t needed = std::max<std::size_t>(3, min_duration);
    std::vector<double> sums;
    std::vector<std::size_t> counts;
    std::size_t qualifying = 0;
    for (const auto& s : cohort) {
        if (s.size() < needed) continue;
        ++qualifying;
        const double mean_cum = sample_mean(s.cumulative);
        if (mean_cum == 0.0) continue;
        if (sums.size() < s.size() - 2) {
            sums.resize(s.size() - 2, 0.0);
            counts.resize(s.size() - 2, 0);
        }
        for (std::size_t t = 1; t + 1 < s.size(); ++t) {
            const double d2 =
                s.cumulative[t + 1] - 2.0 * s.cumulative[t] + s.cumulative[t - 1];
            sums[t - 1] += d2 / mean_cum;
            counts[t - 1] += 1;
        }
    }
    if (qualifying == 0) {
        throw InsufficientSampleError("normalized_second_derivative: no qualifying topics");
    }
    CurvatureSeries out;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (counts[i] == 0) continue;
        out.t.push_back(i + 1);
        out.mean.push_back(sums[i] / static_cast<double>(counts[i]));
        out.topics.push_back(counts[i]);
    }
    return out;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) {
        throw DomainError("pearson needs two equal-length lists of at least 3 values");
    }
    // one-pass updating form
    double mean_x = 0.0;
    double mean_y = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        const double inv = 1.0 / static_cast<double>(i + 1);
        mean_x += dx * inv;
        mean_y += dy * inv;
        sxx += dx * (x[i] - mean_x);
        syy += dy * (y[i] - mean_y);
        sxy += dx * (y[i] - mean_y);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw UndefinedValueError("pearson: constant input");
    }
    return sxy / std::sqrt(sxx * syy);
}

double stop_probability(double theta, const NoiseSpec& noise) {
    if (!(theta > 0.0)) {
        throw DomainError("stop_probability: theta must be positive");
    }
    if (noise.kind == NoiseKind::gamma) {
        throw UnsupportedAnalyticFormError(
            "stop_probability has no analytic form for gamma noise; use an empirical CDF");
    }
    if (noise.sigma2 < 0.0) {
        throw DomainError("noise variance must be non-negative");
    }
    if (noise.kind == NoiseKind::degenerate || noise.sigma2 == 0.0) {
        // log xi is identically 0: a step distribution at theta = 1
        return std::log(theta) > 0.0 ? 1.0 : 0.0;
    }
    const LognormalShape shape = lognormal_shape(noise.sigma2);
    return normal_cdf((std::log(theta) - shape.mu) / shape.s);
}

double survival_threshold(double p, const NoiseSpec& noise) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("survival_threshold: p must lie in (0, 1)");
    }
    if (noise.kind != NoiseKind::lognormal || noise.sigma2 == 0.0) {
        throw UnsupportedAnalyticFormError(
            "survival_threshold requires lognormal noise with positive variance");
    }
    const LognormalShape shape = lognormal_shape(noise.sigma2);
    return std::exp(shape.mu + shape.s * normal_quantile(p));
}

FitResult fit_geometric(const DurationSample& sample) {
    if (sample.durations.empty()) {
        throw InsufficientSampleError("fit_geometric: empty duration sample");
    }
    double sum = 0.0;
    std::uint64_t max_dur = 0;
    for (std::uint64_t d : sample.durations) {
        if (d < sample.truncation) {
            throw DomainError("fit_geometric: duration below the truncation offset");
        }
        sum += static_cast<double>(d - sample.truncation);
        max_dur = std::max(max_dur, d);
    }
    const double mean = sum / static_cast<double>(sample.durations.size());
    const double p_hat = 1.0 / (1.0 + mean);

    FitResult result;
    result.params["p"] = p_hat;
    result.r_squared = 1.0;
    result.residuals.reserve(sample.durations.size());
    for (std::uint64_t d : sample.durations) {
        result.residuals.push_back(static_cast<double>(d - sample.truncation) - mean);
    }
    result.n_points = result.residuals.size();

    try {
        const FitResult tail =
            fit_exponential_tail(sample, static_cast<std::size_t>(max_dur - sample.truncation) + 1);
        result.r_squared = tail.r_squared;
        result.params["tail_slope"] = tail.params.at("slope");
    } catch (const InsufficientSampleError&) {
        // fewer than 3 nonempty bins; keep the degenerate-fit convention
    }
    return result;
}

FitResult fit_exponential_tail(const DurationSample& sample, std::size_t bins) {
    if (bins == 0) {
        throw DomainError("fit_exponential_tail: bins must be positive");
    }
    if (sample.durations.empty()) {
        throw InsufficientSampleError("fit_exponential_tail: empty duration sample");
    }
    std::vector<std::size_t> histogram(bins, 0);
    for (std::uint64_t d : sample.durations) {
        if (d < sample.truncation) {
            throw DomainError("fit_exponential_tail: duration below the truncation offset");
        }
        const std::uint64_t k = d - sample.truncation;
        if (k < bins) histogram[k] += 1;
    }
    const double total = static_cast<double>(sample.durations.size());
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < bins; ++k) {
        if (histogram[k] == 0) continue;
        xs.push_back(static_cast<double>(sample.truncation + k));
        ys.push_back(std::log(static_cast<double>(histogram[k]) / total));
    }
    if (xs.size() < 3) {
        throw InsufficientSampleError("fit_exponential_tail: fewer than 3 nonempty bins");
    }
    const OlsFit fit = ols(xs, ys);
    FitResult result;
    result.params["slope"] = fit.slope;
    result.params["intercept"] = fit.intercept;
    result.r_squared = fit.r_squared;
    result.residuals = fit.residuals;
    result.n_points = fit.residuals.size();
    return result;
}

double expected_duration(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("expected_duration: p must lie in (0, 1)");
    }
    return 1.0 / p - 1.0;
}

}  // namespace trendlab
