#include "doctest.h"

#include <cmath>
#include <vector>

#include "trendlab/noise.hpp"
#include "trendlab/rng.hpp"

using namespace trendlab;

namespace {

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;
};

MeanVar sample_moments(const NoiseSpec& spec, std::uint64_t seed, std::size_t n) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        SplitRng stream(seed, 0, i);
        const double xi = sample_noise(spec, stream);
        REQUIRE(xi > 0.0);
        sum += xi;
        sum_sq += xi * xi;
    }
    const double mean = sum / static_cast<double>(n);
    return {mean, sum_sq / static_cast<double>(n) - mean * mean};
}

}  // namespace

TEST_CASE("degenerate noise is identically 1") {
    SplitRng stream(1, 2, 3);
    const NoiseSpec spec{NoiseKind::degenerate, 0.0};
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_noise(spec, stream) == 1.0);
    }
}

TEST_CASE("lognormal noise has mean 1 and variance sigma2") {
    // law-of-large-numbers check, ranges fixed from an independent
    // statistical oracle
    const MeanVar mv = sample_moments({NoiseKind::lognormal, 0.25}, 2024, 1'000'000);
    CHECK(mv.mean > 0.99);
    CHECK(mv.mean < 1.01);
    CHECK(mv.variance > 0.245);
    CHECK(mv.variance < 0.255);
}

TEST_CASE("gamma noise has mean 1 and variance sigma2") {
    const MeanVar mv = sample_moments({NoiseKind::gamma, 0.25}, 99, 1'000'000);
    CHECK(mv.mean > 0.99);
    CHECK(mv.mean < 1.01);
    CHECK(mv.variance > 0.243);
    CHECK(mv.variance < 0.257);
}

TEST_CASE("gamma noise with sigma2 > 1 uses the shape-boost branch") {
    const MeanVar mv = sample_moments({NoiseKind::gamma, 4.0}, 7, 400'000);
    CHECK(mv.mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mv.variance == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("gamma noise matches the gamma shape, not just two moments") {
    // shape k = 1/sigma2 = 4 has skewness 2/sqrt(k) = 1
    const NoiseSpec spec{NoiseKind::gamma, 0.25};
    const std::size_t n = 400'000;
    double sum = 0.0;
    std::vector<double> draws(n);
    for (std::size_t i = 0; i < n; ++i) {
        SplitRng stream(1716, 0, i);
        draws[i] = sample_noise(spec, stream);
        sum += draws[i];
    }
    const double mean = sum / static_cast<double>(n);
    double m2 = 0.0;
    double m3 = 0.0;
    for (double d : draws) {
        const double c = d - mean;
        m2 += c * c;
        m3 += c * c * c;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    CHECK(m3 / std::pow(m2, 1.5) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("negative variance is rejected") {
    SplitRng stream(0, 0, 0);
    NoiseSpec spec{NoiseKind::lognormal, -0.5};
    CHECK_THROWS_AS(sample_noise(spec, stream), DomainError);
    CHECK_THROWS_AS(lognormal_shape(-1.0), DomainError);
}

TEST_CASE("lognormal shape solves the mean-1 constraint") {
    const LognormalShape shape = lognormal_shape(0.25);
    CHECK(shape.s * shape.s == doctest::Approx(std::log(1.25)));
    CHECK(shape.mu == doctest::Approx(-0.5 * std::log(1.25)));
    // E[exp(mu + s Z)] = exp(mu + s^2/2) = 1
    CHECK(std::exp(shape.mu + 0.5 * shape.s * shape.s) == doctest::Approx(1.0));
}

TEST_CASE("substreams are independent of evaluation order and distinct") {
    SplitRng a(5, 17, 3);
    SplitRng b(5, 17, 3);
    for (int i = 0; i < 16; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }

    SplitRng c(5, 17, 4);
    SplitRng d(5, 18, 3);
    SplitRng e(6, 17, 3);
    SplitRng base(5, 17, 3);
    const std::uint64_t first = base.next_u64();
    CHECK(c.next_u64() != first);
    CHECK(d.next_u64() != first);
    CHECK(e.next_u64() != first);
}

TEST_CASE("unit draws stay inside the open interval") {
    SplitRng stream(13, 0, 0);
    for (int i = 0; i < 10'000; ++i) {
        const double u = stream.next_unit();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("derive_seed separates tagged streams") {
    CHECK(derive_seed(42, 1) != derive_seed(42, 2));
    CHECK(derive_seed(42, 1) != 42);
}
