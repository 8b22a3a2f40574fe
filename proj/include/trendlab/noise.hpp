#pragma once

#include "trendlab/core_types.hpp"
#include "trendlab/rng.hpp"

namespace trendlab {

// The multiplicative noise xi: positive, i.i.d., mean 1, variance sigma2.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::lognormal;
    double sigma2 = 0.0;
};

// Log-scale parameters of the mean-1 lognormal: if xi = exp(Z) with
// Z ~ Normal(mu, s^2), then s^2 = ln(1 + sigma2) and mu = -s^2/2.
struct LognormalShape {
    double mu = 0.0;
    double s = 0.0;
};

LognormalShape lognormal_shape(double sigma2);

// One draw of xi. Degenerate noise returns exactly 1; gamma noise uses
// shape 1/sigma2 and scale sigma2. Throws DomainError for sigma2 < 0.
double sample_noise(const NoiseSpec& spec, SplitRng& stream);

}  // namespace trendlab
