#pragma once

namespace trendlab {

// Standard normal CDF, absolute error well below 1e-9.
double normal_cdf(double x);

// Standard normal quantile for p in (0, 1); throws DomainError outside.
// Rational approximation accurate to ~1e-15, so normal_cdf and
// normal_quantile are mutual inverses to better than 1e-8.
double normal_quantile(double p);

}  // namespace trendlab
