#include "trendlab/noise.hpp"

#include <cmath>

namespace trendlab {

LognormalShape lognormal_shape(double sigma2) {
    if (sigma2 < 0.0) {
        throw DomainError("noise variance must be non-negative");
    }
    LognormalShape shape;
    const double s2 = std::log1p(sigma2);
    shape.s = std::sqrt(s2);
    shape.mu = -0.5 * s2;
    return shape;
}

namespace {

// Marsaglia-Tsang squeeze for Gamma(shape k >= 1, scale 1). The
// substream's counter absorbs the variable number of rejections.
double gamma_standard(double k, SplitRng& stream) {
    double boost = 1.0;
    if (k < 1.0) {
        boost = std::pow(stream.next_unit(), 1.0 / k);
        k += 1.0;
    }
    const double d = k - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = stream.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.next_unit();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return boost * d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return boost * d * v;
        }
    }
}

}  // namespace

double sample_noise(const NoiseSpec& spec, SplitRng& stream) {
    if (spec.sigma2 < 0.0) {
        throw DomainError("noise variance must be non-negative");
    }
    if (spec.kind == NoiseKind::degenerate || spec.sigma2 == 0.0) {
        return 1.0;
    }
    switch (spec.kind) {
        case NoiseKind::lognormal: {
            const LognormalShape shape = lognormal_shape(spec.sigma2);
            return std::exp(shape.mu + shape.s * stream.next_normal());
        }
        case NoiseKind::gamma: {
            // shape 1/sigma2, scale sigma2: mean 1, variance sigma2
            const double k = 1.0 / spec.sigma2;
            return gamma_standard(k, stream) * spec.sigma2;
        }
        default:
            return 1.0;
    }
}

}  // namespace trendlab
