#pragma once

#include <cstdint>

#include "trendlab/normal.hpp"

namespace trendlab {

namespace detail {

// SplitMix64 finalizer; full-avalanche mix of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

// Counter-based stream keyed by (seed, stream, step): every key opens
// an independent substream, so a cohort can be generated topic-by-topic,
// step-by-step, in any order, with identical results.
class SplitRng {
public:
    SplitRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
        std::uint64_t h = detail::mix64(seed + detail::kGolden);
        h = detail::mix64(h ^ (stream + 0xbf58476d1ce4e5b9ULL));
        h = detail::mix64(h ^ (step + 0x94d049bb133111ebULL));
        state_ = h;
    }

    std::uint64_t next_u64() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    // Uniform on the open interval (0, 1); never returns 0 or 1, so the
    // value is safe to pass through log or an inverse CDF.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal draw via the inverse CDF (one uniform per draw).
    double next_normal() { return normal_quantile(next_unit()); }

private:
    std::uint64_t state_;
};

// Stable derivation of an auxiliary seed, e.g. so stream emission does
// not reuse the simulation's noise substreams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return detail::mix64(detail::mix64(seed + detail::kGolden) ^ tag);
}

}  // namespace trendlab
