#pragma once

#include <cmath>
#include <cstdint>

namespace roifc {

/// SplitMix64: counter-based generator (Steele, Lea & Flood). The state is a
/// plain 64-bit counter advanced by a fixed odd increment; each output is a
/// finalizing hash of the counter, so the stream for a given seed is identical
/// on every platform. That portability is why it is used instead of the
/// standard-library engines and distributions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 bits of resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_unit_open_left() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Standard normal variates via the Box-Muller transform over a SplitMix64
/// stream. Generates pairs and caches the second value, so a fixed seed
/// yields a fixed sequence regardless of how calls are interleaved.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng_.next_unit_open_left();
        const double u2 = rng_.next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    SplitMix64& uniform_source() { return rng_; }

private:
    static constexpr double kPi = 3.14159265358979323846;
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace roifc
