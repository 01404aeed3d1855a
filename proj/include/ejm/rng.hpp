// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ejm {

/// Seeded random stream with a documented, release-stable algorithm:
/// an mt19937_64 engine (output fully pinned by the C++ standard) mapped to
/// doubles through the top 53 bits, so sequences are bit-identical across
/// platforms. Child streams derive their seed with a SplitMix64 mix of the
/// parent seed and the child index, which keeps runs at distinct grid points
/// independent and reproducible regardless of evaluation order.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal variate (Box-Muller over next_unit()).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = next_unit();
        while (u == 0.0) u = next_unit();
        const double v = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(2.0 * std::numbers::pi * v);
        have_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * v);
    }

    /// Independent child stream; a pure function of (seed, child), so it does
    /// not advance or depend on this stream's position.
    SeedStream split(std::uint64_t child) const {
        return SeedStream(mix(seed_ + 0x9E3779B97F4A7C15ULL * (child + 1)));
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // SplitMix64 finalizer.
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ejm
