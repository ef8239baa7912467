#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace mfspec {

/// SplitMix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// The SplitMix64 finalizer applied to a single value (a bijection on 64 bits).
std::uint64_t mix64(std::uint64_t x) noexcept;

/// xoshiro256++ 1.0 (Blackman & Vigna), seeded through SplitMix64.
///
/// Output depends only on the seed, never on the platform, so seeded
/// simulations reproduce bit-for-bit wherever IEEE doubles and libm agree.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) noexcept;

    result_type operator()() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Standard normal deviates by the Marsaglia polar method; caches the second
/// deviate of each accepted pair. Implemented here rather than with
/// std::normal_distribution, whose output differs between standard libraries.
class StandardNormal {
public:
    double operator()(Xoshiro256pp& rng) noexcept;

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mfspec
