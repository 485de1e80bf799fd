#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lfe {

/// splitmix64 finalizer (Steele, Lea & Flood; Vigna's fixed-increment form).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// splitmix64 generator. Output k is a pure function of state0 + k*gamma,
/// which makes streams counter-based: stream derivation and skip-ahead are
/// O(1) and independent of call order.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state(seed) {}

    constexpr std::uint64_t next() noexcept {
        state += 0x9E3779B97F4A7C15ull;
        return mix64(state);
    }

    /// Uniform double in the open interval (0, 1); never returns 0 or 1,
    /// safe under log().
    double next_uniform() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state;
};

/// Derive the generator for one stream of the pair (seed, stream index);
/// distinct indices give well-separated initial states.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) noexcept {
    return SplitMix64(mix64(seed + 0x9E3779B97F4A7C15ull) ^ mix64(~stream));
}

/// Standard normal variates via Box-Muller on top of a SplitMix64 stream.
class NormalStream {
public:
    explicit NormalStream(SplitMix64 gen) noexcept : rng(gen) {}
    NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : rng(substream(seed, stream)) {}

    double next() noexcept {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = rng.next_uniform();
        const double u2 = rng.next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare = r * std::sin(t);
        have_spare = true;
        return r * std::cos(t);
    }

private:
    SplitMix64 rng;
    double spare = 0.0;
    bool have_spare = false;
};

} // namespace lfe
