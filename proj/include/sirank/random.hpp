#pragma once

#include <cstdint>
#include <limits>

namespace sirank {

/// SplitMix64 finaliser. Used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** seeded through SplitMix64.
///
/// The stream for simulation run `run` of seed node `node` under base seed
/// `base` is `for_run(base, node, run)`; nothing else feeds the state, so a
/// run reproduces bit-for-bit regardless of which thread executes it or in
/// what order. Satisfies UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) noexcept {
        std::uint64_t z = seed;
        for (auto& word : state_) {
            word = mix64(z);
            z += 0x9E3779B97F4A7C15ULL;
        }
    }

    static RandomStream for_run(std::uint64_t base, std::uint64_t node, std::uint64_t run) noexcept {
        return RandomStream(mix64(mix64(base ^ mix64(node)) ^ run));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

} // namespace sirank
