#pragma once

#include <cstdint>
#include <limits>

namespace adaptid {

/// SplitMix64 stream. The full algorithm, so other implementations can
/// reproduce the same samples:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// The initial state is the seed. uniform() maps the top 53 bits to [0, 1).
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Child stream seeded from this stream's next output. Advances this stream by one draw.
    RngStream fork() noexcept { return RngStream(next_u64()); }

    std::uint64_t seed() const noexcept { return seed_; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept { return next_u64(); }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

/// Seed for sub-stream `index` of `master`: first output of a SplitMix64 stream
/// started at master + (index + 1) * 0x9E3779B97F4A7C15.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

} // namespace adaptid
