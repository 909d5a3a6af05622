#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace etsynth {

/// Seeded random stream with distribution mappings that are identical on every
/// standard library (std::uniform_*_distribution is implementation-defined).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [lo, hi], unbiased (rejection sampling).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform real in [lo, hi) with 53 bits of resolution.
    double uniform_real(double lo, double hi);

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n);

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable per-case seed from a global seed and a case identifier.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view case_id) noexcept;

/// Fisher-Yates shuffle driven by a RandomStream.
template <typename Range>
void shuffle(Range& range, RandomStream& rng)
{
    using std::swap;
    const std::size_t n = std::size(range);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.index(i);
        swap(range[i - 1], range[j]);
    }
}

}  // namespace etsynth
