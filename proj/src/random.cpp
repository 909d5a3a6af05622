#include "etsynth/random.hpp"

#include <limits>

#include "etsynth/errors.hpp"

namespace etsynth {

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi)
{
    if (lo > hi)
        throw ValidationError("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max())
        return static_cast<std::int64_t>(next_u64());
    const std::uint64_t n = span + 1;
    // reject the top partial bucket so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v % n);
}

double RandomStream::uniform_real(double lo, double hi)
{
    const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

std::size_t RandomStream::index(std::size_t n)
{
    if (n == 0)
        throw ValidationError("index: empty range");
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n - 1)));
}

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view case_id) noexcept
{
    // FNV-1a over the id, then mixed with the global seed
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : case_id) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(mix64(global_seed) ^ h);
}

}  // namespace etsynth
