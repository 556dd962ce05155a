#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace setmap {

// splitmix64 finalizer; bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Fold a value into a running key. Chains of absorb() key the per-edge
/// evaluation streams and all derived seeds.
constexpr std::uint64_t absorb(std::uint64_t key, std::uint64_t v) noexcept
{
    return mix64((key + kGolden) ^ v);
}

/// Sub-seed for trial `index` of a seeded run: seed XOR index, mixed.
/// This is the documented split scheme; parallel trial execution relies
/// on it being independent of evaluation order.
constexpr std::uint64_t subseed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return mix64(seed ^ index);
}

/// Deterministic 64-bit stream (splitmix64). Identical sequences on every
/// platform; never backed by std::random facilities so that reports stay
/// byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept
    {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform in {0..n-1}, n >= 1. Multiply-shift with rejection, exact.
    std::uint64_t below(std::uint64_t n) noexcept
    {
        std::uint64_t x = next();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                x = next();
                m = static_cast<unsigned __int128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

/// Floyd's subset sampling: append `count` distinct values from
/// {0..universe-1} to `out` (order of appearance, not sorted).
inline void sample_distinct(Rng& rng, std::uint64_t universe, std::uint32_t count,
                            std::vector<std::uint32_t>& out)
{
    const std::size_t base = out.size();
    for (std::uint64_t j = universe - count; j < universe; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        bool seen = false;
        for (std::size_t i = base; i < out.size(); ++i) {
            if (out[i] == t) {
                seen = true;
                break;
            }
        }
        out.push_back(static_cast<std::uint32_t>(seen ? j : t));
    }
}

/// r-th element of {0,1,...} \ excluded, with excluded sorted ascending.
inline std::uint32_t nth_outside(std::uint64_t r, std::span<const std::uint32_t> excluded) noexcept
{
    auto v = static_cast<std::uint32_t>(r);
    for (const std::uint32_t x : excluded) {
        if (v >= x)
            ++v;
        else
            break;
    }
    return v;
}

} // namespace setmap
