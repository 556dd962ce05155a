#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace setmap {

/// C(n, k), saturating at uint64 max.
inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) noexcept
{
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

/// Colexicographic rank of a sorted k-subset; the dense-table index.
inline std::uint64_t edge_rank(std::span<const std::uint32_t> edge) noexcept
{
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < edge.size(); ++i)
        r += binom(edge[i], i + 1);
    return r;
}

/// Fast path for pairs {u, v} with u < v.
constexpr std::uint64_t pair_rank(std::uint32_t u, std::uint32_t v) noexcept
{
    return static_cast<std::uint64_t>(v) * (v - 1) / 2 + u;
}

/// Visit all sorted k-subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_edge(std::uint32_t n, std::uint32_t k, F&& fn)
{
    if (k > n)
        return;
    std::vector<std::uint32_t> c(k);
    for (std::uint32_t i = 0; i < k; ++i)
        c[i] = i;
    while (true) {
        fn(std::span<const std::uint32_t>(c));
        // advance odometer
        std::uint32_t i = k;
        while (i > 0 && c[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return;
        ++c[i - 1];
        for (std::uint32_t j = i; j < k; ++j)
            c[j] = c[j - 1] + 1;
    }
}

} // namespace setmap
