#pragma once

#include "setmap/pattern.hpp"

#include <cstdint>
#include <vector>

namespace setmap {

/// Input graph padded so that the edge count is a perfect square and the
/// vertex count is sqrt(m) * 2^T for some T >= 1. Extra edges form a
/// matching on fresh vertices; extra vertices are isolated and appended
/// last, so restricting to the first original_n ids recovers the input.
struct PaddedPattern {
    Pattern base;
    std::uint32_t original_n;
    std::vector<Edge> added_matching_edges;
    std::uint32_t added_isolated;
    std::uint32_t m_padded;
    std::uint32_t n_padded;
    std::uint32_t sqrt_m;
    std::uint32_t levels; // T
};

/// Degree order and dyadic blocks of a padded graph. blocks[j] is the
/// half-open range of positions in `order` forming U_j:
/// |U_0| = sqrt(m), |U_j| = 2^(j-1) sqrt(m) for j >= 1.
struct DyadicPlan {
    std::vector<std::uint32_t> order;               // u_1..u_n as vertex ids
    std::vector<std::pair<std::uint32_t, std::uint32_t>> blocks;
    std::vector<std::uint32_t> block_degrees;       // d_j = max degree in U_j
    std::uint32_t m = 0;
    std::uint32_t n = 0;
    std::uint32_t sqrt_m = 0;
    std::uint32_t levels = 0; // T

    std::uint32_t block_size(std::uint32_t j) const noexcept
    {
        return blocks[j].second - blocks[j].first;
    }
};

/// Pad a 2-uniform graph with no isolated vertices per the reduction above.
/// Idempotent on already-conforming inputs.
PaddedPattern pad(const Pattern& p);

DyadicPlan dyadic_plan(const PaddedPattern& pp);

/// Plan over an explicit graph that already conforms (perfect-square m,
/// n = sqrt(m) * 2^T). Used by tests and by callers that pad by hand.
DyadicPlan dyadic_plan(const Pattern& p);

} // namespace setmap
