#include "setmap/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace setmap {

namespace {

    std::uint32_t integer_sqrt_ceil(std::uint32_t m)
    {
        auto s = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(m)));
        while (s * s < m)
            ++s;
        while (s > 0 && (s - 1) * (s - 1) >= m)
            --s;
        return s;
    }

} // namespace

PaddedPattern pad(const Pattern& p)
{
    if (p.uniformity() != 2)
        throw std::invalid_argument("pad: pattern must be 2-uniform");
    if (p.has_isolated_vertex())
        throw std::invalid_argument("pad: pattern must have no isolated vertices");

    const std::uint32_t n = p.vertex_count();
    const std::uint32_t m = p.edge_count();
    const std::uint32_t s = integer_sqrt_ceil(m);
    const std::uint32_t m_padded = s * s;

    std::vector<Edge> edges = p.edges();
    std::vector<Edge> matching;
    std::uint32_t next_id = n;
    for (std::uint32_t i = 0; i < m_padded - m; ++i) {
        matching.push_back({next_id, next_id + 1});
        edges.push_back(matching.back());
        next_id += 2;
    }
    const std::uint32_t n_loaded = next_id;

    // smallest T >= 1 with s * 2^T >= n_loaded
    std::uint32_t levels = 1;
    while ((static_cast<std::uint64_t>(s) << levels) < n_loaded)
        ++levels;
    const auto n_padded = static_cast<std::uint32_t>(static_cast<std::uint64_t>(s) << levels);

    return PaddedPattern{
        .base = Pattern(2, n_padded, std::move(edges)),
        .original_n = n,
        .added_matching_edges = std::move(matching),
        .added_isolated = n_padded - n_loaded,
        .m_padded = m_padded,
        .n_padded = n_padded,
        .sqrt_m = s,
        .levels = levels,
    };
}

DyadicPlan dyadic_plan(const Pattern& p)
{
    const std::uint32_t n = p.vertex_count();
    const std::uint32_t m = p.edge_count();
    const std::uint32_t s = integer_sqrt_ceil(m);
    if (s * s != m)
        throw std::invalid_argument("dyadic_plan: edge count is not a perfect square");
    std::uint32_t levels = 0;
    while ((static_cast<std::uint64_t>(s) << levels) < n)
        ++levels;
    if (levels == 0 || (static_cast<std::uint64_t>(s) << levels) != n)
        throw std::invalid_argument("dyadic_plan: n / sqrt(m) is not a power of 2 with T >= 1");

    DyadicPlan plan;
    plan.order = degree_order(p);
    plan.m = m;
    plan.n = n;
    plan.sqrt_m = s;
    plan.levels = levels;
    plan.blocks.emplace_back(0u, s);
    for (std::uint32_t j = 1; j <= levels; ++j)
        plan.blocks.emplace_back(s << (j - 1), s << j);

    const auto& deg = p.degrees();
    plan.block_degrees.resize(levels + 1);
    for (std::uint32_t j = 0; j <= levels; ++j) {
        std::uint32_t d = 0;
        for (std::uint32_t pos = plan.blocks[j].first; pos < plan.blocks[j].second; ++pos)
            d = std::max(d, deg[plan.order[pos]]);
        plan.block_degrees[j] = d;
    }
    if (plan.block_degrees[levels] == 0)
        throw std::logic_error("dyadic_plan: top block has no non-isolated vertex");
    return plan;
}

DyadicPlan dyadic_plan(const PaddedPattern& pp)
{
    return dyadic_plan(pp.base);
}

} // namespace setmap
