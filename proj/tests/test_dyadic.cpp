#include "setmap/dyadic.hpp"
#include "setmap/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace setmap;

namespace {

void check_padding_invariants(const Pattern& g, const PaddedPattern& pp)
{
    const std::uint32_t s = pp.sqrt_m;
    CHECK(s * s == pp.m_padded);
    CHECK(pp.n_padded == (s << pp.levels));
    CHECK(pp.levels >= 1);
    CHECK(pp.n_padded <= 4 * pp.m_padded);
    CHECK(pp.base.edge_count() == pp.m_padded);
    CHECK(pp.base.vertex_count() == pp.n_padded);

    // strictly less than half the padded vertices are isolated
    std::uint32_t isolated = 0;
    for (const auto d : pp.base.degrees())
        isolated += d == 0 ? 1 : 0;
    CHECK(isolated == pp.added_isolated);
    CHECK(2 * isolated < pp.n_padded);

    // the original graph sits untouched inside the padded one
    std::vector<Edge> original;
    for (const auto& e : pp.base.edges())
        if (e[0] < pp.original_n && e[1] < pp.original_n)
            original.push_back(e);
    CHECK(original == g.edges());

    // padding edges form a matching on fresh ids
    std::vector<std::uint32_t> seen;
    for (const auto& e : pp.added_matching_edges) {
        CHECK(e[0] >= pp.original_n);
        seen.push_back(e[0]);
        seen.push_back(e[1]);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

} // namespace

TEST_CASE("padding K_3 per the reduction recipe")
{
    const PaddedPattern pp = pad(gen_clique(3));
    CHECK(pp.m_padded == 4);
    CHECK(pp.added_matching_edges == std::vector<Edge>{{3, 4}});
    CHECK(pp.n_padded == 8);
    CHECK(pp.added_isolated == 3);
    CHECK(pp.levels == 2);
    check_padding_invariants(gen_clique(3), pp);
}

TEST_CASE("padding is idempotent on conforming inputs")
{
    // m=16 perfect square, n=8 = 4*2: nothing to add
    const Pattern g = gen_random(8, 16, 3);
    const PaddedPattern pp = pad(g);
    CHECK(pp.m_padded == 16);
    CHECK(pp.n_padded == 8);
    CHECK(pp.added_matching_edges.empty());
    CHECK(pp.added_isolated == 0);
    CHECK(pp.levels == 1);
}

TEST_CASE("padding a single edge")
{
    const Pattern g(2, 2, {{0, 1}});
    const PaddedPattern pp = pad(g);
    CHECK(pp.m_padded == 1);
    CHECK(pp.n_padded == 2);
    CHECK(pp.levels == 1);
    check_padding_invariants(g, pp);
}

TEST_CASE("pad rejects bad inputs")
{
    CHECK_THROWS_AS(pad(Pattern(2, 3, {{0, 1}})), std::invalid_argument); // isolated vertex
    CHECK_THROWS_AS(pad(Pattern(3, 4, {{0, 1, 2}, {1, 2, 3}})), std::invalid_argument);
}

TEST_CASE("dyadic block sizes follow the doubling rule")
{
    // m=16, n=16: |U_0|=4, |U_1|=4, |U_2|=8
    const Pattern g = gen_random(16, 16, 11);
    const DyadicPlan plan = dyadic_plan(g);
    CHECK(plan.levels == 2);
    CHECK(plan.block_size(0) == 4);
    CHECK(plan.block_size(1) == 4);
    CHECK(plan.block_size(2) == 8);

    const PaddedPattern k3 = pad(gen_clique(3));
    const DyadicPlan p3 = dyadic_plan(k3);
    CHECK(p3.block_size(0) == 2);
    CHECK(p3.block_size(1) == 2);
    CHECK(p3.block_size(2) == 4);
}

TEST_CASE("a perfect matching gives unit block degrees")
{
    // 16 disjoint edges on 32 vertices: conforming as-is (sqrt(16)=4, 32=4*2^3)
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < 16; ++i)
        edges.push_back({2 * i, 2 * i + 1});
    const Pattern g(2, 32, std::move(edges));
    const DyadicPlan plan = dyadic_plan(g);
    CHECK(plan.levels == 3);
    std::uint64_t weighted = 0;
    for (std::uint32_t j = 1; j <= plan.levels; ++j) {
        CHECK(plan.block_degrees[j] == 1);
        weighted += static_cast<std::uint64_t>(plan.block_degrees[j]) * plan.block_size(j);
    }
    CHECK(weighted == 4 + 8 + 16);
    CHECK(weighted <= 4ull * plan.m);
}

TEST_CASE("padding and plan invariants hold for 1000 random patterns")
{
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(absorb(seed, 0xfa22));
        const auto n = static_cast<std::uint32_t>(2 + rng.below(19));
        const std::uint64_t lo = (n + 1) / 2;
        const std::uint64_t hi = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        const std::uint64_t m = lo + rng.below(hi - lo + 1);
        const Pattern g = gen_random(n, m, seed);
        const PaddedPattern pp = pad(g);
        check_padding_invariants(g, pp);

        const DyadicPlan plan = dyadic_plan(pp);
        // blocks partition the order; sizes double
        CHECK(plan.blocks.front().first == 0);
        CHECK(plan.blocks.back().second == plan.n);
        CHECK(plan.block_size(0) == plan.sqrt_m);
        for (std::uint32_t j = 1; j <= plan.levels; ++j)
            CHECK(plan.block_size(j) == (plan.sqrt_m << (j - 1)));

        // d_0 >= d_1 >= ... >= d_T > 0
        for (std::uint32_t j = 1; j <= plan.levels; ++j)
            CHECK(plan.block_degrees[j - 1] >= plan.block_degrees[j]);
        CHECK(plan.block_degrees[plan.levels] > 0);

        // monotonicity: every u in U_{j-1} has d(u) >= d_j
        const auto& deg = pp.base.degrees();
        for (std::uint32_t j = 1; j <= plan.levels; ++j)
            for (std::uint32_t pos = plan.blocks[j - 1].first; pos < plan.blocks[j - 1].second;
                 ++pos)
                CHECK(deg[plan.order[pos]] >= plan.block_degrees[j]);

        // weighted degree sum: sum_j d_j |U_j| <= 4m
        std::uint64_t weighted = 0;
        for (std::uint32_t j = 1; j <= plan.levels; ++j)
            weighted += static_cast<std::uint64_t>(plan.block_degrees[j]) * plan.block_size(j);
        CHECK(weighted <= 4ull * plan.m);
    }
}
