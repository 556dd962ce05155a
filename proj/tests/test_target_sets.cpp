#include "setmap/combinat.hpp"
#include "setmap/target_sets.hpp"

#include <doctest.h>

#include <numeric>

using namespace setmap;

namespace {

WellLoadedSet full_host(std::uint32_t host, std::uint32_t ell)
{
    WellLoadedSet x;
    x.threshold = static_cast<std::uint64_t>(ell) * host;
    x.loads.assign(host, 0);
    x.members.resize(host);
    std::iota(x.members.begin(), x.members.end(), 0u);
    return x;
}

// a plan over explicit blocks, for synthetic tests
DyadicPlan synthetic_plan(const std::vector<std::uint32_t>& sizes,
                          const std::vector<std::uint32_t>& degrees)
{
    DyadicPlan plan;
    plan.levels = static_cast<std::uint32_t>(sizes.size()) - 1;
    std::uint32_t begin = 0;
    for (const auto s : sizes) {
        plan.blocks.emplace_back(begin, begin + s);
        begin += s;
    }
    plan.n = begin;
    plan.sqrt_m = sizes[0];
    plan.m = sizes[0] * sizes[0];
    plan.block_degrees = degrees;
    plan.order.resize(plan.n);
    std::iota(plan.order.begin(), plan.order.end(), 0u);
    return plan;
}

// dense mapping sending every edge to {host-2, host-1} (or a fallback when
// the edge touches them), so images never meet a low vertex range
SetMapping far_images(std::uint32_t host)
{
    std::vector<std::uint32_t> table(binom(host, 2) * 2);
    for_each_edge(host, 2, [&](std::span<const std::uint32_t> e) {
        std::uint32_t a = host - 2, b = host - 1;
        if (e[1] >= host - 2) { // edge touches the far pair: fall back low
            a = 0;
            while (a == e[0] || a == e[1])
                ++a;
            b = a + 1;
            while (b == e[0] || b == e[1])
                ++b;
        }
        const auto r = edge_rank(e);
        table[2 * r] = a;
        table[2 * r + 1] = b;
    });
    return SetMapping::from_table(host, 2, 2, 0, std::move(table));
}

} // namespace

TEST_CASE("sampled block sizes have the right mean")
{
    // blocks 4,4,8 and |X| = 512: alpha_j = |U_j|/128, E|X'_j| = 4|U_j|
    const DyadicPlan plan = synthetic_plan({4, 4, 8}, {2, 2, 2});
    const WellLoadedSet x = full_host(512, 1);

    double mean0 = 0, mean2 = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const VertexSets primed = sample_partition(x, plan, seed);
        REQUIRE(primed.size() == 3);
        mean0 += static_cast<double>(primed[0].size());
        mean2 += static_cast<double>(primed[2].size());
        // disjointness
        std::vector<bool> seen(512, false);
        for (const auto& s : primed) {
            for (const auto v : s) {
                REQUIRE_FALSE(seen[v]);
                seen[v] = true;
            }
        }
    }
    mean0 /= 200;
    mean2 /= 200;
    CHECK(mean0 == doctest::Approx(16.0).epsilon(0.05));
    CHECK(mean2 == doctest::Approx(32.0).epsilon(0.05));
}

TEST_CASE("sampling requires |X| >= 4n")
{
    const DyadicPlan plan = synthetic_plan({4, 4, 8}, {2, 2, 2}); // n = 16
    CHECK_THROWS_AS(sample_partition(full_host(32, 1), plan, 1), std::invalid_argument);
    CHECK_NOTHROW(sample_partition(full_host(64, 1), plan, 1));
}

TEST_CASE("size window is strict on both sides")
{
    const DyadicPlan plan = synthetic_plan({100}, {1});
    VertexSets primed(1);
    primed[0].resize(401);
    CHECK(check_size_property(primed, plan)); // 390 < 401 < 410
    primed[0].resize(390);
    CHECK_FALSE(check_size_property(primed, plan)); // boundary excluded
    primed[0].resize(410);
    CHECK_FALSE(check_size_property(primed, plan));
}

TEST_CASE("pair counts on hand-built instances")
{
    // all images far away: every count zero
    {
        const SetMapping f = far_images(64);
        const VertexSets primed{{5, 6}, {7}};
        const PairCounts counts = compute_counts(primed, f);
        CHECK(counts.totals[0][0] == 0);
        CHECK(counts.totals[0][1] == 0);
        CHECK(counts.totals[1][1] == 0);
    }

    // f({1,2}) = {3}: image misses X'_0 = {1,2}, so r_00 = 0
    {
        std::vector<std::uint32_t> table(binom(10, 2));
        for_each_edge(10, 2, [&](std::span<const std::uint32_t> e) {
            std::uint32_t w = 9;
            if (e[1] == 9)
                w = e[0] == 8 ? 7 : 8;
            table[edge_rank(e)] = w;
        });
        table[pair_rank(1, 2)] = 3;
        const SetMapping f = SetMapping::from_table(10, 2, 1, 0, std::move(table));
        const VertexSets primed{{1, 2}};
        const PairCounts counts = compute_counts(primed, f);
        CHECK(counts.totals[0][0] == 0);
    }

    // X'_0 = {1,2}, X'_1 = {3,4}, f({1,3}) = {4}, everything else {9}:
    // r_01 = 1 via the pair (1,3); r_1(1) = 1
    {
        std::vector<std::uint32_t> table(binom(10, 2));
        for_each_edge(10, 2, [&](std::span<const std::uint32_t> e) {
            std::uint32_t w = 9;
            if (e[1] == 9)
                w = e[0] == 8 ? 7 : 8;
            table[edge_rank(e)] = w;
        });
        table[pair_rank(1, 3)] = 4;
        const SetMapping f = SetMapping::from_table(10, 2, 1, 0, std::move(table));
        const VertexSets primed{{1, 2}, {3, 4}};
        const PairCounts counts = compute_counts(primed, f);
        CHECK(counts.totals[0][1] == 1);
        CHECK(counts.totals[0][0] == 0);
        CHECK(counts.totals[1][1] == 0);
        CHECK(counts.r_of(0, 0, 1) == 1); // r_1(1)
        CHECK(counts.r_of(0, 1, 1) == 0); // r_1(2)
    }
}

TEST_CASE("ordered pairs are counted in both directions within a block")
{
    // X'_0 = {1,2}, f({1,2}) = {2,...}? use l=1 with image 1: the pair {1,2}
    // has image inside X'_0, so both (1,2) and (2,1) count: r_00 = 2
    std::vector<std::uint32_t> table(binom(8, 2));
    for_each_edge(8, 2, [&](std::span<const std::uint32_t> e) {
        std::uint32_t w = 7;
        if (e[1] == 7)
            w = e[0] == 6 ? 5 : 6;
        table[edge_rank(e)] = w;
    });
    table[pair_rank(1, 2)] = 4; // 4 is in X'_0 below
    const SetMapping f = SetMapping::from_table(8, 2, 1, 0, std::move(table));
    const VertexSets primed{{1, 2, 4}};
    const PairCounts counts = compute_counts(primed, f);
    CHECK(counts.totals[0][0] == 2);
    CHECK(counts.r_of(0, 0, 0) == 1);
    CHECK(counts.r_of(0, 1, 0) == 1);
    CHECK(counts.r_of(0, 2, 0) == 0);

    // consistency: sum_x r_j(x) = r_{i,j}
    std::uint64_t sum = 0;
    for (std::uint32_t idx = 0; idx < 3; ++idx)
        sum += counts.r_of(0, idx, 0);
    CHECK(sum == counts.totals[0][0]);
}

TEST_CASE("pruning removes exactly the vertices over the threshold")
{
    const DyadicPlan plan = synthetic_plan({2, 2}, {2, 2});

    // all counts zero: nothing pruned
    {
        const SetMapping f = far_images(64);
        VertexSets primed{{3, 4}, {10, 11}};
        PairCounts counts = compute_counts(primed, f);
        const TargetSets ts = prune(std::move(primed), std::move(counts), plan);
        CHECK(ts.pruned[0] == std::vector<std::uint32_t>{3, 4});
        CHECK(ts.pruned[1] == std::vector<std::uint32_t>{10, 11});
        for (const auto& bi : ts.bad)
            for (const auto& b : bi)
                CHECK(b.empty());
    }

    // r_0(x) = 1 sends x to B_00
    {
        std::vector<std::uint32_t> table(binom(16, 2));
        for_each_edge(16, 2, [&](std::span<const std::uint32_t> e) {
            std::uint32_t w = 15;
            if (e[1] == 15)
                w = e[0] == 14 ? 13 : 14;
            table[edge_rank(e)] = w;
        });
        table[pair_rank(3, 4)] = 4; // f({3,4}) = {4} subset of X'_0
        const SetMapping f = SetMapping::from_table(16, 2, 1, 0, std::move(table));
        VertexSets primed{{3, 4}, {10, 11}};
        PairCounts counts = compute_counts(primed, f);
        REQUIRE(counts.r_of(0, 0, 0) == 1);
        const TargetSets ts = prune(std::move(primed), std::move(counts), plan);
        CHECK(ts.bad[0][0] == std::vector<std::uint32_t>{3, 4}); // both endpoints count
        CHECK(ts.pruned[0].empty());
    }
}

TEST_CASE("threshold arithmetic: r >= |U_j|/d_j is bad")
{
    // |U_1| = 4, d_1 = 2: threshold 2
    const DyadicPlan plan = synthetic_plan({4, 4}, {2, 2});
    PairCounts counts;
    counts.levels = 1;
    counts.totals.assign(2, std::vector<std::uint64_t>(2, 0));
    counts.per_vertex.assign(2, {});
    counts.per_vertex[0].assign(2 * 2, 0); // two vertices in X'_0
    counts.per_vertex[1] = {};
    counts.per_vertex[0][0 * 2 + 1] = 2; // r_1(first) = 2 >= 4/2: bad
    counts.per_vertex[0][1 * 2 + 1] = 1; // r_1(second) = 1 < 2: keep
    VertexSets primed{{20, 21}, {}};
    const TargetSets ts = prune(std::move(primed), std::move(counts), plan);
    CHECK(ts.bad[0][1] == std::vector<std::uint32_t>{20});
    CHECK(ts.pruned[0] == std::vector<std::uint32_t>{21});
}

TEST_CASE("lemma accounting: bounded counts keep the pruned sets large")
{
    // benign mapping: every r is 0, so |X_i| = |X'_i| >= |X'_i| - |U_i|
    const SetMapping f = far_images(256);
    const DyadicPlan plan = synthetic_plan({4, 4, 8}, {3, 2, 1});
    const WellLoadedSet x = full_host(200, 2); // members 0..199, images at 254/255

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        VertexSets primed = sample_partition(x, plan, seed);
        PairCounts counts = compute_counts(primed, f);
        // premise: r_{i,j} <= |U_i||U_j|^2/(5m) for all i <= j
        bool premise = true;
        for (std::uint32_t i = 0; i <= plan.levels; ++i)
            for (std::uint32_t j = i; j <= plan.levels; ++j)
                if (counts.totals[i][j] * 5 * plan.m >
                    static_cast<std::uint64_t>(plan.block_size(i)) * plan.block_size(j) *
                        plan.block_size(j))
                    premise = false;
        REQUIRE(premise); // far images force zero counts
        const VertexSets primed_copy = primed;
        const TargetSets ts = prune(std::move(primed), std::move(counts), plan);
        for (std::uint32_t i = 0; i <= plan.levels; ++i)
            CHECK(ts.pruned[i].size() + plan.block_size(i) >= primed_copy[i].size());
    }
}
