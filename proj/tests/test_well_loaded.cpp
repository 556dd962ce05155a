#include "setmap/combinat.hpp"
#include "setmap/well_loaded.hpp"

#include <doctest.h>

using namespace setmap;

namespace {

// f(e) = the smallest vertex outside e, as a dense table
SetMapping smallest_outside(std::uint32_t host)
{
    std::vector<std::uint32_t> table(binom(host, 2));
    for_each_edge(host, 2, [&](std::span<const std::uint32_t> e) {
        std::uint32_t w = 0;
        while (w == e[0] || w == e[1])
            ++w;
        table[edge_rank(e)] = w;
    });
    return SetMapping::from_table(host, 2, 1, 0, std::move(table));
}

} // namespace

TEST_CASE("loads of the smallest-outside mapping at N=4")
{
    const WellLoadedSet x = well_loaded(smallest_outside(4));
    CHECK(x.loads == std::vector<std::uint64_t>{3, 2, 1, 0});
    CHECK(x.threshold == 4);
    CHECK(x.members == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("threshold is inclusive at exactly l*N")
{
    // N=5, l=1: make vertex 4 the image of exactly 5 edges (load 5 = lN)
    // and vertex 0 the image of 5 others would exceed the edge budget, so
    // check the boundary on 4 and the plain cases elsewhere.
    std::vector<std::uint32_t> table(binom(5, 2));
    std::uint32_t assigned = 0;
    for_each_edge(5, 2, [&](std::span<const std::uint32_t> e) {
        std::uint32_t w;
        if (e[1] != 4 && assigned < 5) {
            w = 4;
            ++assigned;
        } else {
            w = 0;
            while (w == e[0] || w == e[1])
                ++w;
        }
        table[edge_rank(e)] = w;
    });
    const SetMapping f = SetMapping::from_table(5, 2, 1, 0, std::move(table));
    const WellLoadedSet x = well_loaded(f);
    REQUIRE(x.loads[4] == 5); // exactly the threshold
    CHECK(x.threshold == 5);
    CHECK(std::find(x.members.begin(), x.members.end(), 4u) != x.members.end());
}

TEST_CASE("an overloaded vertex is excluded")
{
    // N=8, l=1, threshold 8: vertex 7 as image of 9 edges, the rest spread
    std::vector<std::uint32_t> table(binom(8, 2));
    std::uint32_t assigned = 0;
    for_each_edge(8, 2, [&](std::span<const std::uint32_t> e) {
        std::uint32_t w;
        if (e[1] != 7 && assigned < 9) {
            w = 7;
            ++assigned;
        } else {
            w = (e[0] + e[1]) % 7; // spread below the threshold
            while (w == e[0] || w == e[1])
                w = (w + 1) % 7;
        }
        table[edge_rank(e)] = w;
    });
    const SetMapping f = SetMapping::from_table(8, 2, 1, 0, std::move(table));
    const WellLoadedSet x = well_loaded(f);
    REQUIRE(x.loads[7] == 9);
    CHECK(std::find(x.members.begin(), x.members.end(), 7u) == x.members.end());
    CHECK(x.members.size() == 7);
}

TEST_CASE("the well-loaded set always exceeds half the host")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SetMapping f = gen_uniform_disjoint(50, 2, 2, seed, Backing::dense);
        const WellLoadedSet x = well_loaded(f);
        CHECK(2 * x.members.size() > 50);

        // exact double count: sum of loads = l * C(N,2)
        std::uint64_t total = 0;
        for (const auto v : x.loads)
            total += v;
        CHECK(total == 2 * binom(50, 2));
    }
}
