#include "setmap/pattern.hpp"
#include "setmap/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace setmap;

TEST_CASE("degree order sorts by degree with id tie-break")
{
    // path 0-1-2: degrees 1,2,1
    const Pattern path(2, 3, {{0, 1}, {1, 2}});
    CHECK(degree_order(path) == std::vector<std::uint32_t>{1, 0, 2});

    // all degrees equal: id order
    CHECK(degree_order(gen_clique(3)) == std::vector<std::uint32_t>{0, 1, 2});

    // star center 4, leaves 0..3
    CHECK(degree_order(gen_star(4)) == std::vector<std::uint32_t>{4, 0, 1, 2, 3});
}

TEST_CASE("generators produce the expected shapes")
{
    CHECK(gen_clique(4).edge_count() == 6);

    const Pattern b = gen_complete_bipartite(2, 3);
    CHECK(b.edge_count() == 6);
    std::multiset<std::uint32_t> degs(b.degrees().begin(), b.degrees().end());
    CHECK(degs == std::multiset<std::uint32_t>{2, 2, 2, 3, 3});

    CHECK(gen_path(101).edge_count() == 100);
    CHECK(gen_star(4).degrees()[4] == 4);
}

TEST_CASE("random generator is deterministic and isolated-free")
{
    const Pattern a = gen_random(6, 5, 1);
    const Pattern b = gen_random(6, 5, 1);
    CHECK(a.edges() == b.edges());
    CHECK_FALSE(a.has_isolated_vertex());

    CHECK_THROWS_AS(gen_random(6, 20, 1), std::invalid_argument); // m > C(6,2)

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Pattern g = gen_random(10, 12, seed);
        CHECK(g.edge_count() == 12);
        CHECK_FALSE(g.has_isolated_vertex());
    }
}

TEST_CASE("regular generator hits the degree sequence")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Pattern g = gen_regular(20, 3, seed);
        CHECK(g.edge_count() == 30);
        for (const auto d : g.degrees())
            CHECK(d == 3);
    }
    CHECK_THROWS_AS(gen_regular(5, 3, 0), std::invalid_argument); // odd n*d
}

TEST_CASE("stored degrees always match a recount from the edges")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto n = static_cast<std::uint32_t>(2 + rng.below(11));
        const std::uint64_t lo = (n + 1) / 2;
        const std::uint64_t hi = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        const std::uint64_t m = lo + rng.below(hi - lo + 1);
        const Pattern g = gen_random(n, m, seed);
        std::vector<std::uint32_t> recount(n, 0);
        for (const auto& e : g.edges())
            for (const auto v : e)
                ++recount[v];
        CHECK(recount == g.degrees());
    }
}

TEST_CASE("pattern text round-trips through the canonical form")
{
    const Pattern p = parse_pattern("0 1\n1 2\n");
    CHECK(p.vertex_count() == 3);
    CHECK(p.edge_count() == 2);
    CHECK(p.degrees()[1] == 2);

    const std::string canon = serialize_pattern(p);
    CHECK(serialize_pattern(parse_pattern(canon)) == canon);

    // unsorted and shuffled input normalizes to the same canonical text
    CHECK(serialize_pattern(parse_pattern("2 1\n1 0\n")) == canon);

    // header carries trailing isolated vertices
    const Pattern q = parse_pattern("# k=2 n=5\n0 1\n");
    CHECK(q.vertex_count() == 5);
    CHECK(q.degrees()[4] == 0);
}

TEST_CASE("pattern parse errors")
{
    CHECK_THROWS_AS(parse_pattern("0 0\n"), std::invalid_argument);       // degenerate
    CHECK_THROWS_AS(parse_pattern("0 1\n1 0\n"), std::invalid_argument);  // duplicate
    CHECK_THROWS_AS(parse_pattern("0 x\n"), std::invalid_argument);       // malformed
    CHECK_THROWS_AS(parse_pattern("# k=2 n=2\n0 3\n"), std::invalid_argument); // range
}
