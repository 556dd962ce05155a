#include "setmap/pattern.hpp"

#include "setmap/combinat.hpp"
#include "setmap/rng.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace setmap {

Pattern::Pattern(std::uint32_t k, std::uint32_t n, std::vector<Edge> edges)
    : k_(k), n_(n), edges_(std::move(edges))
{
    if (k_ < 2)
        throw std::invalid_argument("pattern uniformity must be at least 2");
    for (auto& e : edges_) {
        if (e.size() != k_)
            throw std::invalid_argument("edge has wrong number of vertices");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw std::invalid_argument("degenerate edge (repeated vertex)");
        if (e.back() >= n_)
            throw std::invalid_argument("edge vertex out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("duplicate edge");
    degrees_.assign(n_, 0);
    for (const auto& e : edges_)
        for (const auto v : e)
            ++degrees_[v];
}

std::uint32_t Pattern::max_degree() const noexcept
{
    std::uint32_t d = 0;
    for (const auto x : degrees_)
        d = std::max(d, x);
    return d;
}

bool Pattern::has_isolated_vertex() const noexcept
{
    return std::find(degrees_.begin(), degrees_.end(), 0u) != degrees_.end();
}

std::vector<std::vector<std::uint32_t>> Pattern::adjacency() const
{
    if (k_ != 2)
        throw std::logic_error("adjacency lists require a 2-uniform pattern");
    std::vector<std::vector<std::uint32_t>> adj(n_);
    for (const auto& e : edges_) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    return adj;
}

std::vector<std::uint32_t> degree_order(const Pattern& p)
{
    std::vector<std::uint32_t> order(p.vertex_count());
    std::iota(order.begin(), order.end(), 0u);
    const auto& deg = p.degrees();
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
    });
    return order;
}

Pattern gen_clique(std::uint32_t n)
{
    if (n < 2)
        throw std::invalid_argument("clique needs at least 2 vertices");
    std::vector<Edge> edges;
    for (std::uint32_t v = 1; v < n; ++v)
        for (std::uint32_t u = 0; u < v; ++u)
            edges.push_back({u, v});
    return Pattern(2, n, std::move(edges));
}

Pattern gen_path(std::uint32_t n)
{
    if (n < 2)
        throw std::invalid_argument("path needs at least 2 vertices");
    std::vector<Edge> edges;
    for (std::uint32_t v = 0; v + 1 < n; ++v)
        edges.push_back({v, v + 1});
    return Pattern(2, n, std::move(edges));
}

Pattern gen_star(std::uint32_t leaves)
{
    if (leaves < 1)
        throw std::invalid_argument("star needs at least 1 leaf");
    std::vector<Edge> edges;
    for (std::uint32_t v = 0; v < leaves; ++v)
        edges.push_back({v, leaves});
    return Pattern(2, leaves + 1, std::move(edges));
}

Pattern gen_complete_bipartite(std::uint32_t a, std::uint32_t b)
{
    if (a < 1 || b < 1)
        throw std::invalid_argument("bipartite sides must be nonempty");
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < a; ++u)
        for (std::uint32_t v = 0; v < b; ++v)
            edges.push_back({u, a + v});
    return Pattern(2, a + b, std::move(edges));
}

Pattern gen_random(std::uint32_t n, std::uint64_t m, std::uint64_t seed)
{
    const std::uint64_t all = binom(n, 2);
    if (n < 2 || m < 1 || m > all)
        throw std::invalid_argument("random graph: m out of range");
    if (m < (n + 1) / 2)
        throw std::invalid_argument("random graph: too few edges to avoid isolated vertices");

    Rng rng(absorb(seed, 0x67726170)); // "grap"
    std::vector<std::uint32_t> ranks;
    std::vector<std::uint32_t> cover(n);
    for (std::uint32_t attempt = 0; attempt < 10000; ++attempt) {
        ranks.clear();
        sample_distinct(rng, all, static_cast<std::uint32_t>(m), ranks);
        std::fill(cover.begin(), cover.end(), 0u);
        std::vector<Edge> edges;
        edges.reserve(m);
        for (const auto r : ranks) {
            // invert pair_rank: largest v with v(v-1)/2 <= r
            auto v = static_cast<std::uint32_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(r))) / 2.0);
            while (pair_rank(0, v) > r)
                --v;
            while (pair_rank(0, v + 1) <= r)
                ++v;
            const auto u = static_cast<std::uint32_t>(r - pair_rank(0, v));
            edges.push_back({u, v});
            ++cover[u];
            ++cover[v];
        }
        if (std::find(cover.begin(), cover.end(), 0u) == cover.end())
            return Pattern(2, n, std::move(edges));
    }
    throw std::runtime_error("random graph: could not avoid isolated vertices (m too small?)");
}

Pattern gen_regular(std::uint32_t n, std::uint32_t d, std::uint64_t seed)
{
    if (d < 1 || d >= n)
        throw std::invalid_argument("regular graph: need 1 <= d < n");
    if ((static_cast<std::uint64_t>(n) * d) % 2 != 0)
        throw std::invalid_argument("regular graph: n*d must be even");

    Rng rng(absorb(seed, 0x72656775)); // "regu"
    const std::uint64_t points = static_cast<std::uint64_t>(n) * d;
    std::vector<std::uint32_t> stubs(points);
    for (std::uint64_t i = 0; i < points; ++i)
        stubs[i] = static_cast<std::uint32_t>(i / d);

    for (std::uint32_t attempt = 0; attempt < 10000; ++attempt) {
        // Fisher-Yates over the stub multiset
        for (std::uint64_t i = points - 1; i > 0; --i) {
            const std::uint64_t j = rng.below(i + 1);
            std::swap(stubs[i], stubs[j]);
        }
        std::vector<Edge> edges;
        edges.reserve(points / 2);
        bool ok = true;
        for (std::uint64_t i = 0; i + 1 < points; i += 2) {
            std::uint32_t a = stubs[i], b = stubs[i + 1];
            if (a == b) {
                ok = false;
                break;
            }
            if (a > b)
                std::swap(a, b);
            edges.push_back({a, b});
        }
        if (!ok)
            continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            continue;
        return Pattern(2, n, std::move(edges));
    }
    throw std::runtime_error("regular graph: pairing model failed to produce a simple graph");
}

namespace {

    std::vector<std::uint32_t> parse_int_line(const std::string& line, std::size_t lineno)
    {
        std::vector<std::uint32_t> vals;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t'))
                ++p;
            if (p == end)
                break;
            std::uint32_t v = 0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc())
                throw std::invalid_argument("pattern file line " + std::to_string(lineno) +
                                            ": malformed vertex id");
            vals.push_back(v);
            p = next;
        }
        return vals;
    }

} // namespace

Pattern parse_pattern(std::string_view text)
{
    std::uint32_t header_k = 0, header_n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::uint32_t max_id = 0;
    bool any_vertex = false;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#') {
            // header comment of the form "# k=K n=N"
            std::uint32_t k = 0, n = 0;
            if (std::sscanf(line.c_str() + first, "# k=%u n=%u", &k, &n) == 2) {
                header_k = k;
                header_n = n;
                have_header = true;
            }
            continue;
        }
        auto vals = parse_int_line(line, lineno);
        if (vals.empty())
            continue;
        if (have_header && vals.size() != header_k)
            throw std::invalid_argument("pattern file line " + std::to_string(lineno) +
                                        ": edge arity does not match header");
        for (const auto v : vals)
            max_id = std::max(max_id, v);
        any_vertex = true;
        edges.push_back(std::move(vals));
    }
    if (edges.empty() && !have_header)
        throw std::invalid_argument("pattern file: no edges and no header");

    const std::uint32_t k = have_header ? header_k : static_cast<std::uint32_t>(edges.front().size());
    const std::uint32_t n = have_header ? header_n : (any_vertex ? max_id + 1 : 0);
    return Pattern(k, n, std::move(edges)); // constructor validates ranges and duplicates
}

std::string serialize_pattern(const Pattern& p)
{
    std::ostringstream out;
    out << "# k=" << p.uniformity() << " n=" << p.vertex_count() << "\n";
    for (const auto& e : p.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            out << (i ? " " : "") << e[i];
        out << "\n";
    }
    return out.str();
}

} // namespace setmap
