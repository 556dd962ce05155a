#pragma once

// Test-side reference implementations, kept deliberately independent of the
// library's pruned searches: plain enumeration over injective tuples with
// the definitions checked in full.

#include "setmap/mapping.hpp"
#include "setmap/pattern.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace setmap::testing {

inline bool is_clean(const Pattern& p, const std::vector<std::uint32_t>& phi,
                     const SetMapping& f)
{
    std::vector<std::uint32_t> host_edge(p.uniformity());
    std::vector<std::uint32_t> img;
    for (const auto& e : p.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            host_edge[i] = phi[e[i]];
        std::sort(host_edge.begin(), host_edge.end());
        f.eval_unchecked(host_edge, img);
        for (const auto z : img)
            for (const auto v : phi)
                if (z == v)
                    return false;
    }
    return true;
}

inline bool is_f_free(const Pattern& p, const std::vector<std::uint32_t>& phi,
                      const SetMapping& f)
{
    std::vector<std::vector<std::uint32_t>> copy_edges;
    for (const auto& e : p.edges()) {
        std::vector<std::uint32_t> he{phi[e[0]], phi[e[1]]};
        std::sort(he.begin(), he.end());
        copy_edges.push_back(he);
    }
    std::vector<std::uint32_t> img;
    for (const auto& he : copy_edges) {
        f.eval_unchecked(he, img); // sorted l=2 image, read as a host edge
        if (std::find(copy_edges.begin(), copy_edges.end(), img) != copy_edges.end())
            return false;
    }
    return true;
}

/// All injective tuples (phi(u_1),...,phi(u_n)) over the degree order, in
/// lexicographic order; the first tuple passing `accept` wins.
template <typename Accept>
std::optional<std::vector<std::uint32_t>> first_injective(const Pattern& p, std::uint32_t host,
                                                          Accept&& accept)
{
    const auto order = degree_order(p);
    const std::uint32_t n = p.vertex_count();
    std::vector<std::uint32_t> phi(n, 0);
    std::vector<bool> used(host, false);

    // depth-first odometer; no pruning beyond injectivity
    std::vector<std::uint32_t> choice(n, 0);
    std::uint32_t depth = 0;
    while (true) {
        if (choice[depth] >= host) {
            if (depth == 0)
                return std::nullopt;
            choice[depth] = 0;
            --depth;
            used[phi[order[depth]]] = false;
            ++choice[depth];
            continue;
        }
        const std::uint32_t x = choice[depth];
        if (used[x]) {
            ++choice[depth];
            continue;
        }
        phi[order[depth]] = x;
        if (depth + 1 == n) {
            if (accept(phi))
                return phi;
            ++choice[depth];
            continue;
        }
        used[x] = true;
        ++depth;
    }
}

inline std::optional<std::vector<std::uint32_t>>
naive_find_clean_copy(const Pattern& p, const SetMapping& f, std::uint32_t host)
{
    return first_injective(p, host,
                           [&](const std::vector<std::uint32_t>& phi) { return is_clean(p, phi, f); });
}

inline std::optional<std::vector<std::uint32_t>>
naive_find_f_free_copy(const Pattern& p, const SetMapping& f, std::uint32_t host)
{
    return first_injective(p, host, [&](const std::vector<std::uint32_t>& phi) {
        return is_f_free(p, phi, f);
    });
}

/// Every labeled pattern on exactly n vertices with no isolated vertex,
/// for n = 2..n_max (46 of them for n_max = 4).
inline std::vector<Pattern> all_patterns_up_to(std::uint32_t n_max)
{
    std::vector<Pattern> out;
    for (std::uint32_t n = 2; n <= n_max; ++n) {
        std::vector<Edge> all;
        for (std::uint32_t v = 1; v < n; ++v)
            for (std::uint32_t u = 0; u < v; ++u)
                all.push_back({u, v});
        const std::uint32_t total = static_cast<std::uint32_t>(all.size());
        for (std::uint32_t mask = 1; mask < (1u << total); ++mask) {
            std::vector<Edge> edges;
            std::vector<std::uint32_t> cover(n, 0);
            for (std::uint32_t i = 0; i < total; ++i) {
                if (mask & (1u << i)) {
                    edges.push_back(all[i]);
                    ++cover[all[i][0]];
                    ++cover[all[i][1]];
                }
            }
            if (std::find(cover.begin(), cover.end(), 0u) == cover.end())
                out.emplace_back(2, n, std::move(edges));
        }
    }
    return out;
}

} // namespace setmap::testing
