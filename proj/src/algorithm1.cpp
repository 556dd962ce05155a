#include "setmap/algorithm1.hpp"

#include <algorithm>
#include <stdexcept>

namespace setmap {

namespace {

    constexpr std::uint8_t kNoLevel = 0xFF;

} // namespace

Algorithm1Result run_algorithm1(const Pattern& g, const DyadicPlan& plan,
                                const VertexSets& pruned, const SetMapping& f,
                                const VertexSets* primed_for_diagnostics)
{
    if (g.uniformity() != 2)
        throw std::invalid_argument("run_algorithm1: 2-uniform patterns only");
    if (pruned.size() != plan.levels + 1)
        throw std::invalid_argument("run_algorithm1: one vertex set per block required");

    const std::uint32_t n = plan.n;
    const std::uint32_t host = f.host_size();

    std::vector<std::uint32_t> pos_of(n);
    for (std::uint32_t p = 0; p < n; ++p)
        pos_of[plan.order[p]] = p;
    std::vector<std::uint32_t> block_of(n);
    for (std::uint32_t j = 0; j <= plan.levels; ++j)
        for (std::uint32_t p = plan.blocks[j].first; p < plan.blocks[j].second; ++p)
            block_of[p] = j;

    // X_{<= j} membership for rule (c)
    std::vector<std::uint8_t> level(host, kNoLevel);
    for (std::uint32_t j = 0; j < pruned.size(); ++j)
        for (const auto x : pruned[j])
            level[x] = static_cast<std::uint8_t>(j);

    // edges become (b)-forbidden once their later endpoint's block completes
    std::vector<std::vector<std::uint32_t>> edges_done_at(plan.levels + 1);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges()[e];
        edges_done_at[std::max(block_of[pos_of[ed[0]]], block_of[pos_of[ed[1]]])].push_back(e);
    }

    const auto adj = g.adjacency();

    Algorithm1Result result;
    Embedding emb;
    emb.map.assign(n, 0);
    emb.trace.reserve(n);

    std::vector<bool> used(host, false);
    std::vector<bool> forbidden(host, false); // L, for rule (b)
    std::vector<std::uint32_t> img;

    for (std::uint32_t j = 0; j <= plan.levels; ++j) {
        for (std::uint32_t p = plan.blocks[j].first; p < plan.blocks[j].second; ++p) {
            const std::uint32_t u = plan.order[p];
            VertexTrace tr;
            tr.vertex = u;
            tr.block = j;
            tr.candidates = static_cast<std::uint32_t>(pruned[j].size());

            bool have_choice = false;
            std::uint32_t choice = 0;
            for (const auto x : pruned[j]) {
                if (used[x]) {
                    ++tr.rej_injective;
                    continue;
                }
                if (forbidden[x]) {
                    ++tr.rej_forbidden;
                    continue;
                }
                bool hit = false;
                for (const auto v : adj[u]) {
                    if (pos_of[v] >= p)
                        continue;
                    const std::uint32_t pv = emb.map[v];
                    if (pv < x)
                        f.eval_pair(pv, x, img);
                    else
                        f.eval_pair(x, pv, img);
                    for (const auto z : img) {
                        if (level[z] <= j) {
                            hit = true;
                            break;
                        }
                    }
                    if (hit)
                        break;
                }
                if (hit) {
                    ++tr.rej_image_hit;
                    continue;
                }
                ++tr.survivors;
                if (!have_choice) {
                    have_choice = true;
                    choice = x; // smallest survivor: pruned[j] is sorted
                }
            }

            result.totals.injective += tr.rej_injective;
            result.totals.forbidden += tr.rej_forbidden;
            result.totals.image_hit += tr.rej_image_hit;

            if (!have_choice) {
                result.failure = AlgorithmFailure{j, u, p};
                return result;
            }
            tr.chosen = choice;
            emb.map[u] = choice;
            used[choice] = true;
            emb.trace.push_back(tr);
        }

        // block j complete: extend L with the images of its finished edges
        for (const auto e : edges_done_at[j]) {
            const auto& ed = g.edges()[e];
            std::uint32_t a = emb.map[ed[0]], b = emb.map[ed[1]];
            if (a > b)
                std::swap(a, b);
            f.eval_pair(a, b, img);
            for (const auto z : img)
                forbidden[z] = true;
        }
        if (primed_for_diagnostics && j < plan.levels) {
            const auto& next = (*primed_for_diagnostics)[j + 1];
            std::uint64_t cnt = 0;
            for (const auto x : next)
                cnt += forbidden[x] ? 1 : 0;
            result.forbidden_in_next.push_back(cnt);
            result.next_primed_size.push_back(next.size());
        }
    }

    result.embedding = std::move(emb);
    return result;
}

CleanVerdict verify_clean(const Pattern& g, std::span<const std::uint32_t> phi,
                          const SetMapping& f)
{
    if (phi.size() != g.vertex_count())
        throw std::invalid_argument("verify_clean: phi size does not match pattern");
    std::vector<bool> in_image(f.host_size(), false);
    for (const auto x : phi) {
        if (x >= f.host_size())
            throw std::invalid_argument("verify_clean: phi maps outside the host");
        if (in_image[x])
            throw std::invalid_argument("verify_clean: phi is not injective");
        in_image[x] = true;
    }

    std::vector<std::uint32_t> host_edge(g.uniformity());
    std::vector<std::uint32_t> img;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const auto& ed = g.edges()[e];
        for (std::size_t i = 0; i < ed.size(); ++i)
            host_edge[i] = phi[ed[i]];
        std::sort(host_edge.begin(), host_edge.end());
        f.eval_unchecked(host_edge, img);
        for (const auto z : img) {
            if (in_image[z])
                return CleanVerdict{false, CleanVerdict::Violation{e, z}};
        }
    }
    return CleanVerdict{true, std::nullopt};
}

} // namespace setmap
