#include "setmap/oracle.hpp"

#include "setmap/combinat.hpp"
#include "setmap/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <bitset>
#include <stdexcept>

namespace setmap {

namespace {

    constexpr std::uint32_t kMaskHostCap = 32; // vertex sets as uint32 masks
    using EdgeBits = std::bitset<kMaskHostCap*(kMaskHostCap - 1) / 2>;

    void check_limits(const Pattern& p, const SetMapping& f, std::uint32_t host,
                      const SearchLimits& limits)
    {
        if (p.uniformity() != 2 || f.arity() != 2)
            throw std::invalid_argument("oracle: 2-uniform patterns and mappings only");
        if (host < p.vertex_count())
            throw std::invalid_argument("oracle: host smaller than the pattern");
        if (host > f.host_size())
            throw std::invalid_argument("oracle: host exceeds the mapping's domain");
        if (p.vertex_count() > limits.max_pattern_vertices || host > limits.max_host)
            throw std::invalid_argument("oracle: exhaustive limits exceeded (raise them explicitly)");
        if (host > kMaskHostCap)
            throw std::invalid_argument("oracle: mask implementation caps the host at 32");
    }

    struct PairTables {
        std::vector<std::uint32_t> image_mask; // image vertices < host, by pair rank
        std::vector<std::uint32_t> image_a, image_b; // the l = 2 image as an edge
    };

    PairTables materialize(const SetMapping& f, std::uint32_t host, bool as_edges)
    {
        PairTables t;
        const auto pairs = static_cast<std::size_t>(binom(host, 2));
        t.image_mask.assign(pairs, 0);
        if (as_edges) {
            t.image_a.assign(pairs, 0);
            t.image_b.assign(pairs, 0);
        }
        std::vector<std::uint32_t> img;
        for (std::uint32_t v = 1; v < host; ++v) {
            for (std::uint32_t u = 0; u < v; ++u) {
                const auto r = static_cast<std::size_t>(pair_rank(u, v));
                f.eval_pair(u, v, img);
                std::uint32_t mask = 0;
                for (const auto z : img)
                    if (z < host)
                        mask |= 1u << z;
                t.image_mask[r] = mask;
                if (as_edges) {
                    t.image_a[r] = img[0];
                    t.image_b[r] = img[1];
                }
            }
        }
        return t;
    }

    struct CleanSearch {
        const std::vector<std::vector<std::uint32_t>>& adj;
        const std::vector<std::uint32_t>& order;
        const std::vector<std::uint32_t>& pos_of;
        const PairTables& tables;
        std::uint32_t host;
        std::vector<std::uint32_t> phi; // by vertex id
        std::uint32_t used_mask = 0;
        std::uint32_t dirty_mask = 0; // union of placed edges' images
        SearchStats stats;

        bool place(std::uint32_t t)
        {
            if (t == order.size())
                return true;
            const std::uint32_t u = order[t];
            for (std::uint32_t x = 0; x < host; ++x) {
                ++stats.nodes;
                if ((used_mask | dirty_mask) & (1u << x))
                    continue;
                bool ok = true;
                std::uint32_t new_dirty = 0;
                for (const auto v : adj[u]) {
                    if (pos_of[v] >= t)
                        continue;
                    const std::uint32_t a = std::min(phi[v], x);
                    const std::uint32_t b = std::max(phi[v], x);
                    const std::uint32_t mask =
                        tables.image_mask[static_cast<std::size_t>(pair_rank(a, b))];
                    // a fresh edge's image may not touch the copy built so far
                    if (mask & (used_mask | (1u << x))) {
                        ok = false;
                        break;
                    }
                    new_dirty |= mask;
                }
                if (!ok)
                    continue;
                phi[u] = x;
                const std::uint32_t saved_dirty = dirty_mask;
                used_mask |= 1u << x;
                dirty_mask |= new_dirty;
                if (place(t + 1))
                    return true;
                used_mask &= ~(1u << x);
                dirty_mask = saved_dirty;
            }
            return false;
        }
    };

} // namespace

std::optional<std::vector<std::uint32_t>>
find_clean_copy(const Pattern& p, const SetMapping& f, std::uint32_t host,
                SearchStats* stats, const SearchLimits& limits)
{
    check_limits(p, f, host, limits);
    const auto tables = materialize(f, host, false);
    const auto order = degree_order(p);
    const auto adj = p.adjacency();
    std::vector<std::uint32_t> pos_of(p.vertex_count());
    for (std::uint32_t t = 0; t < order.size(); ++t)
        pos_of[order[t]] = t;

    CleanSearch search{adj, order, pos_of, tables, host,
                       std::vector<std::uint32_t>(p.vertex_count(), 0)};
    const bool found = search.place(0);
    if (stats)
        *stats = search.stats;
    if (!found)
        return std::nullopt;
    return search.phi;
}

namespace {

    struct FreeSearch {
        const std::vector<std::vector<std::uint32_t>>& adj;
        const std::vector<std::uint32_t>& order;
        const std::vector<std::uint32_t>& pos_of;
        const PairTables& tables;
        std::uint32_t host;
        std::vector<std::uint32_t> phi;
        std::uint32_t used_mask = 0;
        EdgeBits placed_edges;
        EdgeBits placed_images; // image edges of placed copy edges (within host)
        SearchStats stats;

        bool image_is_host_edge(std::size_t r) const
        {
            return tables.image_a[r] < host && tables.image_b[r] < host;
        }

        bool place(std::uint32_t t)
        {
            if (t == order.size())
                return true;
            const std::uint32_t u = order[t];
            std::vector<std::size_t> new_ranks;
            for (std::uint32_t x = 0; x < host; ++x) {
                if (used_mask & (1u << x))
                    continue;
                ++stats.nodes;
                new_ranks.clear();
                for (const auto v : adj[u]) {
                    if (pos_of[v] >= t)
                        continue;
                    const std::uint32_t a = std::min(phi[v], x);
                    const std::uint32_t b = std::max(phi[v], x);
                    new_ranks.push_back(static_cast<std::size_t>(pair_rank(a, b)));
                }
                bool ok = true;
                for (const auto r : new_ranks) {
                    // a placed edge already maps onto this new copy edge
                    if (placed_images.test(r)) {
                        ok = false;
                        break;
                    }
                    // the new edge's own image must avoid the copy
                    if (image_is_host_edge(r)) {
                        const auto ir = static_cast<std::size_t>(
                            pair_rank(tables.image_a[r], tables.image_b[r]));
                        if (placed_edges.test(ir) ||
                            std::find(new_ranks.begin(), new_ranks.end(), ir) != new_ranks.end()) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok)
                    continue;

                phi[u] = x;
                used_mask |= 1u << x;
                for (const auto r : new_ranks) {
                    placed_edges.set(r);
                    if (image_is_host_edge(r))
                        placed_images.set(
                            static_cast<std::size_t>(pair_rank(tables.image_a[r], tables.image_b[r])));
                }
                if (place(t + 1))
                    return true;
                used_mask &= ~(1u << x);
                for (const auto r : new_ranks) {
                    placed_edges.reset(r);
                    if (image_is_host_edge(r)) {
                        const auto ir = static_cast<std::size_t>(
                            pair_rank(tables.image_a[r], tables.image_b[r]));
                        // recompute: another placed edge might share this image
                        bool still = false;
                        for (std::size_t rr = 0; rr < placed_edges.size() && !still; ++rr)
                            if (placed_edges.test(rr) && image_is_host_edge(rr) &&
                                pair_rank(tables.image_a[rr], tables.image_b[rr]) == ir)
                                still = true;
                        if (!still)
                            placed_images.reset(ir);
                    }
                }
            }
            return false;
        }
    };

} // namespace

std::optional<std::vector<std::uint32_t>>
find_f_free_copy(const Pattern& p, const SetMapping& f, std::uint32_t host,
                 SearchStats* stats, const SearchLimits& limits)
{
    check_limits(p, f, host, limits);
    if (f.image_size() != 2)
        throw std::invalid_argument("find_f_free_copy: images must be host edges (l = 2)");
    const auto tables = materialize(f, host, true);
    const auto order = degree_order(p);
    const auto adj = p.adjacency();
    std::vector<std::uint32_t> pos_of(p.vertex_count());
    for (std::uint32_t t = 0; t < order.size(); ++t)
        pos_of[order[t]] = t;

    FreeSearch search{adj, order, pos_of, tables, host,
                      std::vector<std::uint32_t>(p.vertex_count(), 0)};
    const bool found = search.place(0);
    if (stats)
        *stats = search.stats;
    if (!found)
        return std::nullopt;
    return search.phi;
}

const char* bound_kind_name(BoundKind kind) noexcept
{
    switch (kind) {
    case BoundKind::w_lower: return "w";
    case BoundKind::g0_lower: return "g0";
    case BoundKind::g1_lower: return "g1";
    }
    return "?";
}

BoundKind bound_kind_from_name(const std::string& name)
{
    if (name == "w")
        return BoundKind::w_lower;
    if (name == "g0")
        return BoundKind::g0_lower;
    if (name == "g1")
        return BoundKind::g1_lower;
    throw std::invalid_argument("unknown bound kind: " + name);
}

namespace {

    SetMapping generator_for(BoundKind kind, std::uint32_t host, std::uint32_t image_size,
                             std::uint64_t trial_seed)
    {
        switch (kind) {
        case BoundKind::w_lower:
            return gen_uniform_disjoint(host, 2, image_size, trial_seed, Backing::dense);
        case BoundKind::g0_lower:
            return gen_random_disjoint_edge(host, trial_seed, Backing::dense);
        case BoundKind::g1_lower:
            return gen_random_incident_edge(host, trial_seed, Backing::dense);
        }
        throw std::logic_error("unreachable");
    }

    std::optional<std::vector<std::uint32_t>> run_search(BoundKind kind, const Pattern& p,
                                                         const SetMapping& f, std::uint32_t host,
                                                         SearchStats* stats,
                                                         const SearchLimits& limits)
    {
        if (kind == BoundKind::w_lower)
            return find_clean_copy(p, f, host, stats, limits);
        return find_f_free_copy(p, f, host, stats, limits);
    }

} // namespace

std::optional<Certificate>
certify_lower_bound(const Pattern& p, std::uint32_t host, BoundKind kind,
                    std::uint32_t image_size, std::uint32_t trials, std::uint64_t seed,
                    const SearchLimits& limits)
{
    for (std::uint32_t t = 0; t < trials; ++t) {
        const SetMapping f = generator_for(kind, host, image_size, subseed(seed, t));
        SearchStats stats;
        const auto copy = run_search(kind, p, f, host, &stats, limits);
        if (!copy) {
            Certificate cert;
            cert.kind = kind;
            cert.host_size = host;
            cert.image_size = f.image_size();
            cert.seed = seed;
            cert.trial_index = t;
            cert.stats = stats;
            cert.pattern_text = serialize_pattern(p);
            cert.mapping_text = serialize_mapping(f);
            return cert;
        }
    }
    return std::nullopt;
}

bool replay_certificate(const Certificate& cert, const SearchLimits& limits)
{
    const Pattern p = parse_pattern(cert.pattern_text);
    const SetMapping f = parse_mapping(cert.mapping_text);
    SearchStats stats;
    const auto copy = run_search(cert.kind, p, f, cert.host_size, &stats, limits);
    return !copy && stats.nodes == cert.stats.nodes;
}

std::string serialize_certificate(const Certificate& cert)
{
    nlohmann::ordered_json j;
    j["kind"] = bound_kind_name(cert.kind);
    j["host_size"] = cert.host_size;
    j["image_size"] = cert.image_size;
    j["seed"] = cert.seed;
    j["trial_index"] = cert.trial_index;
    j["nodes"] = cert.stats.nodes;
    j["pattern"] = cert.pattern_text;
    j["mapping"] = cert.mapping_text;
    return j.dump(2) + "\n";
}

Certificate parse_certificate(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    Certificate cert;
    cert.kind = bound_kind_from_name(j.at("kind").get<std::string>());
    cert.host_size = j.at("host_size").get<std::uint32_t>();
    cert.image_size = j.at("image_size").get<std::uint32_t>();
    cert.seed = j.at("seed").get<std::uint64_t>();
    cert.trial_index = j.at("trial_index").get<std::uint32_t>();
    cert.stats.nodes = j.at("nodes").get<std::uint64_t>();
    cert.pattern_text = j.at("pattern").get<std::string>();
    cert.mapping_text = j.at("mapping").get<std::string>();
    return cert;
}

std::vector<ScanRow> scan_w(const Pattern& p, std::uint32_t host_from, std::uint32_t host_to,
                            std::uint32_t trials_per_host, std::uint32_t image_size,
                            std::uint64_t seed, const SearchLimits& limits)
{
    std::vector<ScanRow> rows;
    for (std::uint32_t host = host_from; host <= host_to; ++host) {
        ScanRow row;
        row.host = host;
        row.trials = trials_per_host;
        for (std::uint32_t t = 0; t < trials_per_host; ++t) {
            const SetMapping f =
                gen_uniform_disjoint(host, 2, image_size, subseed(absorb(seed, host), t),
                                     Backing::dense);
            if (find_clean_copy(p, f, host, nullptr, limits))
                ++row.admitting;
        }
        if (trials_per_host > 0) {
            const double n = trials_per_host;
            const double ph = row.admitting / n;
            const double z = 1.959963984540054; // 95%
            const double denom = 1.0 + z * z / n;
            const double center = (ph + z * z / (2 * n)) / denom;
            const double half =
                z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
            row.fraction = ph;
            row.ci_low = std::max(0.0, center - half);
            row.ci_high = std::min(1.0, center + half);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace setmap
