#include "setmap/target_sets.hpp"

#include "setmap/rng.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace setmap {

namespace {

    constexpr std::uint64_t kTagPartition = 0x70617274; // "part"
    constexpr std::uint8_t kNoLevel = 0xFF;

} // namespace

VertexSets sample_partition(const WellLoadedSet& x, const DyadicPlan& plan, std::uint64_t seed)
{
    const std::uint64_t size_x = x.members.size();
    if (4ull * plan.n > size_x)
        throw std::invalid_argument(
            "sample_partition: host too small, need |X| >= 4n for the alpha_j to sum to <= 1");

    // cumulative fixed-point thresholds t_i = 2^64 * (4 * cum_i) / |X|
    const std::uint32_t levels = plan.levels;
    std::vector<unsigned __int128> thresholds(levels + 1);
    std::uint64_t cum = 0;
    for (std::uint32_t j = 0; j <= levels; ++j) {
        cum += plan.block_size(j);
        thresholds[j] = (static_cast<unsigned __int128>(4ull * cum) << 64) / size_x;
    }

    const std::uint64_t key = absorb(seed, kTagPartition);
    VertexSets primed(levels + 1);
    for (const auto v : x.members) {
        const unsigned __int128 r = absorb(key, v);
        for (std::uint32_t j = 0; j <= levels; ++j) {
            if (r < thresholds[j]) {
                primed[j].push_back(v);
                break;
            }
        }
    }
    return primed;
}

bool check_size_property(const VertexSets& primed, const DyadicPlan& plan)
{
    for (std::uint32_t j = 0; j <= plan.levels; ++j) {
        const std::uint64_t u = plan.block_size(j);
        const std::uint64_t sz = primed[j].size();
        if (!(39 * u < 10 * sz && 10 * sz < 41 * u))
            return false;
    }
    return true;
}

namespace {

    struct CountContext {
        std::vector<std::uint8_t> level;        // host vertex -> block or kNoLevel
        std::vector<std::pair<std::uint32_t, std::uint32_t>> items; // (block i, index)
    };

    CountContext make_context(const VertexSets& primed, std::uint32_t host)
    {
        CountContext ctx;
        ctx.level.assign(host, kNoLevel);
        for (std::uint32_t i = 0; i < primed.size(); ++i) {
            for (const auto v : primed[i])
                ctx.level[v] = static_cast<std::uint8_t>(i);
            for (std::uint32_t idx = 0; idx < primed[i].size(); ++idx)
                ctx.items.emplace_back(i, idx);
        }
        return ctx;
    }

    // r_j(x) for every j >= i, written into row (stride T+1)
    void count_for_vertex(const VertexSets& primed, const SetMapping& f,
                          const CountContext& ctx, std::uint32_t i, std::uint32_t x,
                          std::uint64_t* row, std::vector<std::uint32_t>& img)
    {
        const std::uint32_t levels = static_cast<std::uint32_t>(primed.size()) - 1;
        for (std::uint32_t j = i; j <= levels; ++j) {
            std::uint64_t r = 0;
            for (const auto y : primed[j]) {
                if (y == x)
                    continue;
                if (x < y)
                    f.eval_pair(x, y, img);
                else
                    f.eval_pair(y, x, img);
                for (const auto z : img) {
                    if (ctx.level[z] <= j) {
                        ++r;
                        break;
                    }
                }
            }
            row[j] = r;
        }
    }

    PairCounts finish_counts(const VertexSets& primed,
                             std::vector<std::vector<std::uint64_t>> per_vertex)
    {
        const auto levels = static_cast<std::uint32_t>(primed.size()) - 1;
        PairCounts counts;
        counts.levels = levels;
        counts.per_vertex = std::move(per_vertex);
        counts.totals.assign(levels + 1, std::vector<std::uint64_t>(levels + 1, 0));
        for (std::uint32_t i = 0; i <= levels; ++i)
            for (std::uint32_t idx = 0; idx < primed[i].size(); ++idx)
                for (std::uint32_t j = i; j <= levels; ++j)
                    counts.totals[i][j] += counts.r_of(i, idx, j);
        return counts;
    }

} // namespace

PairCounts compute_counts_serial(const VertexSets& primed, const SetMapping& f)
{
    const auto levels = static_cast<std::uint32_t>(primed.size()) - 1;
    const CountContext ctx = make_context(primed, f.host_size());
    std::vector<std::vector<std::uint64_t>> per_vertex(levels + 1);
    for (std::uint32_t i = 0; i <= levels; ++i)
        per_vertex[i].assign(primed[i].size() * (levels + 1), 0);

    std::vector<std::uint32_t> img;
    for (const auto& [i, idx] : ctx.items)
        count_for_vertex(primed, f, ctx, i, primed[i][idx],
                         per_vertex[i].data() + static_cast<std::size_t>(idx) * (levels + 1), img);
    return finish_counts(primed, std::move(per_vertex));
}

PairCounts compute_counts_parallel(const VertexSets& primed, const SetMapping& f)
{
#ifdef _OPENMP
    const auto levels = static_cast<std::uint32_t>(primed.size()) - 1;
    const CountContext ctx = make_context(primed, f.host_size());
    std::vector<std::vector<std::uint64_t>> per_vertex(levels + 1);
    for (std::uint32_t i = 0; i <= levels; ++i)
        per_vertex[i].assign(primed[i].size() * (levels + 1), 0);

    const auto total = static_cast<std::int64_t>(ctx.items.size());
    #pragma omp parallel
    {
        std::vector<std::uint32_t> img;
        // each item owns its row; no write conflicts
        #pragma omp for schedule(dynamic, 16)
        for (std::int64_t it = 0; it < total; ++it) {
            const auto [i, idx] = ctx.items[static_cast<std::size_t>(it)];
            count_for_vertex(primed, f, ctx, i, primed[i][idx],
                             per_vertex[i].data() + static_cast<std::size_t>(idx) * (levels + 1),
                             img);
        }
    }
    return finish_counts(primed, std::move(per_vertex));
#else
    return compute_counts_serial(primed, f);
#endif
}

PairCounts compute_counts(const VertexSets& primed, const SetMapping& f)
{
#ifdef _OPENMP
    if (!omp_in_parallel())
        return compute_counts_parallel(primed, f);
#endif
    return compute_counts_serial(primed, f);
}

TargetSets prune(VertexSets primed, PairCounts counts, const DyadicPlan& plan)
{
    const std::uint32_t levels = plan.levels;
    for (std::uint32_t j = 0; j <= levels; ++j) {
        if (plan.block_degrees[j] == 0)
            throw std::invalid_argument("prune: block degree d_j must be positive");
    }

    TargetSets ts;
    ts.bad.assign(levels + 1, std::vector<std::vector<std::uint32_t>>(levels + 1));
    ts.pruned.assign(levels + 1, {});

    for (std::uint32_t i = 0; i <= levels; ++i) {
        std::vector<bool> drop(primed[i].size(), false);
        for (std::uint32_t j = i; j <= levels; ++j) {
            const std::uint64_t u_j = plan.block_size(j);
            const std::uint64_t d_j = plan.block_degrees[j];
            for (std::uint32_t idx = 0; idx < primed[i].size(); ++idx) {
                const std::uint64_t r = counts.r_of(i, idx, j);
                const bool bad = (i == 0 && j == 0) ? (r >= 1) : (r * d_j >= u_j);
                if (bad) {
                    ts.bad[i][j].push_back(primed[i][idx]);
                    drop[idx] = true;
                }
            }
        }
        for (std::uint32_t idx = 0; idx < primed[i].size(); ++idx)
            if (!drop[idx])
                ts.pruned[i].push_back(primed[i][idx]);
    }
    ts.primed = std::move(primed);
    ts.counts = std::move(counts);
    return ts;
}

} // namespace setmap
