#include "setmap/pipeline.hpp"

#include "setmap/rng.hpp"
#include "setmap/target_sets.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace setmap {

namespace {

    void require_pipeline_mapping(const Pattern& g, const SetMapping& f)
    {
        if (f.arity() != 2 || g.uniformity() != 2)
            throw std::invalid_argument("embed_pipeline: arity-2 patterns and mappings only");
        if (f.overlap_budget() != 0)
            throw std::invalid_argument(
                "embed_pipeline: mapping must have a = 0 (reduce it first)");
    }

    double pair_bound_ratio(const PairCounts& counts, const DyadicPlan& plan, bool* all_ok)
    {
        // r_{i,j} vs |U_i||U_j|^2 / 5m
        double worst = 0.0;
        bool ok = true;
        for (std::uint32_t i = 0; i <= plan.levels; ++i) {
            for (std::uint32_t j = i; j <= plan.levels; ++j) {
                const auto ui = static_cast<double>(plan.block_size(i));
                const auto uj = static_cast<double>(plan.block_size(j));
                const double bound = ui * uj * uj / (5.0 * plan.m);
                const auto r = static_cast<double>(counts.totals[i][j]);
                worst = std::max(worst, r / bound);
                if (static_cast<unsigned __int128>(counts.totals[i][j]) * 5 * plan.m >
                    static_cast<unsigned __int128>(plan.block_size(i)) * plan.block_size(j) *
                        plan.block_size(j))
                    ok = false;
            }
        }
        if (all_ok)
            *all_ok = ok;
        return worst;
    }

    double overlap_ratio(const Algorithm1Result& res, bool* all_ok)
    {
        // 9 |L cap X'_{j+1}| vs |X'_{j+1}| for each completed block
        double worst = 0.0;
        bool ok = true;
        for (std::size_t j = 0; j < res.forbidden_in_next.size(); ++j) {
            const std::uint64_t cnt = res.forbidden_in_next[j];
            const std::uint64_t size = res.next_primed_size[j];
            if (size == 0)
                continue;
            worst = std::max(worst, 9.0 * static_cast<double>(cnt) / static_cast<double>(size));
            if (9 * cnt > size)
                ok = false;
        }
        if (all_ok)
            *all_ok = ok;
        return worst;
    }

} // namespace

PipelineReport embed_pipeline(const Pattern& g, const SetMapping& f,
                              const PipelineConfig& cfg, const WellLoadedSet& x)
{
    require_pipeline_mapping(g, f);
    if (cfg.max_retries < 1)
        throw std::invalid_argument("embed_pipeline: max_retries must be >= 1");

    const PaddedPattern pp = pad(g);
    const DyadicPlan plan = dyadic_plan(pp);

    PipelineReport report;
    report.host_size = f.host_size();
    report.image_size = f.image_size();
    report.seed = cfg.seed;

    for (std::uint32_t attempt = 1; attempt <= cfg.max_retries; ++attempt) {
        report.attempts = attempt;
        const std::uint64_t attempt_seed = subseed(cfg.seed, attempt);
        VertexSets primed = sample_partition(x, plan, attempt_seed);

        AttemptInfo info;
        info.size_window = check_size_property(primed, plan);
        report.size_window_final = info.size_window;
        if (cfg.gate_size_property && !info.size_window) {
            if (cfg.diagnostics)
                report.attempt_log.push_back(info);
            continue;
        }

        PairCounts counts = compute_counts(primed, f);
        info.pair_max_ratio = pair_bound_ratio(counts, plan, &info.pair_bound);
        report.pair_max_ratio = info.pair_max_ratio;

        TargetSets ts = prune(std::move(primed), std::move(counts), plan);
        const Algorithm1Result res = run_algorithm1(
            pp.base, plan, ts.pruned, f, cfg.diagnostics ? &ts.primed : nullptr);
        report.rejects = res.totals;
        if (cfg.diagnostics) {
            info.overlap_max_ratio = overlap_ratio(res, &info.overlap_ok);
            report.overlap_max_ratio = info.overlap_max_ratio;
        }
        info.algorithm_success = res.embedding.has_value();
        info.failure = res.failure;
        report.last_failure = res.failure;
        if (cfg.diagnostics)
            report.attempt_log.push_back(info);

        if (res.embedding) {
            const auto verdict = verify_clean(pp.base, res.embedding->map, f);
            if (verdict.clean) {
                report.success = true;
                report.embedding.assign(res.embedding->map.begin(),
                                        res.embedding->map.begin() + pp.original_n);
                return report;
            }
            // a dirty success would contradict rules (b)/(c); resample anyway
        }
    }
    return report;
}

PipelineReport embed_pipeline(const Pattern& g, const SetMapping& f, const PipelineConfig& cfg)
{
    require_pipeline_mapping(g, f);
    const WellLoadedSet x = well_loaded(f);
    return embed_pipeline(g, f, cfg, x);
}

PropertyStats measure_properties(const Pattern& g, const SetMapping& f, std::uint64_t seed,
                                 std::uint32_t trials, const WellLoadedSet& x)
{
    require_pipeline_mapping(g, f);
    const PaddedPattern pp = pad(g);
    const DyadicPlan plan = dyadic_plan(pp);
    if (4ull * plan.n > x.members.size()) // keep throws out of the parallel region
        throw std::invalid_argument(
            "measure_properties: host too small, need |X| >= 4n for the alpha_j to sum to <= 1");

    std::vector<AttemptInfo> infos(trials);
    #pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
        const std::uint64_t tseed = subseed(seed, static_cast<std::uint64_t>(t));
        VertexSets primed = sample_partition(x, plan, tseed);
        AttemptInfo info;
        info.size_window = check_size_property(primed, plan);
        PairCounts counts = compute_counts_serial(primed, f);
        info.pair_max_ratio = pair_bound_ratio(counts, plan, &info.pair_bound);
        TargetSets ts = prune(std::move(primed), std::move(counts), plan);
        const Algorithm1Result res = run_algorithm1(pp.base, plan, ts.pruned, f, &ts.primed);
        info.overlap_max_ratio = overlap_ratio(res, &info.overlap_ok);
        info.algorithm_success = res.embedding.has_value();
        infos[static_cast<std::size_t>(t)] = info;
    }

    PropertyStats stats;
    stats.trials = trials;
    for (const auto& info : infos) {
        stats.size_window_pass += info.size_window ? 1 : 0;
        stats.overlap_pass += info.overlap_ok ? 1 : 0;
        stats.pair_bound_pass += info.pair_bound ? 1 : 0;
        stats.algorithm_success += info.algorithm_success ? 1 : 0;
        stats.overlap_ratio_max = std::max(stats.overlap_ratio_max, info.overlap_max_ratio);
        stats.pair_ratio_max = std::max(stats.pair_ratio_max, info.pair_max_ratio);
        stats.overlap_ratio_mean += info.overlap_max_ratio;
        stats.pair_ratio_mean += info.pair_max_ratio;
    }
    if (trials > 0) {
        stats.overlap_ratio_mean /= trials;
        stats.pair_ratio_mean /= trials;
    }
    return stats;
}

PropertyStats measure_properties(const Pattern& g, const SetMapping& f, std::uint64_t seed,
                                 std::uint32_t trials)
{
    require_pipeline_mapping(g, f);
    const WellLoadedSet x = well_loaded(f);
    return measure_properties(g, f, seed, trials, x);
}

} // namespace setmap
