// Timing comparison of the serial reference kernels against their
// OpenMP counterparts: the well-loaded full scan and the pair-count
// computation behind pruning. Results are printed as a small table;
// both sides are checked to agree before timing is reported.

#include "setmap/dyadic.hpp"
#include "setmap/mapping.hpp"
#include "setmap/target_sets.hpp"
#include "setmap/well_loaded.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace setmap;

namespace {

template <typename F>
double time_best_of(F&& fn, int reps = 3)
{
    double best = 1e100;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main()
{
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    std::printf("\nwell_loaded full scan (lazy disjoint mapping, ell=2)\n");
    std::printf("%10s %12s %12s %9s %7s\n", "N", "serial_s", "parallel_s", "speedup", "match");
    for (const std::uint32_t host : {2000u, 8000u, 20000u, 40000u}) {
        const SetMapping f = gen_uniform_disjoint(host, 2, 2, 42, Backing::lazy);
        WellLoadedSet a, b;
        const double ts = time_best_of([&] { a = well_loaded_serial(f); }, 2);
        const double tp = time_best_of([&] { b = well_loaded_parallel(f); }, 2);
        const bool match = a.members == b.members && a.loads == b.loads;
        std::printf("%10u %12.4f %12.4f %8.2fx %7s\n", host, ts, tp, ts / tp,
                    match ? "yes" : "NO");
    }

    std::printf("\ncompute_counts (sampled partitions of a padded random graph)\n");
    std::printf("%10s %12s %12s %9s %7s\n", "m", "serial_s", "parallel_s", "speedup", "match");
    for (const std::uint32_t m : {100u, 400u, 900u}) {
        const Pattern g = gen_random(m / 2, m, 7);
        const PaddedPattern pp = pad(g);
        const DyadicPlan plan = dyadic_plan(pp);
        const std::uint32_t host = 64 * 2 * m;
        const SetMapping f = gen_uniform_disjoint(host, 2, 2, 42, Backing::lazy);
        WellLoadedSet x;
        x.threshold = 2ull * host;
        x.loads.assign(host, 0);
        for (std::uint32_t v = 0; v < host; ++v)
            x.members.push_back(v); // every vertex; the scan itself is benchmarked above
        const VertexSets primed = sample_partition(x, plan, 99);
        PairCounts ca, cb;
        const double ts = time_best_of([&] { ca = compute_counts_serial(primed, f); });
        const double tp = time_best_of([&] { cb = compute_counts_parallel(primed, f); });
        const bool match = ca.totals == cb.totals && ca.per_vertex == cb.per_vertex;
        std::printf("%10u %12.4f %12.4f %8.2fx %7s\n", m, ts, tp, ts / tp,
                    match ? "yes" : "NO");
    }
    return 0;
}
