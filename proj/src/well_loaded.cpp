#include "setmap/well_loaded.hpp"

#include "setmap/combinat.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace setmap {

namespace {

    WellLoadedSet finish(const SetMapping& f, std::vector<std::uint64_t> loads)
    {
        WellLoadedSet x;
        x.threshold = static_cast<std::uint64_t>(f.image_size()) * f.host_size();
        x.loads = std::move(loads);
        for (std::uint32_t v = 0; v < f.host_size(); ++v)
            if (x.loads[v] <= x.threshold)
                x.members.push_back(v);
        return x;
    }

    void scan_rows(const SetMapping& f, std::uint32_t u_begin, std::uint32_t u_end,
                   std::vector<std::uint64_t>& loads)
    {
        std::vector<std::uint32_t> img;
        img.reserve(f.image_size());
        for (std::uint32_t u = u_begin; u < u_end; ++u) {
            for (std::uint32_t v = u + 1; v < f.host_size(); ++v) {
                f.eval_pair(u, v, img);
                for (const auto w : img)
                    ++loads[w];
            }
        }
    }

} // namespace

WellLoadedSet well_loaded_serial(const SetMapping& f)
{
    std::vector<std::uint64_t> loads(f.host_size(), 0);
    if (f.arity() == 2) {
        scan_rows(f, 0, f.host_size(), loads);
    } else {
        std::vector<std::uint32_t> img;
        for_each_edge(f.host_size(), f.arity(), [&](std::span<const std::uint32_t> e) {
            f.eval_unchecked(e, img);
            for (const auto w : img)
                ++loads[w];
        });
    }
    return finish(f, std::move(loads));
}

WellLoadedSet well_loaded_parallel(const SetMapping& f)
{
#ifdef _OPENMP
    if (f.arity() == 2) {
        const std::uint32_t host = f.host_size();
        std::vector<std::vector<std::uint64_t>> partial;
        #pragma omp parallel
        {
            #pragma omp single
            partial.assign(static_cast<std::size_t>(omp_get_num_threads()),
                           std::vector<std::uint64_t>(host, 0));
            auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
            std::vector<std::uint32_t> img;
            img.reserve(f.image_size());
            // row lengths shrink with u; dynamic schedule keeps threads busy
            #pragma omp for schedule(dynamic, 64)
            for (std::int64_t u = 0; u < static_cast<std::int64_t>(host); ++u) {
                for (std::uint32_t v = static_cast<std::uint32_t>(u) + 1; v < host; ++v) {
                    f.eval_pair(static_cast<std::uint32_t>(u), v, img);
                    for (const auto w : img)
                        ++local[w];
                }
            }
        }
        std::vector<std::uint64_t> loads(host, 0);
        for (const auto& part : partial)
            for (std::uint32_t v = 0; v < host; ++v)
                loads[v] += part[v];
        return finish(f, std::move(loads));
    }
#endif
    return well_loaded_serial(f);
}

WellLoadedSet well_loaded(const SetMapping& f)
{
#ifdef _OPENMP
    if (!omp_in_parallel())
        return well_loaded_parallel(f);
#endif
    return well_loaded_serial(f);
}

} // namespace setmap
