#pragma once

#include "setmap/mapping.hpp"

#include <cstdint>
#include <vector>

namespace setmap {

/// Host vertices x whose load #{e : x in f(e)} is at most l*N. The
/// double count over all C(N,2) edges forces |members| > N/2.
struct WellLoadedSet {
    std::vector<std::uint32_t> members; // sorted ascending
    std::vector<std::uint64_t> loads;   // indexed by host vertex
    std::uint64_t threshold = 0;        // l * N, inclusive
};

/// Full scan of all C(N,k) edges (table walk for dense mappings).
/// The parallel kernel and the serial reference produce identical results;
/// well_loaded() picks the parallel one unless already inside a parallel
/// region.
WellLoadedSet well_loaded(const SetMapping& f);
WellLoadedSet well_loaded_serial(const SetMapping& f);
WellLoadedSet well_loaded_parallel(const SetMapping& f);

} // namespace setmap
