#pragma once

#include "setmap/dyadic.hpp"
#include "setmap/mapping.hpp"
#include "setmap/well_loaded.hpp"

#include <cstdint>
#include <vector>

namespace setmap {

/// One sorted host-vertex set per block 0..T.
using VertexSets = std::vector<std::vector<std::uint32_t>>;

/// Independently assign each x in X to X'_j with probability
/// alpha_j = 4|U_j|/|X| (and to no set otherwise). Requires 4n <= |X|.
/// Keyed per vertex, so the result does not depend on evaluation order.
VertexSets sample_partition(const WellLoadedSet& x, const DyadicPlan& plan, std::uint64_t seed);

/// Size window: 3.9|U_j| < |X'_j| < 4.1|U_j| for every block, strictly.
bool check_size_property(const VertexSets& primed, const DyadicPlan& plan);

struct PairCounts {
    std::uint32_t levels = 0; // T
    /// totals[i][j] = r_{i,j} = #{ordered (x,y) in X'_i x X'_j, x != y,
    /// f(xy) meets X'_{<=j}}, for i <= j; zero below the diagonal.
    std::vector<std::vector<std::uint64_t>> totals;
    /// per_vertex[i][idx*(T+1)+j] = r_j(x) for x = primed[i][idx], j >= i.
    std::vector<std::vector<std::uint64_t>> per_vertex;

    std::uint64_t r_of(std::uint32_t i, std::uint32_t idx, std::uint32_t j) const noexcept
    {
        return per_vertex[i][static_cast<std::size_t>(idx) * (levels + 1) + j];
    }
};

/// The pair counts behind pruning. Parallel kernel and serial reference
/// agree exactly; compute_counts() dispatches like well_loaded().
PairCounts compute_counts(const VertexSets& primed, const SetMapping& f);
PairCounts compute_counts_serial(const VertexSets& primed, const SetMapping& f);
PairCounts compute_counts_parallel(const VertexSets& primed, const SetMapping& f);

struct TargetSets {
    VertexSets primed;
    VertexSets pruned;
    /// bad[i][j] = B_{i,j} for j >= i (inner index j), else empty.
    std::vector<std::vector<std::vector<std::uint32_t>>> bad;
    PairCounts counts;
};

/// B_{i,j} = {x in X'_i : r_j(x) >= |U_j|/d_j} for (i,j) != (0,0),
/// B_{0,0} = {x in X'_0 : r_0(x) >= 1}, X_i = X'_i \ union of B_{i,j}.
TargetSets prune(VertexSets primed, PairCounts counts, const DyadicPlan& plan);

} // namespace setmap
