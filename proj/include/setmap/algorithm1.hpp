#pragma once

#include "setmap/dyadic.hpp"
#include "setmap/mapping.hpp"
#include "setmap/target_sets.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace setmap {

/// Candidate accounting for one embedded vertex. A rejected candidate is
/// attributed to the first rule that kills it, in the order (a), (b), (c).
struct VertexTrace {
    std::uint32_t vertex = 0;
    std::uint32_t block = 0;
    std::uint32_t candidates = 0; // |X_j| scanned
    std::uint32_t survivors = 0;  // |X_u|
    std::uint32_t rej_injective = 0;   // (a) already used
    std::uint32_t rej_forbidden = 0;   // (b) in an earlier block's image
    std::uint32_t rej_image_hit = 0;   // (c) would dirty X_{<=j}
    std::uint32_t chosen = 0;
};

struct RuleTotals {
    std::uint64_t injective = 0;
    std::uint64_t forbidden = 0;
    std::uint64_t image_hit = 0;
};

struct Embedding {
    std::vector<std::uint32_t> map; // pattern vertex -> host vertex
    std::vector<VertexTrace> trace; // in embedding order
    bool clean = false;
};

struct AlgorithmFailure {
    std::uint32_t block = 0;
    std::uint32_t vertex = 0;
    std::uint32_t position = 0; // index in the degree order
};

struct Algorithm1Result {
    std::optional<Embedding> embedding;
    std::optional<AlgorithmFailure> failure;
    RuleTotals totals;
    /// Filled when primed sets are supplied: after completing block j,
    /// |L cap X'_{j+1}| and |X'_{j+1}| where L is the union of images of
    /// edges embedded so far.
    std::vector<std::uint64_t> forbidden_in_next;
    std::vector<std::uint64_t> next_primed_size;
};

/// The deterministic block-by-block greedy embedding. Processes blocks in
/// order and vertices within a block by the degree order; a candidate
/// x in X_j survives if it is unused (a), outside the image of every edge
/// completed in earlier blocks (b), and f(phi(v)x) avoids X_{<=j} for every
/// embedded neighbour v (c). The smallest survivor is chosen. The running
/// forbidden set for (b) is extended once per completed block.
Algorithm1Result run_algorithm1(const Pattern& g, const DyadicPlan& plan,
                                const VertexSets& pruned, const SetMapping& f,
                                const VertexSets* primed_for_diagnostics = nullptr);

struct CleanVerdict {
    struct Violation {
        std::size_t edge_index;     // into pattern.edges()
        std::uint32_t host_vertex;  // image vertex that lands in phi(V)
    };
    bool clean = false;
    std::optional<Violation> violation;
};

/// Does f(phi(e)) avoid phi(V) for every pattern edge? phi must be
/// injective and in host range; works for any uniformity matching f.
CleanVerdict verify_clean(const Pattern& g, std::span<const std::uint32_t> phi,
                          const SetMapping& f);

} // namespace setmap
