#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace setmap {

using Edge = std::vector<std::uint32_t>; // vertex ids, sorted ascending

/// A k-uniform pattern hypergraph on vertices {0..n-1}. Immutable after
/// construction; edges are stored canonically (sorted within an edge, edge
/// list sorted lexicographically, duplicates rejected).
class Pattern {
public:
    Pattern(std::uint32_t k, std::uint32_t n, std::vector<Edge> edges);

    std::uint32_t uniformity() const noexcept { return k_; }
    std::uint32_t vertex_count() const noexcept { return n_; }
    std::uint32_t edge_count() const noexcept { return static_cast<std::uint32_t>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::uint32_t>& degrees() const noexcept { return degrees_; }

    std::uint32_t max_degree() const noexcept;
    bool has_isolated_vertex() const noexcept;

    /// Neighbor lists (k = 2 only).
    std::vector<std::vector<std::uint32_t>> adjacency() const;

private:
    std::uint32_t k_;
    std::uint32_t n_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> degrees_;
};

/// Vertex ids ordered by non-increasing degree, ties by ascending id.
std::vector<std::uint32_t> degree_order(const Pattern& p);

Pattern gen_clique(std::uint32_t n);
Pattern gen_path(std::uint32_t n);
/// Star with `leaves` leaves 0..leaves-1 and center id `leaves`.
Pattern gen_star(std::uint32_t leaves);
Pattern gen_complete_bipartite(std::uint32_t a, std::uint32_t b);
/// Uniform m-edge graph on n vertices, resampled until no vertex is
/// isolated. Deterministic for a fixed seed.
Pattern gen_random(std::uint32_t n, std::uint64_t m, std::uint64_t seed);
/// Random d-regular graph (configuration model with rejection).
Pattern gen_regular(std::uint32_t n, std::uint32_t d, std::uint64_t seed);

/// Text format: one edge per line, k space-separated 0-based vertex ids.
/// Optional leading header comment "# k=K n=N" fixes the uniformity and the
/// vertex count (needed for trailing isolated vertices).
Pattern parse_pattern(std::string_view text);
std::string serialize_pattern(const Pattern& p);

} // namespace setmap
