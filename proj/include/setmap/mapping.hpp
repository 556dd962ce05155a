#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace setmap {

enum class Backing { automatic, dense, lazy };

/// An adversarial set mapping f on the k-subsets of a host {0..N-1}: each
/// canonical (sorted) k-edge e maps to an l-subset of the host with
/// |f(e) cap e| <= a. Evaluation is pure; images are returned sorted.
///
/// Dense mappings store the full table indexed by colex edge rank. Lazy
/// mappings recompute images from a pseudo-random function keyed by the
/// seed and the edge, so hosts far beyond table scale stay usable. For a
/// fixed seed the two backings agree pointwise.
class SetMapping {
public:
    std::uint32_t host_size() const noexcept { return host_; }
    std::uint32_t arity() const noexcept { return k_; }
    std::uint32_t image_size() const noexcept { return l_; }
    std::uint32_t overlap_budget() const noexcept { return a_; }
    std::uint64_t seed() const noexcept { return seed_; }
    bool is_dense() const noexcept { return kind_ == Kind::table; }
    std::uint64_t domain_size() const noexcept;

    /// Validating evaluation; requires a sorted, duplicate-free, in-range edge.
    void eval(std::span<const std::uint32_t> edge, std::vector<std::uint32_t>& out) const;
    std::vector<std::uint32_t> eval(std::span<const std::uint32_t> edge) const;

    /// Hot-loop evaluation without argument validation.
    void eval_unchecked(std::span<const std::uint32_t> edge, std::vector<std::uint32_t>& out) const;
    /// Pair fast path (arity 2, u < v).
    void eval_pair(std::uint32_t u, std::uint32_t v, std::vector<std::uint32_t>& out) const;

    /// Materialize into a dense table (identity on dense mappings).
    SetMapping densified() const;

    static SetMapping from_table(std::uint32_t host, std::uint32_t k, std::uint32_t l,
                                 std::uint32_t a, std::vector<std::uint32_t> table);

    friend SetMapping gen_uniform_disjoint(std::uint32_t, std::uint32_t, std::uint32_t,
                                           std::uint64_t, Backing);
    friend SetMapping gen_random_incident_edge(std::uint32_t, std::uint64_t, Backing);
    friend SetMapping reduce_to_disjoint(const SetMapping&);

private:
    enum class Kind { table, uniform_disjoint, incident_edge, reduced };

    SetMapping() = default;

    void eval_lazy(std::span<const std::uint32_t> edge, std::vector<std::uint32_t>& out) const;

    Kind kind_ = Kind::table;
    Kind inner_kind_ = Kind::uniform_disjoint; // for Kind::reduced
    std::uint32_t host_ = 0;
    std::uint32_t k_ = 2;
    std::uint32_t l_ = 0;
    std::uint32_t a_ = 0;
    std::uint32_t inner_l_ = 0; // image size before reduction
    std::uint64_t seed_ = 0;
    std::vector<std::uint32_t> table_; // dense rows, sorted, colex-ranked
};

/// f(e) uniform over l-subsets of the host avoiding e (a = 0). The w(G)
/// lower-bound construction.
SetMapping gen_uniform_disjoint(std::uint32_t host, std::uint32_t k, std::uint32_t l,
                                std::uint64_t seed, Backing backing = Backing::automatic);

/// f(e) a uniform host edge disjoint from e (l = 2, a = 0).
SetMapping gen_random_disjoint_edge(std::uint32_t host, std::uint64_t seed,
                                    Backing backing = Backing::automatic);

/// f(e) a uniform host edge sharing exactly one vertex with e (l = 2, a = 1).
SetMapping gen_random_incident_edge(std::uint32_t host, std::uint64_t seed,
                                    Backing backing = Backing::automatic);

/// f'(e) = the smallest vertex of f(e) \ e, for f with arity 2, l = 2,
/// a <= 1. The result has l = 1, a = 0; any copy clean for f' is f-free
/// for f.
SetMapping reduce_to_disjoint(const SetMapping& f);

/// Text format: header "N k l a", then one line per canonical edge,
/// "v1 .. vk : w1 .. wl", covering every edge exactly once. Dense only.
SetMapping parse_mapping(std::string_view text);
std::string serialize_mapping(const SetMapping& f);

} // namespace setmap
