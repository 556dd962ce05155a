#pragma once

#include "setmap/mapping.hpp"
#include "setmap/pattern.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace setmap {

/// Host size at which the local-lemma embedding is guaranteed for a
/// k-uniform pattern with n vertices and maximum degree Delta: 10 k^2 n Delta.
std::uint64_t required_host_size(const Pattern& p);

struct LllCondition {
    double p = 0.0;  // per-event probability bound k/N
    double d = 0.0;  // dependency bound 3 k Delta n
    bool holds = false; // e * p * (d + 1) <= 1
};

LllCondition lll_condition(const Pattern& p, std::uint64_t host);

/// An embedding-by-random-assignment instance: variables x_1..x_n over the
/// host, collision events A_{i,j} (x_i = x_j, i < j) and image events
/// B_{e,i} (x_i lands in f of edge e's image), for f of arity k with
/// l = k and a = 0.
struct LllProblem {
    Pattern pattern;
    SetMapping f;

    LllProblem(Pattern p, SetMapping mapping);

    std::uint32_t host_size() const noexcept { return f.host_size(); }
    std::uint64_t event_count() const noexcept;
};

struct LllEvent {
    enum class Kind { collision, image_hit };
    Kind kind = Kind::collision;
    std::uint32_t i = 0, j = 0;     // collision: variable pair i < j
    std::uint32_t edge_index = 0;   // image_hit: pattern edge
    std::uint32_t vertex = 0;       // image_hit: the hit variable index
};

/// Event id in the fixed scan order (all collisions first, then image
/// events by (edge, outside vertex)).
std::uint64_t event_id(const LllProblem& prob, const LllEvent& ev);

/// Lexicographically first violated event, or nullopt. Collisions are
/// scanned before image events, so f is only ever evaluated on injective
/// assignments.
std::optional<LllEvent> find_violated_event(const std::vector<std::uint32_t>& assignment,
                                            const LllProblem& prob);

struct MoserTardosResult {
    bool success = false;
    std::vector<std::uint32_t> assignment;
    std::uint64_t iterations = 0;
    std::uint64_t collision_resamples = 0;
    std::uint64_t image_resamples = 0;
    std::vector<std::uint32_t> event_histogram; // resample count per event id
    std::optional<LllEvent> last_event;         // set when the budget ran out
};

/// Resample the variables of the first violated event until none is
/// violated. max_resamples = 0 means 100 x event count.
MoserTardosResult moser_tardos(const LllProblem& prob, std::uint64_t seed,
                               std::uint64_t max_resamples = 0);

} // namespace setmap
