#pragma once

#include "setmap/mapping.hpp"
#include "setmap/pattern.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace setmap {

/// Hard guards for the exhaustive searches (worst case Theta(N^n)).
struct SearchLimits {
    std::uint32_t max_pattern_vertices = 8;
    std::uint32_t max_host = 16;
};

struct SearchStats {
    std::uint64_t nodes = 0; // candidate placements examined
};

/// Backtracking over injective maps in degree order with incremental
/// pruning. Returns the first clean embedding in lexicographic order of
/// the degree-order assignment tuple, or nullopt if none exists (proven
/// by exhaustion). Keyed by pattern vertex id in the returned vector.
std::optional<std::vector<std::uint32_t>>
find_clean_copy(const Pattern& p, const SetMapping& f, std::uint32_t host,
                SearchStats* stats = nullptr, const SearchLimits& limits = {});

/// Same search under the weaker f-free condition: no copy edge's image
/// (an l = 2 set read as a host edge) is itself an edge of the copy.
std::optional<std::vector<std::uint32_t>>
find_f_free_copy(const Pattern& p, const SetMapping& f, std::uint32_t host,
                 SearchStats* stats = nullptr, const SearchLimits& limits = {});

enum class BoundKind { w_lower, g0_lower, g1_lower };

const char* bound_kind_name(BoundKind kind) noexcept;
BoundKind bound_kind_from_name(const std::string& name);

/// A self-contained lower-bound witness: a concrete dense mapping that
/// blocks every clean (or f-free) copy at the given host size, proven by
/// exhaustion and replayable bit-for-bit.
struct Certificate {
    BoundKind kind = BoundKind::w_lower;
    std::uint32_t host_size = 0;
    std::uint32_t image_size = 0;
    std::uint64_t seed = 0;
    std::uint32_t trial_index = 0;
    SearchStats stats;
    std::string pattern_text; // serialize_pattern form
    std::string mapping_text; // serialize_mapping form
};

/// Sample `trials` dense mappings from the kind-appropriate generator and
/// return a certificate for the first one admitting no copy, if any.
/// image_size applies to kind w_lower only (g0/g1 fix l = 2).
std::optional<Certificate>
certify_lower_bound(const Pattern& p, std::uint32_t host, BoundKind kind,
                    std::uint32_t image_size, std::uint32_t trials, std::uint64_t seed,
                    const SearchLimits& limits = {});

/// Re-run the stored search; true iff the no-copy verdict reproduces with
/// identical node counts.
bool replay_certificate(const Certificate& cert, const SearchLimits& limits = {});

std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

struct ScanRow {
    std::uint32_t host = 0;
    std::uint32_t trials = 0;
    std::uint32_t admitting = 0; // mappings with a clean copy
    double fraction = 0.0;
    double ci_low = 0.0; // Wilson 95%
    double ci_high = 0.0;
};

/// Per-N fraction of random disjoint mappings admitting a clean copy.
std::vector<ScanRow> scan_w(const Pattern& p, std::uint32_t host_from, std::uint32_t host_to,
                            std::uint32_t trials_per_host, std::uint32_t image_size,
                            std::uint64_t seed, const SearchLimits& limits = {});

} // namespace setmap
