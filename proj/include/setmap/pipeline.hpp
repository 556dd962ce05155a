#pragma once

#include "setmap/algorithm1.hpp"
#include "setmap/mapping.hpp"
#include "setmap/pattern.hpp"
#include "setmap/well_loaded.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace setmap {

struct PipelineConfig {
    std::uint32_t max_retries = 20;
    std::uint64_t seed = 0;
    /// Record per-attempt property measurements and the rule-(b) overlap
    /// diagnostics (|L cap X'_{j+1}| along the run).
    bool diagnostics = false;
    /// Resample when the size window 3.9|U_j| < |X'_j| < 4.1|U_j| fails.
    /// Off by default: at desk scale the window rejects nearly every sample
    /// while the embedding still goes through, so gating it starves the run.
    bool gate_size_property = false;
};

struct AttemptInfo {
    bool size_window = false;  // property: 3.9|U_j| < |X'_j| < 4.1|U_j|
    bool overlap_ok = false;   // property: 9|L cap X'_{j+1}| <= |X'_{j+1}| along the run
    bool pair_bound = false;   // property: r_{i,j} <= |U_i||U_j|^2 / 5m
    double overlap_max_ratio = 0.0;
    double pair_max_ratio = 0.0;
    bool algorithm_success = false;
    std::optional<AlgorithmFailure> failure;
};

struct PipelineReport {
    std::uint32_t host_size = 0;
    std::uint32_t image_size = 0;
    std::uint64_t seed = 0;
    std::uint32_t attempts = 0; // sampling rounds used (1-based)
    bool success = false;
    std::vector<std::uint32_t> embedding; // restricted to the original vertices
    RuleTotals rejects;                   // from the final attempt
    bool size_window_final = false;
    double overlap_max_ratio = -1.0;      // final attempt; < 0 when not measured
    double pair_max_ratio = 0.0;          // final attempt
    std::optional<AlgorithmFailure> last_failure;
    std::vector<AttemptInfo> attempt_log; // filled when diagnostics
};

/// The full constructive pipeline: pad, plan, well-loaded filter, then up to
/// max_retries rounds of sample -> count -> prune -> greedy embed -> verify.
/// Never returns a dirty embedding. Requires arity 2 and a = 0.
PipelineReport embed_pipeline(const Pattern& g, const SetMapping& f,
                              const PipelineConfig& cfg);

/// Same, with the well-loaded set precomputed (shared across trials on the
/// same mapping).
PipelineReport embed_pipeline(const Pattern& g, const SetMapping& f,
                              const PipelineConfig& cfg, const WellLoadedSet& x);

struct PropertyStats {
    std::uint32_t trials = 0;
    std::uint32_t size_window_pass = 0; // (1)
    std::uint32_t overlap_pass = 0;     // (2), along executed runs
    std::uint32_t pair_bound_pass = 0;  // (3)
    std::uint32_t algorithm_success = 0;
    double overlap_ratio_max = 0.0;
    double pair_ratio_max = 0.0;
    double overlap_ratio_mean = 0.0;
    double pair_ratio_mean = 0.0;
};

/// Empirical satisfaction rates of the three target-set properties over
/// independently sampled partitions.
PropertyStats measure_properties(const Pattern& g, const SetMapping& f,
                                 std::uint64_t seed, std::uint32_t trials);
PropertyStats measure_properties(const Pattern& g, const SetMapping& f,
                                 std::uint64_t seed, std::uint32_t trials,
                                 const WellLoadedSet& x);

} // namespace setmap
