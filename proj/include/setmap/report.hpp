#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace setmap {

/// One embed trial, flattened for CSV emission. Column order is part of
/// the output contract:
/// seed,N,C,ell,retries,success,rule_a_rejects,rule_b_rejects,rule_c_rejects,
/// prop1_ok,prop2_max_ratio,prop3_max_ratio
struct TrialRow {
    std::uint64_t seed = 0;
    std::uint32_t host = 0;
    std::uint32_t multiplier = 0; // 0 when N was given explicitly (blank column)
    std::uint32_t ell = 0;
    std::uint32_t retries = 0;
    bool success = false;
    std::uint64_t rej_a = 0;
    std::uint64_t rej_b = 0;
    std::uint64_t rej_c = 0;
    bool prop1_ok = false;
    double prop2_max_ratio = -1.0; // < 0 renders blank (diagnostics off)
    double prop3_max_ratio = 0.0;
};

std::string emit_csv(const std::vector<TrialRow>& rows);

/// Shared numeric formatting for report values (%.6g).
std::string format_ratio(double v);

} // namespace setmap
