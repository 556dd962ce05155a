#pragma once

#include "setmap/mapping.hpp"
#include "setmap/pattern.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace setmap {

enum class Subcommand {
    embed,
    lll_embed,
    oracle,
    certify,
    scan,
    measure,
    gen_graph,
    gen_mapping,
};

enum class OutputFormat { json, csv };

/// A fully resolved batch run. Every report embeds the spec it ran from,
/// and identical specs produce byte-identical reports.
struct RunSpec {
    Subcommand subcommand = Subcommand::embed;
    std::string pattern;           // generator spec ("clique:5", ...) or file path
    std::string mapping = "auto";  // "auto", generator spec, or file path
    std::uint32_t host = 0;        // N; 0 = auto-size N = C * ell * m
    std::uint32_t multiplier = 64; // C
    std::uint32_t ell = 2;
    std::uint32_t arity = 2;       // k, for gen-mapping and hypergraph runs
    std::uint64_t seed = 0;
    std::uint32_t trials = 1;
    std::uint32_t max_retries = 20;
    bool diagnostics = false;
    bool fresh_mapping = false;    // re-derive the mapping per trial
    bool reduce = false;           // apply the a=1 -> a=0 reduction first
    Backing backing = Backing::automatic;
    std::string oracle_mode = "clean"; // or "ffree"
    std::string bound_kind = "w";      // certify: w | g0 | g1
    std::string replay;                // certify: verify this certificate file
    std::uint32_t host_from = 0, host_to = 0; // scan range
    std::uint64_t max_resamples = 0;   // lll-embed; 0 = 100 x event count
    bool allow_big_search = false;     // lift the oracle desk-scale guards
    std::string out;                   // empty = stdout
    OutputFormat format = OutputFormat::json;
};

/// Parse "clique:5", "bipartite:3x4", "random:n=20,m=40", "regular:n=20,d=3",
/// "path:101", "star:6", or load a pattern file.
Pattern resolve_pattern(const std::string& spec, std::uint64_t seed);

/// "0x..." hex or decimal.
std::uint64_t parse_seed(const std::string& text);

/// Execute the run: 0 success, 1 search/pipeline failure, 2 usage error
/// (thrown as std::invalid_argument and mapped by the caller).
int run(const RunSpec& spec);

} // namespace setmap
