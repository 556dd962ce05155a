#include "setmap/cli.hpp"

#include "setmap/algorithm1.hpp"
#include "setmap/lll.hpp"
#include "setmap/oracle.hpp"
#include "setmap/pipeline.hpp"
#include "setmap/report.hpp"
#include "setmap/rng.hpp"
#include "setmap/well_loaded.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace setmap {

namespace {

    using ordered_json = nlohmann::ordered_json;

    // seed split tags; all run randomness descends from the single CLI seed
    constexpr std::uint64_t kTagPattern = 0x70617474;  // "patt"
    constexpr std::uint64_t kTagMapping = 0x6d617070;  // "mapp"
    constexpr std::uint64_t kTagPipeline = 0x70697065; // "pipe"

    std::string read_file(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::invalid_argument("cannot open file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    bool looks_like_generator(const std::string& spec)
    {
        const auto colon = spec.find(':');
        if (colon == std::string::npos)
            return spec == "auto";
        const std::string head = spec.substr(0, colon);
        return head == "clique" || head == "path" || head == "star" || head == "bipartite" ||
               head == "random" || head == "regular";
    }

    std::uint64_t parse_u64(const std::string& text, const std::string& what)
    {
        std::uint64_t v = 0;
        const char* b = text.data();
        const char* e = text.data() + text.size();
        std::from_chars_result r{};
        if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
            r = std::from_chars(b + 2, e, v, 16);
        else
            r = std::from_chars(b, e, v, 10);
        if (r.ec != std::errc() || r.ptr != e)
            throw std::invalid_argument("bad " + what + ": " + text);
        return v;
    }

    // key=value,key=value
    std::uint64_t named_param(const std::string& params, const std::string& key)
    {
        std::istringstream in(params);
        std::string item;
        while (std::getline(in, item, ',')) {
            const auto eq = item.find('=');
            if (eq != std::string::npos && item.substr(0, eq) == key)
                return parse_u64(item.substr(eq + 1), "parameter " + key);
        }
        throw std::invalid_argument("generator spec is missing parameter '" + key + "'");
    }

} // namespace

std::uint64_t parse_seed(const std::string& text)
{
    return parse_u64(text, "seed");
}

Pattern resolve_pattern(const std::string& spec, std::uint64_t seed)
{
    if (!looks_like_generator(spec))
        return parse_pattern(read_file(spec));
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string params = spec.substr(colon + 1);
    if (head == "clique")
        return gen_clique(static_cast<std::uint32_t>(parse_u64(params, "clique size")));
    if (head == "path")
        return gen_path(static_cast<std::uint32_t>(parse_u64(params, "path length")));
    if (head == "star")
        return gen_star(static_cast<std::uint32_t>(parse_u64(params, "star leaves")));
    if (head == "bipartite") {
        const auto x = params.find('x');
        if (x == std::string::npos)
            throw std::invalid_argument("bipartite spec must be bipartite:AxB");
        return gen_complete_bipartite(
            static_cast<std::uint32_t>(parse_u64(params.substr(0, x), "bipartite side")),
            static_cast<std::uint32_t>(parse_u64(params.substr(x + 1), "bipartite side")));
    }
    if (head == "random")
        return gen_random(static_cast<std::uint32_t>(named_param(params, "n")),
                          named_param(params, "m"), seed);
    if (head == "regular")
        return gen_regular(static_cast<std::uint32_t>(named_param(params, "n")),
                           static_cast<std::uint32_t>(named_param(params, "d")), seed);
    throw std::invalid_argument("unknown pattern generator: " + head);
}

namespace {

    struct ResolvedMapping {
        SetMapping f;
        std::string source; // for the spec block
    };

    ResolvedMapping resolve_mapping(const RunSpec& spec, std::uint32_t host,
                                    std::uint32_t arity, std::uint32_t ell,
                                    std::uint64_t mapping_seed)
    {
        const std::string& ms = spec.mapping;
        if (!looks_like_generator(ms)) {
            SetMapping f = parse_mapping(read_file(ms));
            if (host != 0 && f.host_size() != host)
                throw std::invalid_argument(
                    "mapping file disagrees on N: file has N=" + std::to_string(f.host_size()) +
                    " but the run resolved N=" + std::to_string(host));
            return {std::move(f), ms};
        }
        std::string kind = ms == "auto" ? "disjoint" : ms.substr(ms.find(':') + 1);
        if (kind == "disjoint")
            return {gen_uniform_disjoint(host, arity, ell, mapping_seed, spec.backing),
                    "random:disjoint"};
        if (kind == "disjoint-edge")
            return {gen_random_disjoint_edge(host, mapping_seed, spec.backing),
                    "random:disjoint-edge"};
        if (kind == "incident")
            return {gen_random_incident_edge(host, mapping_seed, spec.backing),
                    "random:incident"};
        throw std::invalid_argument("unknown mapping generator: " + ms);
    }

    std::string resolve_out_path(const std::string& out)
    {
        if (out.empty())
            return out;
        if (out.front() == '/')
            return out;
        if (const char* dir = std::getenv("SETMAP_OUT_DIR"); dir && *dir)
            return std::string(dir) + "/" + out;
        return out;
    }

    void write_output(const RunSpec& spec, const std::string& payload)
    {
        const std::string path = resolve_out_path(spec.out);
        if (path.empty()) {
            std::cout << payload;
            return;
        }
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::invalid_argument("cannot write output file: " + path);
        out << payload;
    }

    const char* subcommand_name(Subcommand s)
    {
        switch (s) {
        case Subcommand::embed: return "embed";
        case Subcommand::lll_embed: return "lll-embed";
        case Subcommand::oracle: return "oracle";
        case Subcommand::certify: return "certify";
        case Subcommand::scan: return "scan";
        case Subcommand::measure: return "measure";
        case Subcommand::gen_graph: return "gen-graph";
        case Subcommand::gen_mapping: return "gen-mapping";
        }
        return "?";
    }

    ordered_json spec_block(const RunSpec& spec, const Pattern* g, std::uint32_t host,
                            const std::string& mapping_source)
    {
        ordered_json j;
        j["subcommand"] = subcommand_name(spec.subcommand);
        j["pattern"] = spec.pattern;
        if (g) {
            j["pattern_vertices"] = g->vertex_count();
            j["pattern_edges"] = g->edge_count();
            j["pattern_uniformity"] = g->uniformity();
        }
        j["mapping"] = mapping_source;
        j["N"] = host;
        j["C"] = spec.host == 0 ? spec.multiplier : 0;
        j["ell"] = spec.ell;
        j["seed"] = spec.seed;
        j["trials"] = spec.trials;
        j["max_retries"] = spec.max_retries;
        j["diagnostics"] = spec.diagnostics;
        j["fresh_mapping"] = spec.fresh_mapping;
        j["reduce"] = spec.reduce;
        return j;
    }

    int run_embed(const RunSpec& spec)
    {
        const Pattern g = resolve_pattern(spec.pattern, absorb(spec.seed, kTagPattern));
        if (g.uniformity() != 2)
            throw std::invalid_argument("embed: 2-uniform patterns only");
        const std::uint32_t m = g.edge_count();
        std::uint32_t ell = spec.ell;
        const std::uint32_t host =
            spec.host != 0 ? spec.host
                           : spec.multiplier * ell * m;

        std::optional<ResolvedMapping> shared;
        std::optional<WellLoadedSet> shared_x;
        if (!spec.fresh_mapping) {
            shared = resolve_mapping(spec, host, 2, ell, absorb(spec.seed, kTagMapping));
            if (spec.reduce)
                shared->f = reduce_to_disjoint(shared->f);
            if (shared->f.overlap_budget() != 0)
                throw std::invalid_argument(
                    "embed: mapping has a > 0; pass --reduce to apply the f -> f' reduction");
            shared_x = well_loaded(shared->f);
        }

        std::vector<PipelineReport> reports(spec.trials);
        std::vector<std::string> errors(spec.trials);
        #pragma omp parallel for schedule(dynamic)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(spec.trials); ++t) {
            try {
                const std::uint64_t st = subseed(spec.seed, static_cast<std::uint64_t>(t));
                PipelineConfig cfg;
                cfg.max_retries = spec.max_retries;
                cfg.diagnostics = spec.diagnostics;
                cfg.seed = absorb(st, kTagPipeline);
                if (spec.fresh_mapping) {
                    ResolvedMapping rm =
                        resolve_mapping(spec, host, 2, ell, absorb(st, kTagMapping));
                    if (spec.reduce)
                        rm.f = reduce_to_disjoint(rm.f);
                    if (rm.f.overlap_budget() != 0)
                        throw std::invalid_argument(
                            "embed: mapping has a > 0; pass --reduce to apply the reduction");
                    reports[t] = embed_pipeline(g, rm.f, cfg);
                } else {
                    reports[t] = embed_pipeline(g, shared->f, cfg, *shared_x);
                }
            } catch (const std::exception& e) {
                errors[t] = e.what();
            }
        }
        for (const auto& err : errors)
            if (!err.empty())
                throw std::invalid_argument(err);

        std::vector<TrialRow> rows;
        std::vector<std::uint32_t> retry_histogram(spec.max_retries + 1, 0);
        std::uint32_t successes = 0;
        for (std::uint32_t t = 0; t < spec.trials; ++t) {
            const auto& r = reports[t];
            TrialRow row;
            row.seed = subseed(spec.seed, t);
            row.host = r.host_size;
            row.multiplier = spec.host == 0 ? spec.multiplier : 0;
            row.ell = r.image_size;
            row.retries = r.attempts;
            row.success = r.success;
            row.rej_a = r.rejects.injective;
            row.rej_b = r.rejects.forbidden;
            row.rej_c = r.rejects.image_hit;
            row.prop1_ok = r.size_window_final;
            row.prop2_max_ratio = r.overlap_max_ratio;
            row.prop3_max_ratio = r.pair_max_ratio;
            rows.push_back(row);
            if (r.success) {
                ++successes;
                ++retry_histogram[r.attempts];
            }
        }

        if (spec.format == OutputFormat::csv) {
            write_output(spec, emit_csv(rows));
        } else {
            ordered_json j;
            j["spec"] = spec_block(spec, &g, host,
                                   spec.fresh_mapping ? spec.mapping : shared.source);
            j["trials"] = ordered_json::array();
            for (std::uint32_t t = 0; t < spec.trials; ++t) {
                const auto& r = reports[t];
                ordered_json jt;
                jt["trial"] = t;
                jt["seed"] = rows[t].seed;
                jt["N"] = r.host_size;
                jt["ell"] = r.image_size;
                jt["retries"] = r.attempts;
                jt["success"] = r.success;
                jt["rejects"]["injective"] = r.rejects.injective;
                jt["rejects"]["forbidden"] = r.rejects.forbidden;
                jt["rejects"]["image_hit"] = r.rejects.image_hit;
                jt["prop1_ok"] = r.size_window_final;
                if (r.overlap_max_ratio >= 0)
                    jt["prop2_max_ratio"] = r.overlap_max_ratio;
                jt["prop3_max_ratio"] = r.pair_max_ratio;
                if (r.success)
                    jt["embedding"] = r.embedding;
                j["trials"].push_back(std::move(jt));
            }
            j["summary"]["successes"] = successes;
            j["summary"]["success_rate"] =
                spec.trials ? static_cast<double>(successes) / spec.trials : 0.0;
            j["summary"]["retry_histogram"] = retry_histogram;
            write_output(spec, j.dump(2) + "\n");
        }
        return successes > 0 ? 0 : 1;
    }

    int run_lll(const RunSpec& spec)
    {
        const Pattern g = resolve_pattern(spec.pattern, absorb(spec.seed, kTagPattern));
        const std::uint32_t k = g.uniformity();
        const std::uint64_t required = required_host_size(g);
        const std::uint32_t host =
            spec.host != 0 ? spec.host : static_cast<std::uint32_t>(required);

        // images are host edges here: l = k, a = 0
        ResolvedMapping rm = resolve_mapping(spec, host, k, k, absorb(spec.seed, kTagMapping));
        const LllProblem problem(g, std::move(rm.f));
        const LllCondition cond = lll_condition(g, host);
        if (!cond.holds)
            std::cerr << "warning: e*p*(d+1) = "
                      << std::numbers::e * cond.p * (cond.d + 1.0) << " > 1 at N=" << host
                      << "; resampling may not terminate quickly\n";

        std::vector<MoserTardosResult> results(spec.trials);
        #pragma omp parallel for schedule(dynamic)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(spec.trials); ++t) {
            const std::uint64_t st = subseed(spec.seed, static_cast<std::uint64_t>(t));
            results[t] = moser_tardos(problem, absorb(st, kTagPipeline), spec.max_resamples);
        }

        std::uint32_t successes = 0;
        for (const auto& r : results)
            successes += r.success ? 1 : 0;

        if (spec.format == OutputFormat::csv) {
            std::ostringstream out;
            out << "seed,N,iterations,success,collision_resamples,image_resamples\n";
            for (std::uint32_t t = 0; t < spec.trials; ++t) {
                const auto& r = results[t];
                out << subseed(spec.seed, t) << ',' << host << ',' << r.iterations << ','
                    << (r.success ? 1 : 0) << ',' << r.collision_resamples << ','
                    << r.image_resamples << '\n';
            }
            write_output(spec, out.str());
        } else {
            ordered_json j;
            j["spec"] = spec_block(spec, &g, host, rm.source);
            j["required_host_size"] = required;
            j["condition"]["p"] = cond.p;
            j["condition"]["d"] = cond.d;
            j["condition"]["holds"] = cond.holds;
            j["event_count"] = problem.event_count();
            j["trials"] = ordered_json::array();
            for (std::uint32_t t = 0; t < spec.trials; ++t) {
                const auto& r = results[t];
                ordered_json jt;
                jt["trial"] = t;
                jt["seed"] = subseed(spec.seed, t);
                jt["iterations"] = r.iterations;
                jt["success"] = r.success;
                jt["collision_resamples"] = r.collision_resamples;
                jt["image_resamples"] = r.image_resamples;
                if (r.success)
                    jt["assignment"] = r.assignment;
                j["trials"].push_back(std::move(jt));
            }
            j["summary"]["successes"] = successes;
            write_output(spec, j.dump(2) + "\n");
        }
        return successes > 0 ? 0 : 1;
    }

    int run_oracle(const RunSpec& spec)
    {
        const Pattern g = resolve_pattern(spec.pattern, absorb(spec.seed, kTagPattern));
        if (spec.host == 0)
            throw std::invalid_argument("oracle: --N is required");
        SearchLimits limits;
        if (spec.allow_big_search) {
            limits.max_pattern_vertices = 16;
            limits.max_host = 32;
        }
        ResolvedMapping rm =
            resolve_mapping(spec, spec.host, 2, spec.ell, absorb(spec.seed, kTagMapping));
        const SetMapping f = rm.f.is_dense() ? std::move(rm.f) : rm.f.densified();

        SearchStats stats;
        std::optional<std::vector<std::uint32_t>> copy;
        if (spec.oracle_mode == "clean")
            copy = find_clean_copy(g, f, spec.host, &stats, limits);
        else if (spec.oracle_mode == "ffree")
            copy = find_f_free_copy(g, f, spec.host, &stats, limits);
        else
            throw std::invalid_argument("oracle: --mode must be clean or ffree");

        ordered_json j;
        j["spec"] = spec_block(spec, &g, spec.host, rm.source);
        j["mode"] = spec.oracle_mode;
        j["found"] = copy.has_value();
        if (copy)
            j["embedding"] = *copy;
        j["nodes"] = stats.nodes;
        write_output(spec, j.dump(2) + "\n");
        return 0;
    }

    int run_certify(const RunSpec& spec)
    {
        SearchLimits limits;
        if (spec.allow_big_search) {
            limits.max_pattern_vertices = 16;
            limits.max_host = 32;
        }
        if (!spec.replay.empty()) {
            const Certificate cert = parse_certificate(read_file(spec.replay));
            const bool ok = replay_certificate(cert, limits);
            ordered_json j;
            j["replay"] = spec.replay;
            j["verified"] = ok;
            write_output(spec, j.dump(2) + "\n");
            return ok ? 0 : 1;
        }

        const Pattern g = resolve_pattern(spec.pattern, absorb(spec.seed, kTagPattern));
        if (spec.host == 0)
            throw std::invalid_argument("certify: --N is required");
        const BoundKind kind = bound_kind_from_name(spec.bound_kind);
        const auto cert =
            certify_lower_bound(g, spec.host, kind, spec.ell, spec.trials, spec.seed, limits);
        if (!cert) {
            ordered_json j;
            j["spec"] = spec_block(spec, &g, spec.host, spec.mapping);
            j["kind"] = spec.bound_kind;
            j["found"] = false;
            write_output(spec, j.dump(2) + "\n");
            return 1;
        }
        write_output(spec, serialize_certificate(*cert));
        return 0;
    }

    int run_scan(const RunSpec& spec)
    {
        const Pattern g = resolve_pattern(spec.pattern, absorb(spec.seed, kTagPattern));
        SearchLimits limits;
        if (spec.allow_big_search) {
            limits.max_pattern_vertices = 16;
            limits.max_host = 32;
        }
        std::vector<ScanRow> rows;
        if (spec.host_from <= spec.host_to && spec.host_from > 0)
            rows = scan_w(g, spec.host_from, spec.host_to, spec.trials, spec.ell, spec.seed,
                          limits);

        if (spec.format == OutputFormat::csv) {
            std::ostringstream out;
            out << "N,trials,admitting,fraction,ci_low,ci_high\n";
            for (const auto& r : rows)
                out << r.host << ',' << r.trials << ',' << r.admitting << ','
                    << format_ratio(r.fraction) << ',' << format_ratio(r.ci_low) << ','
                    << format_ratio(r.ci_high) << '\n';
            write_output(spec, out.str());
        } else {
            ordered_json j;
            j["spec"] = spec_block(spec, &g, 0, spec.mapping);
            j["rows"] = ordered_json::array();
            for (const auto& r : rows) {
                ordered_json jr;
                jr["N"] = r.host;
                jr["trials"] = r.trials;
                jr["admitting"] = r.admitting;
                jr["fraction"] = r.fraction;
                jr["ci_low"] = r.ci_low;
                jr["ci_high"] = r.ci_high;
                j["rows"].push_back(std::move(jr));
            }
            write_output(spec, j.dump(2) + "\n");
        }
        return 0;
    }

    int run_measure(const RunSpec& spec)
    {
        const Pattern g = resolve_pattern(spec.pattern, absorb(spec.seed, kTagPattern));
        const std::uint32_t m = g.edge_count();
        const std::uint32_t host =
            spec.host != 0 ? spec.host : spec.multiplier * spec.ell * m;
        ResolvedMapping rm =
            resolve_mapping(spec, host, 2, spec.ell, absorb(spec.seed, kTagMapping));
        if (spec.reduce)
            rm.f = reduce_to_disjoint(rm.f);
        const PropertyStats stats =
            measure_properties(g, rm.f, absorb(spec.seed, kTagPipeline), spec.trials);

        if (spec.format == OutputFormat::csv) {
            std::ostringstream out;
            out << "trials,prop1_rate,prop2_rate,prop3_rate,algorithm_success_rate,"
                   "prop2_ratio_max,prop3_ratio_max\n";
            const double n = stats.trials ? stats.trials : 1;
            out << stats.trials << ',' << format_ratio(stats.size_window_pass / n) << ','
                << format_ratio(stats.overlap_pass / n) << ','
                << format_ratio(stats.pair_bound_pass / n) << ','
                << format_ratio(stats.algorithm_success / n) << ','
                << format_ratio(stats.overlap_ratio_max) << ','
                << format_ratio(stats.pair_ratio_max) << '\n';
            write_output(spec, out.str());
        } else {
            ordered_json j;
            j["spec"] = spec_block(spec, &g, host, rm.source);
            j["trials"] = stats.trials;
            j["prop1_pass"] = stats.size_window_pass;
            j["prop2_pass"] = stats.overlap_pass;
            j["prop3_pass"] = stats.pair_bound_pass;
            j["algorithm_success"] = stats.algorithm_success;
            j["prop2_ratio_max"] = stats.overlap_ratio_max;
            j["prop3_ratio_max"] = stats.pair_ratio_max;
            j["prop2_ratio_mean"] = stats.overlap_ratio_mean;
            j["prop3_ratio_mean"] = stats.pair_ratio_mean;
            write_output(spec, j.dump(2) + "\n");
        }
        return 0;
    }

    int run_gen_graph(const RunSpec& spec)
    {
        const Pattern g = resolve_pattern(spec.pattern, absorb(spec.seed, kTagPattern));
        write_output(spec, serialize_pattern(g));
        return 0;
    }

    int run_gen_mapping(const RunSpec& spec)
    {
        if (spec.host == 0)
            throw std::invalid_argument("gen-mapping: --N is required");
        RunSpec local = spec;
        local.backing = Backing::dense; // mapping files are dense
        ResolvedMapping rm = resolve_mapping(local, spec.host, spec.arity, spec.ell,
                                             absorb(spec.seed, kTagMapping));
        write_output(spec, serialize_mapping(rm.f));
        return 0;
    }

} // namespace

int run(const RunSpec& spec)
{
    switch (spec.subcommand) {
    case Subcommand::embed: return run_embed(spec);
    case Subcommand::lll_embed: return run_lll(spec);
    case Subcommand::oracle: return run_oracle(spec);
    case Subcommand::certify: return run_certify(spec);
    case Subcommand::scan: return run_scan(spec);
    case Subcommand::measure: return run_measure(spec);
    case Subcommand::gen_graph: return run_gen_graph(spec);
    case Subcommand::gen_mapping: return run_gen_mapping(spec);
    }
    throw std::logic_error("unreachable");
}

} // namespace setmap
