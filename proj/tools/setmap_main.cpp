#include "setmap/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, setmap::RunSpec& spec, std::string& seed_text)
{
    cmd->add_option("--seed", seed_text, "64-bit seed, decimal or 0x-hex");
    cmd->add_option("--out", spec.out,
                    "output file (default stdout; relative paths join $SETMAP_OUT_DIR)");
    std::map<std::string, setmap::OutputFormat> formats{
        {"json", setmap::OutputFormat::json}, {"csv", setmap::OutputFormat::csv}};
    cmd->add_option("--format", spec.format, "report format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

void add_mapping_opts(CLI::App* cmd, setmap::RunSpec& spec)
{
    cmd->add_option("--mapping", spec.mapping,
                    "mapping source: auto | random:disjoint | random:disjoint-edge | "
                    "random:incident | FILE");
    std::map<std::string, setmap::Backing> backings{{"auto", setmap::Backing::automatic},
                                                    {"dense", setmap::Backing::dense},
                                                    {"lazy", setmap::Backing::lazy}};
    cmd->add_option("--backing", spec.backing, "mapping backing")
        ->transform(CLI::CheckedTransformer(backings, CLI::ignore_case));
    cmd->add_flag("--reduce", spec.reduce, "apply the a=1 -> a=0 image reduction first");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"set-mapping embedding toolkit"};
    app.require_subcommand(1);

    setmap::RunSpec spec;
    std::string seed_text = "0";

    auto* embed = app.add_subcommand("embed", "run the randomized embedding pipeline");
    embed->add_option("--pattern", spec.pattern, "pattern file or generator spec")->required();
    embed->add_option("--N", spec.host, "host size (default C*ell*m)");
    embed->add_option("--C", spec.multiplier, "host multiplier for auto sizing");
    embed->add_option("--ell", spec.ell, "image size");
    embed->add_option("--trials", spec.trials, "independent trials");
    embed->add_option("--max-retries", spec.max_retries, "sampling rounds per trial");
    embed->add_flag("--diagnostics", spec.diagnostics, "record property measurements");
    embed->add_flag("--fresh-mapping", spec.fresh_mapping,
                    "derive a new mapping per trial instead of one shared mapping");
    add_mapping_opts(embed, spec);
    add_common(embed, spec, seed_text);

    auto* lll = app.add_subcommand("lll-embed", "embed by local-lemma resampling");
    lll->add_option("--pattern", spec.pattern, "pattern file or generator spec")->required();
    lll->add_option("--N", spec.host, "host size (default 10 k^2 n Delta)");
    lll->add_option("--trials", spec.trials, "independent trials");
    lll->add_option("--max-resamples", spec.max_resamples,
                    "resampling budget (0 = 100 x event count)");
    add_mapping_opts(lll, spec);
    add_common(lll, spec, seed_text);

    auto* oracle = app.add_subcommand("oracle", "exhaustive search at desk scale");
    oracle->add_option("--pattern", spec.pattern, "pattern file or generator spec")->required();
    oracle->add_option("--N", spec.host, "host size")->required();
    oracle->add_option("--ell", spec.ell, "image size for generated mappings");
    oracle->add_option("--mode", spec.oracle_mode, "clean | ffree");
    oracle->add_flag("--allow-big-search", spec.allow_big_search,
                     "lift the n<=8, N<=16 guards (up to N=32)");
    add_mapping_opts(oracle, spec);
    add_common(oracle, spec, seed_text);

    auto* certify = app.add_subcommand("certify", "search for a lower-bound certificate");
    certify->add_option("--pattern", spec.pattern, "pattern file or generator spec");
    certify->add_option("--N", spec.host, "host size");
    certify->add_option("--kind", spec.bound_kind, "w | g0 | g1");
    certify->add_option("--ell", spec.ell, "image size (kind w)");
    certify->add_option("--trials", spec.trials, "mappings to try");
    certify->add_option("--replay", spec.replay, "verify a stored certificate file");
    certify->add_flag("--allow-big-search", spec.allow_big_search, "lift the search guards");
    add_common(certify, spec, seed_text);

    auto* scan = app.add_subcommand("scan", "clean-copy frequency over a host range");
    scan->add_option("--pattern", spec.pattern, "pattern file or generator spec")->required();
    scan->add_option("--N-from", spec.host_from, "first host size")->required();
    scan->add_option("--N-to", spec.host_to, "last host size")->required();
    scan->add_option("--trials", spec.trials, "mappings per host size");
    scan->add_option("--ell", spec.ell, "image size");
    scan->add_flag("--allow-big-search", spec.allow_big_search, "lift the search guards");
    add_common(scan, spec, seed_text);

    auto* measure = app.add_subcommand("measure", "target-set property statistics");
    measure->add_option("--pattern", spec.pattern, "pattern file or generator spec")->required();
    measure->add_option("--N", spec.host, "host size (default C*ell*m)");
    measure->add_option("--C", spec.multiplier, "host multiplier for auto sizing");
    measure->add_option("--ell", spec.ell, "image size");
    measure->add_option("--trials", spec.trials, "sampled partitions");
    add_mapping_opts(measure, spec);
    add_common(measure, spec, seed_text);

    auto* gg = app.add_subcommand("gen-graph", "write a pattern file");
    gg->add_option("--pattern", spec.pattern, "generator spec")->required();
    add_common(gg, spec, seed_text);

    auto* gm = app.add_subcommand("gen-mapping", "write a dense mapping file");
    gm->add_option("--N", spec.host, "host size")->required();
    gm->add_option("--k", spec.arity, "edge arity");
    gm->add_option("--ell", spec.ell, "image size");
    add_mapping_opts(gm, spec);
    add_common(gm, spec, seed_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    if (embed->parsed())
        spec.subcommand = setmap::Subcommand::embed;
    else if (lll->parsed())
        spec.subcommand = setmap::Subcommand::lll_embed;
    else if (oracle->parsed())
        spec.subcommand = setmap::Subcommand::oracle;
    else if (certify->parsed())
        spec.subcommand = setmap::Subcommand::certify;
    else if (scan->parsed())
        spec.subcommand = setmap::Subcommand::scan;
    else if (measure->parsed())
        spec.subcommand = setmap::Subcommand::measure;
    else if (gg->parsed())
        spec.subcommand = setmap::Subcommand::gen_graph;
    else if (gm->parsed())
        spec.subcommand = setmap::Subcommand::gen_mapping;

    try {
        spec.seed = setmap::parse_seed(seed_text);
        return setmap::run(spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
