#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spreadnet/cli.hpp"
#include "spreadnet/graphgen.hpp"
#include "spreadnet/io.hpp"

namespace {

using spreadnet::cli::CommandResult;
using spreadnet::cli::ExperimentConfig;
using spreadnet::cli::OutputOptions;

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<double> tolerance;
    bool no_svg = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_config = true) {
    if (with_config) cmd->add_option("--config", flags.config_path, "Config file path")->required();
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_option("--seed", flags.seed, "Override the config seed");
    cmd->add_option("--runs", flags.runs, "Override the number of replicates");
    cmd->add_option("--tolerance", flags.tolerance, "Comparison tolerance (default max(0.015, 4*stderr))");
    cmd->add_flag("--no-svg", flags.no_svg, "Skip SVG output");
}

OutputOptions output_options(const CommonFlags& flags) {
    OutputOptions out;
    out.out_dir = flags.out_dir;
    out.write_svg = !flags.no_svg;
    out.tolerance = flags.tolerance;
    return out;
}

int report(const CommandResult& result) {
    for (const auto& f : result.files) std::cout << "wrote " << f << "\n";
    std::cout << "sup_deviation " << spreadnet::io::format_double(result.sup_deviation)
              << "  max_stderr " << spreadnet::io::format_double(result.max_stderr) << "  runtime "
              << spreadnet::io::format_double(result.runtime_seconds) << "s\n";
    if (result.tolerance_applies) {
        std::cout << (result.pass ? "PASS" : "FAIL") << " (tolerance "
                  << spreadnet::io::format_double(result.tolerance) << ")\n";
        return result.pass ? 0 : 2;
    }
    return 0;
}

ExperimentConfig load_config(const CommonFlags& flags, spreadnet::cli::Mode mode) {
    ExperimentConfig cfg = spreadnet::cli::parse_config_file(flags.config_path);
    cfg.mode = mode;
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.runs) cfg.runs = *flags.runs;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bass/SI spreading on random networks: simulator, exact ODE curves, comparisons"};
    app.require_subcommand(1);

    CommonFlags fig_flags;
    std::string figure_id;
    bool print_config = false;
    auto* fig = app.add_subcommand("figure", "Reproduce a preset figure (fig1a..fig9d)");
    fig->add_option("id", figure_id, "Figure id, or 'list'")->required();
    fig->add_flag("--print-config", print_config, "Print the preset config instead of running it");
    add_common(fig, fig_flags, false);

    CommonFlags run_flags;
    auto* run = app.add_subcommand("run", "Run an experiment config (mode taken from the file)");
    add_common(run, run_flags);

    CommonFlags sim_flags;
    auto* simc = app.add_subcommand("simulate", "Ensemble simulation -> CSV");
    add_common(simc, sim_flags);

    CommonFlags ana_flags;
    auto* ana = app.add_subcommand("analytic", "Analytic curve -> CSV");
    add_common(ana, ana_flags);

    CommonFlags cmp_flags;
    auto* cmp = app.add_subcommand("compare", "Simulation vs analytic curve; nonzero exit on deviation");
    add_common(cmp, cmp_flags);

    CommonFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep of a scalar metric -> CSV");
    add_common(sweep, sweep_flags);

    CommonFlags cyc_flags;
    auto* cyc = app.add_subcommand("cycles", "Empirical cycle counts vs predictions -> CSV");
    add_common(cyc, cyc_flags);

    std::string graph_out;
    std::string family_spec;
    std::uint64_t graph_seed = 1;
    auto* graph = app.add_subcommand("graph", "Generate a graph and cache it as an edge list");
    graph->add_option("family", family_spec, "er:M:lambda | dreg:M:d | torus:D:side | cycle:M | complete:M | isolated:M")
        ->required();
    graph->add_option("--seed", graph_seed, "Generator seed");
    graph->add_option("--out", graph_out, "Output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fig->parsed()) {
            if (figure_id == "list") {
                for (const auto& [id, text] : spreadnet::cli::figure_presets()) std::cout << id << "\n";
                return 0;
            }
            if (print_config) {
                std::cout << spreadnet::cli::figure_presets().at(figure_id);
                return 0;
            }
            return report(spreadnet::cli::run_figure(figure_id, output_options(fig_flags), fig_flags.runs,
                                                     fig_flags.seed));
        }
        if (run->parsed()) {
            ExperimentConfig cfg = spreadnet::cli::parse_config_file(run_flags.config_path);
            if (run_flags.seed) cfg.seed = *run_flags.seed;
            if (run_flags.runs) cfg.runs = *run_flags.runs;
            cfg.validate();
            return report(spreadnet::cli::run_experiment(cfg, output_options(run_flags)));
        }
        if (simc->parsed())
            return report(spreadnet::cli::run_simulate(load_config(sim_flags, spreadnet::cli::Mode::simulate),
                                                       output_options(sim_flags)));
        if (ana->parsed())
            return report(spreadnet::cli::run_analytic(load_config(ana_flags, spreadnet::cli::Mode::analytic),
                                                       output_options(ana_flags)));
        if (cmp->parsed())
            return report(spreadnet::cli::run_compare(load_config(cmp_flags, spreadnet::cli::Mode::compare),
                                                      output_options(cmp_flags)));
        if (sweep->parsed())
            return report(spreadnet::cli::run_sweep(load_config(sweep_flags, spreadnet::cli::Mode::sweep),
                                                    output_options(sweep_flags)));
        if (cyc->parsed())
            return report(spreadnet::cli::run_cycles(load_config(cyc_flags, spreadnet::cli::Mode::cycles),
                                                     output_options(cyc_flags)));
        if (graph->parsed()) {
            auto next = [&family_spec]() {
                const auto pos = family_spec.find(':');
                std::string head = family_spec.substr(0, pos);
                family_spec = pos == std::string::npos ? "" : family_spec.substr(pos + 1);
                return head;
            };
            const std::string kind = next();
            spreadnet::gen::GraphFamily family;
            if (kind == "er") {
                const int m = std::stoi(next());
                family = spreadnet::gen::GraphFamily::er(m, std::stod(next()));
            } else if (kind == "dreg") {
                const int m = std::stoi(next());
                family = spreadnet::gen::GraphFamily::dreg(m, std::stoi(next()));
            } else if (kind == "torus") {
                const int dim = std::stoi(next());
                family = spreadnet::gen::GraphFamily::torus(dim, std::stoi(next()));
            } else if (kind == "cycle") {
                family = spreadnet::gen::GraphFamily::cycle(std::stoi(next()));
            } else if (kind == "complete") {
                family = spreadnet::gen::GraphFamily::complete(std::stoi(next()));
            } else if (kind == "isolated") {
                family = spreadnet::gen::GraphFamily::isolated(std::stoi(next()));
            } else {
                std::cerr << "unknown family '" << kind << "'\n";
                return 1;
            }
            const auto g = spreadnet::gen::build_graph(family, graph_seed);
            spreadnet::io::write_edge_list_file(g, graph_out);
            std::cout << "wrote " << graph_out << " (" << g.node_count() << " nodes, " << g.edge_count()
                      << " edges)\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
