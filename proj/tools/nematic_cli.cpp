// nematic: run, sweep and validate experiment configs.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nematic/experiments.hpp"
#include "nematic/hopf.hpp"

int main(int argc, char** argv) {
    using namespace nematic::harness;

    CLI::App app{"Nematic liquid-crystal singularity laboratory"};
    app.require_subcommand(1);

    std::string sim_path;
    std::optional<std::string> sim_out;
    bool no_plots = false;
    auto* sim = app.add_subcommand("simulate", "run one experiment config");
    sim->add_option("config", sim_path, "config file")->required();
    sim->add_option("--out", sim_out, "output directory (overrides output.dir)");
    sim->add_flag("--no-plots", no_plots, "skip SVG plots");

    std::string pattern;
    auto* sw = app.add_subcommand("sweep", "run every config matching a glob, concurrently");
    sw->add_option("glob", pattern, "glob pattern, quoted")->required();

    std::string val_path;
    auto* val = app.add_subcommand("validate", "check a config and print its canonical form");
    val->add_option("config", val_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    if (*sim) return simulate(sim_path, RunOptions{sim_out, no_plots}, std::cerr);
    if (*sw) return sweep(pattern, nematic::hopf::quadrature_threads(), std::cerr);
    return validate_file(val_path, std::cout, std::cerr);
}
