#include <string>

#include <CLI11.hpp>

#include "oscillab/cli/commands.hpp"
#include "oscillab/cli/verify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"oscillab: numerical laboratory for lambda-deformed and "
                 "nonstandard-Lagrangian oscillators"};
    app.require_subcommand(1);

    std::string sim_config;
    auto* sim = app.add_subcommand("simulate", "integrate a scenario, write CSV + drift report");
    sim->add_option("config", sim_config, "scenario config (JSON)")->required();

    std::string spec_config;
    auto* spec = app.add_subcommand("spectrum", "ladder vs diagonalized quantum spectrum");
    spec->add_option("config", spec_config, "spectrum config (JSON)")->required();

    std::string suite = "all";
    std::uint64_t seed = oscillab::cli::kDefaultSeed;
    int jobs = 1;
    auto* ver = app.add_subcommand("verify", "run a deterministic verification suite");
    ver->add_option("suite", suite,
                    "identities | brackets | exact_solutions | isochrony | all");
    ver->add_option("--seed", seed, "seed for random sampling");
    ver->add_option("--jobs", jobs, "number of worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? oscillab::cli::kExitConfig : oscillab::cli::kExitOk;
    }

    if (sim->parsed()) return oscillab::cli::cmd_simulate(sim_config);
    if (spec->parsed()) return oscillab::cli::cmd_spectrum(spec_config);
    return oscillab::cli::cmd_verify(suite, seed, jobs);
}
