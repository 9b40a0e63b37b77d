#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pod/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"polar orbit decoding simulator"};
    app.require_subcommand(1);

    std::string config_path, code_sel, perm_file, out_override;
    std::uint64_t seed_override = 0;
    bool have_seed = false;

    CLI::App* sim = app.add_subcommand("simulate", "run a BLER experiment from a config file");
    sim->add_option("--config", config_path, "experiment config file")->required();
    sim->add_option("--seed", seed_override, "override the config seed")
        ->each([&](const std::string&) { have_seed = true; });
    sim->add_option("--out", out_override, "override the CSV output path");

    CLI::App* insp = app.add_subcommand("inspect", "dump the polar transform of a code");
    insp->add_option("--code", code_sel, "builtin name or generator matrix file")->required();
    insp->add_option("--perm", perm_file, "base permutation file (identity otherwise)");

    CLI::App* ginfo = app.add_subcommand("group-info", "automorphism group summary");
    ginfo->add_option("--code", code_sel, "builtin name or generator matrix file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) {
            pod::ExperimentConfig cfg = pod::ExperimentConfig::parse_file(config_path);
            if (have_seed) cfg.seed = seed_override;
            if (!out_override.empty()) cfg.out = out_override;
            return pod::cmd_simulate(cfg, std::cerr);
        }
        if (insp->parsed()) return pod::cmd_inspect(code_sel, perm_file, std::cout, std::cerr);
        return pod::cmd_group_info(code_sel, std::cout, std::cerr);
    } catch (const pod::CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const pod::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
