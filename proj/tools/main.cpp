#include <exception>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "cavarray/errors.hpp"
#include "cavarray/version.hpp"
#include "run_commands.hpp"

using cavarray::cli::CliOptions;

int main(int argc, char** argv) {
    CLI::App app{"Collective cavity scattering by one-dimensional atom arrays"};
    app.set_version_flag("--version", cavarray::kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name

    CliOptions opts;
    app.add_option("-c,--config", opts.config_path,
                   "JSON config file (default: $CAVARRAY_CONFIG, then built-in defaults)");
    app.add_option("--seed", opts.seed, "Override mc.seed");
    app.add_option("--samples", opts.samples, "Override mc.n_samples");
    app.add_option("-o,--output", opts.output, "Output file path");
    app.add_option("--format", opts.format, "Output format: csv or json");
    app.add_option("--model", opts.model, "Scattering model: two-level or multilevel");
    app.add_option("--threads", opts.threads, "Worker thread cap (results are independent of it)")
        ->check(CLI::Range(1, 256));

    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const cavarray::RunConfig&, const CliOptions&);
    };
    const Entry entries[] = {
        {"two-atom-fringe", "Two-atom interference fringe n2/n1 vs separation",
         cavarray::cli::cmd_two_atom_fringe},
        {"offset-sweep", "n_N/(N n_1) vs array displacement from a cavity antinode",
         cavarray::cli::cmd_offset_sweep},
        {"scaling", "Photon number vs atom number for constructive/destructive arrays",
         cavarray::cli::cmd_scaling},
        {"polarization", "Polarizer transmission of the cavity output",
         cavarray::cli::cmd_polarization},
        {"spectrum", "Cavity emission vs probe detuning with Lorentzian fit",
         cavarray::cli::cmd_spectrum},
        {"magic", "Locate the magic atom-cavity detuning", cavarray::cli::cmd_magic},
    };

    int (*selected)(const cavarray::RunConfig&, const CliOptions&) = nullptr;
    for (const auto& entry : entries) {
        CLI::App* sub = app.add_subcommand(entry.name, entry.help);
        sub->callback([&selected, &entry] { selected = entry.run; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const cavarray::RunConfig cfg = cavarray::cli::load_config(opts);
        return selected(cfg, opts);
    } catch (const cavarray::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cavarray::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
