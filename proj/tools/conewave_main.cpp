// conewave: config-driven experiments for spectral kernels on metric cones.
//
// Subcommands:
//   run <config>       run an experiment, write CSV/SVG artifacts
//   validate <config>  parse and cross-check a config without running
//   oracle             print closed-form reference numbers for the test suite
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include "conewave/config.hpp"
#include "conewave/errors.hpp"
#include "conewave/experiments.hpp"
#include "conewave/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"conewave: spectral kernels on metric cones"};
    app.set_version_flag("--version", std::string("conewave ") + conewave::version_string);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for grid sweeps")->default_val(1);

    std::string run_config;
    auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
    run_cmd->add_option("config", run_config, "config file path")->required();

    std::string val_config;
    auto* val_cmd = app.add_subcommand("validate", "validate a config file");
    val_cmd->add_option("config", val_config, "config file path")->required();

    std::string oracle_name;
    auto* oracle_cmd = app.add_subcommand("oracle", "print reference numbers");
    oracle_cmd->add_option("name", oracle_name, "filter by name prefix (optional)");

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    const char* env_dir = std::getenv("CONEWAVE_OUTPUT_DIR");
    const std::string override_dir = env_dir ? env_dir : "";

    try {
        if (*run_cmd) {
            const auto cfg = conewave::Config::parse_file(run_config);
            const auto res = conewave::run_experiment(cfg, override_dir, threads);
            for (const auto& a : res.artifacts) std::cout << "wrote " << a << "\n";
            for (const auto& s : res.summary) std::cout << s << "\n";
        } else if (*val_cmd) {
            const auto cfg = conewave::Config::parse_file(val_config);
            conewave::validate_experiment(cfg);
            std::cout << "config ok\n";
        } else if (*oracle_cmd) {
            for (const auto& line : conewave::oracle_reference_lines()) {
                if (oracle_name.empty() || line.rfind(oracle_name, 0) == 0) {
                    std::cout << line << "\n";
                }
            }
        }
    } catch (const conewave::numerical_error& e) {
        std::cerr << "numerical failure in " << e.what() << "\n";
        return 3;
    } catch (const conewave::invalid_parameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
