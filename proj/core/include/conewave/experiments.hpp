#ifndef CONEWAVE_EXPERIMENTS_HPP
#define CONEWAVE_EXPERIMENTS_HPP

#include "conewave/config.hpp"
#include "conewave/cross_section.hpp"

#include <string>
#include <vector>

namespace conewave {

struct RunResult {
    std::vector<std::string> artifacts;
    std::vector<std::string> summary;
};

// Parses and cross-checks every key of the config (unknown keys rejected,
// referenced objects constructible) without producing outputs.
void validate_experiment(const Config& cfg);

// Runs the configured experiment.  output_override (when nonempty) replaces
// output.directory; threads > 1 parallelizes grid sweeps.
RunResult run_experiment(const Config& cfg, const std::string& output_override, int threads);

// Cone description shared by the experiments.
struct ConeSetup {
    int n = 3;
    CrossSection cs;
    ConformalProfile profile;
    int J = 20;
    double ebar = 0.0;
};

ConeSetup cone_from_config(const Config& cfg);

// Reference numbers for the test suite, computed from closed forms and
// brute-force enumeration only (`oracle` subcommand).
std::vector<std::string> oracle_reference_lines();

} // namespace conewave

#endif
