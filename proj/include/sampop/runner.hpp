#pragma once

#include <string>
#include <vector>

#include "sampop/config.hpp"

namespace sampop {

struct RunOutcome {
    bool all_pass = true;
    int checks = 0;
    int failed = 0;
    std::vector<std::string> artifacts;  // paths written, in emission order
    std::string summary;                 // human table for standard output
};

// Executes the configured suite and writes one CSV per suite run plus one
// SVG per rate table under cfg.out_dir. Zoo members evaluate concurrently
// when cfg.jobs > 1; assembly and file writes stay on the calling thread, so
// artifacts are byte-identical for identical (config, seed) regardless of
// jobs. Throws config_error / numerical_error; verdict failures are returned,
// not thrown.
RunOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace sampop
