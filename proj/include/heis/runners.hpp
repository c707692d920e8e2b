#pragma once

// Batch experiment drivers behind the CLI subcommands. Each writes its
// artifacts into the config's output directory and returns the file list.

#include "heis/config.hpp"

namespace heis {

struct RunOutcome {
    std::vector<std::string> files;
    std::string summary;  // one-line human summary
};

// throws std::invalid_argument listing every violated guard
void require_valid(const ExperimentConfig& c);

RunOutcome cmd_t1(const ExperimentConfig& c);
RunOutcome cmd_ab(const ExperimentConfig& c);
RunOutcome cmd_curves(const ExperimentConfig& c);
RunOutcome cmd_potential(const ExperimentConfig& c);
RunOutcome cmd_cubes(const ExperimentConfig& c);

}  // namespace heis
