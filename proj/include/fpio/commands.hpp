#pragma once

// Scanner subcommands. Each turns a scenario into a table; rows of a sweep
// are evaluated in parallel and always emitted in index order.

#include <optional>

#include "fpio/format.hpp"
#include "fpio/scenario.hpp"

namespace fpio {

struct RunOptions {
    unsigned threads = 1;
    /// Overrides grid.count when set.
    std::optional<std::size_t> grid_count;
};

/// --threads if given, else FPIO_THREADS, else the hardware concurrency.
unsigned resolve_threads(std::optional<long> flag);

Table cmd_matrices(const ScenarioConfig& config, const RunOptions& options);
Table cmd_sweep(const ScenarioConfig& config, const RunOptions& options);
Table cmd_two_photon(const ScenarioConfig& config, const RunOptions& options);
Table cmd_one_photon(const ScenarioConfig& config, const RunOptions& options);
Table cmd_gram(const ScenarioConfig& config, const RunOptions& options);

}  // namespace fpio
