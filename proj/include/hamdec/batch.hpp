#pragma once

// Independent solver runs over many instances. Jobs share nothing; each run
// owns its cover pair and generator, so results do not depend on scheduling.

#include "hamdec/gvns.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hamdec {

struct SolveJob {
    HamiltonianCycle x;
    HamiltonianCycle y;
    Algorithm algo = Algorithm::GVNS;
    SolverParams params;
};

struct JobResult {
    std::optional<SolveOutcome> outcome;
    /// Set when the run threw.
    std::string error;
};

/// OpenMP over jobs; threads <= 0 uses the runtime default.
auto solve_batch(std::span<const SolveJob> jobs, int threads = 0) -> std::vector<JobResult>;

/// Reference implementation, one job after another.
auto solve_batch_serial(std::span<const SolveJob> jobs) -> std::vector<JobResult>;

} // namespace hamdec
