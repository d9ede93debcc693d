#pragma once
// Simulation orchestration: build the grid and stepper from a RunConfig,
// construct initial conditions, advance N = t_final / tau steps, and feed
// snapshots to a sink at the configured cadence.

#include <cstddef>
#include <functional>
#include <vector>

#include "fracrd/config.hpp"
#include "fracrd/core.hpp"
#include "fracrd/etd.hpp"

namespace fracrd {

// Sink contract: (step index, time, species index, physical-space field);
// the field must not be mutated.
using SnapshotSink =
    std::function<void(std::size_t, double, std::size_t, const Field&)>;

struct RunResult {
  std::vector<Field> fields;                  // final physical-space state
  std::vector<std::vector<double>> max_norm;  // [species][k] max |u| at step k
  std::size_t steps = 0;
};

// Initial fields per species for the config's ic selector.
std::vector<Field> make_initial_conditions(const RunConfig& cfg, const Grid& grid);

// Runs the configured scheme for N steps from `initial`. The sink fires at
// every multiple of cfg.snapshot_every (including step 0); snapshot_every = 0
// disables it. Step aborts propagate as SolverAbort with full context.
RunResult run_simulation(const RunConfig& cfg, std::vector<Field> initial,
                         const SnapshotSink& sink = {});

// Convenience overload building the ICs from the config.
RunResult run_simulation(const RunConfig& cfg, const SnapshotSink& sink = {});

}  // namespace fracrd
