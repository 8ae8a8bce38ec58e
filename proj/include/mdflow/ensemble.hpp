#pragma once

#include <vector>

#include "mdflow/dynamics.hpp"

namespace mdflow {

// Integrates `n_paths` independent trajectories, path i keyed by
// (cfg.seed, i). The parallel version distributes paths over OpenMP
// threads; results are ordered by path index and bit-identical to the
// serial reference for any thread count.
std::vector<Trajectory> run_ensemble(const Objective& obj, const Regularizer& reg,
                                     const Region& region, const NoiseModel& noise,
                                     const Schedule& sched, const IntegratorConfig& cfg,
                                     int n_paths, int threads = 0);

// Plain loop, kept as the reference implementation for testing and
// benchmarking the parallel path.
std::vector<Trajectory> run_ensemble_serial(const Objective& obj,
                                            const Regularizer& reg,
                                            const Region& region,
                                            const NoiseModel& noise,
                                            const Schedule& sched,
                                            const IntegratorConfig& cfg, int n_paths);

}  // namespace mdflow
