#pragma once

#include <string>

#include "mdflow/config.hpp"

namespace mdflow {

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 config error, 3 numerical abort
    std::string message;
};

// Runs the configured ensemble and writes, under cfg.output_dir:
//   trajectory_<i>.csv   one per path: t, x_1..x_n, f, f_avg, f_best, fenchel
//   summary.csv          ensemble statistics (key,value rows)
//   config.echo          the resolved configuration incl. derived constants
// Reals are written with 17 significant digits, so re-reading reproduces
// them exactly and reruns with the same seed are byte-identical.
RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace mdflow
