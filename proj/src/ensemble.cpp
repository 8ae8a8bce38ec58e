#include "mdflow/ensemble.hpp"

#include <exception>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace mdflow {

std::vector<Trajectory> run_ensemble_serial(const Objective& obj,
                                            const Regularizer& reg,
                                            const Region& region,
                                            const NoiseModel& noise,
                                            const Schedule& sched,
                                            const IntegratorConfig& cfg, int n_paths) {
    if (n_paths < 1) throw std::invalid_argument("ensemble: need at least one path");
    std::vector<Trajectory> out(n_paths);
    for (int i = 0; i < n_paths; ++i)
        out[i] = integrate_smd(obj, reg, region, noise, sched, cfg, i);
    return out;
}

std::vector<Trajectory> run_ensemble(const Objective& obj, const Regularizer& reg,
                                     const Region& region, const NoiseModel& noise,
                                     const Schedule& sched, const IntegratorConfig& cfg,
                                     int n_paths, int threads) {
    if (n_paths < 1) throw std::invalid_argument("ensemble: need at least one path");
#if defined(_OPENMP)
    std::vector<Trajectory> out(n_paths);
    std::exception_ptr failure = nullptr;
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < n_paths; ++i) {
        try {
            out[i] = integrate_smd(obj, reg, region, noise, sched, cfg, i);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
#else
    (void)threads;
    return run_ensemble_serial(obj, reg, region, noise, sched, cfg, n_paths);
#endif
}

}  // namespace mdflow
