#pragma once

#include <stdexcept>
#include <string>

#include "mdflow/mirror.hpp"
#include "mdflow/noise.hpp"
#include "mdflow/problems.hpp"
#include "mdflow/schedule.hpp"

namespace mdflow {

struct IntegratorConfig {
    double dt = 1e-3;
    double horizon = 1.0;
    uint64_t seed = 0;
    int log_stride = 1;
    Vec y0;  // empty means the origin

    void validate() const {
        if (!(dt > 0)) throw std::invalid_argument("integrator: dt must be positive");
        if (!(horizon > 0)) throw std::invalid_argument("integrator: horizon must be positive");
        if (dt > horizon) throw std::invalid_argument("integrator: dt exceeds horizon");
        if (log_stride < 1) throw std::invalid_argument("integrator: log_stride must be >= 1");
        if (log_stride * dt > horizon)
            throw std::invalid_argument("integrator: log_stride * dt exceeds horizon");
    }
};

struct NumericalAbort : std::runtime_error {
    long step;
    explicit NumericalAbort(long s)
        : std::runtime_error("nonfinite state at step " + std::to_string(s)), step(s) {}
};

struct BestPoint {
    double time = 0.0;
    Vec x;
    double value = 0.0;
};

// Sampled path of one integration. All integral series (f_avg, avg_primal)
// are accumulated trapezoidally over every integration step, then sampled
// at the logging stride; f_best and the best point are tracked over logged
// points only.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> dual;        // Y(t_k)
    std::vector<Vec> primal;      // X(t_k) = Q(eta(t_k) Y(t_k))
    std::vector<Vec> avg_primal;  // t^-1 integral of X
    std::vector<double> f;        // f(X(t_k))
    std::vector<double> f_avg;    // t^-1 integral of f(X)
    std::vector<double> f_best;   // running min of logged f
    std::vector<double> fenchel;  // F(x*, eta Y)/eta when a minimizer is known
    BestPoint best;

    size_t size() const { return times.size(); }
    bool has_fenchel() const { return !fenchel.empty(); }
};

// Deterministic dual-space flow dy = v(x) dt, x = Q(eta0 y), forward Euler.
Trajectory integrate_md(const Objective& obj, const Regularizer& reg,
                        const Region& region, double eta0,
                        const IntegratorConfig& cfg);

// Euler-Maruyama for dY = v(X) dt + sigma(X,t) dW, X = Q(eta(t) Y).
// Noise increments are keyed by (cfg.seed, path_index, step), so a fixed
// seed gives bit-identical paths on any thread layout.
Trajectory integrate_smd(const Objective& obj, const Regularizer& reg,
                         const Region& region, const NoiseModel& noise,
                         const Schedule& sched, const IntegratorConfig& cfg,
                         int path_index = 0);

// One-dimensional comparison pair for f(x) = x on [0,1] with the entropic
// map: the same Wiener increments drive
//   shd:      dX = -X(1-X) [dt - sigma dW]
//   smd:      dX = -X(1-X) [dt - sigma dW] + X(1-X)(1-2X) sigma^2/2 dt
//   smd_dual: dY = -dt + sigma dW,  X = e^Y / (1 + e^Y)
// The primal forms are clamped to [1e-12, 1 - 1e-12].
struct Hr1dResult {
    Trajectory shd;
    Trajectory smd;
    Trajectory smd_dual;
};
Hr1dResult integrate_hr1d(double sigma, double x0, const IntegratorConfig& cfg);

enum class RectifyMode { Average, Best };

// Average mode: primal path replaced by its running trapezoidal time
// average; the f series is replaced by the running average of f (an upper
// bound for f at the averaged point, by convexity). Best mode: primal path
// replaced by the best-so-far point, f by the running minimum; ties keep
// the earliest time.
Trajectory rectify(const Trajectory& traj, RectifyMode mode);

}  // namespace mdflow
