#pragma once

#include <optional>

#include "mdflow/dynamics.hpp"

namespace mdflow {

// Fraction of logged time in [burn_in, end] that the primal path spends in
// the L2 ball of radius delta around `center` (step counting on the logged
// grid).
double occupation_fraction(const Trajectory& traj, const Vec& center, double delta,
                           double burn_in);

// First logged time with ||X(t) - center||_2 <= delta.
std::optional<double> hitting_time(const Trajectory& traj, const Vec& center,
                                   double delta);

// Pathwise decomposition of the deflated coupling V(t) = F(x*, eta Y)/eta
// into drift, temperature, Ito and martingale contributions:
//
//   dV <= <v(X), X - x*> dt                      (drift)
//         - eta'(t)/eta(t)^2 [h(x*) - h(X)] dt   (temperature)
//         + eta(t) tr Sigma / (2K) dt            (Ito correction)
//         + dM                                   (martingale noise)
//
// The martingale increment is recovered as the residual
// dV - drift - temperature - Ito, so the per-interval decomposition is an
// identity by construction; the audit's checkable content is that V stays
// nonnegative, that the residual is mean-zero across an ensemble, and that
// deterministic runs reproduce dV = drift within quadrature slack.
struct FenchelAudit {
    std::vector<double> t;  // interval right endpoints
    std::vector<double> drift, temperature, ito, residual, delta_v;
    std::vector<double> cum_drift, cum_temperature, cum_ito, cum_residual;
    std::vector<double> v;  // V at every logged time (one longer than t)
    double slack_per_step = 0.0;
    int violation_count = 0;    // decomposition identity breaches beyond slack
    int negative_v_count = 0;   // V(t_k) < -1e-12 occurrences
    double max_v_increase = 0.0;  // max over intervals of V(t_{k+1}) - V(t_k)

    double cumulative_residual() const {
        return cum_residual.empty() ? 0.0 : cum_residual.back();
    }
};

FenchelAudit fenchel_audit(const Trajectory& traj, const Objective& obj,
                           const Regularizer& reg, const Region& region,
                           const Vec& target, const Schedule& sched,
                           const NoiseModel& noise);

// Least-squares slope of log(gap) against log(t) restricted to
// t in [t_lo, t_hi]. Requires at least 10 points and positive gaps there.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points = 0;
};
RateFit rate_fit(const std::vector<double>& times, const std::vector<double>& gaps,
                 double t_lo, double t_hi);

struct EnsembleSummary {
    double mean_time_avg_sq_dist = 0.0;  // mean over paths of t^-1 int ||X-x*||^2
    double se_time_avg_sq_dist = 0.0;    // standard error of that mean
    double mean_hitting_time = 0.0;      // paths that never hit count the horizon
    double hit_fraction = 0.0;
    double mean_occupation = 0.0;
    double mean_final_gap = 0.0;
    double min_final_gap = 0.0;
    double max_final_gap = 0.0;
};

// Common-grid ensemble reductions against a target point. `delta` is used
// for both the hitting radius and the occupation ball; `f_star` for the
// final-value gaps.
EnsembleSummary ensemble_summary(const std::vector<Trajectory>& trajs,
                                 const Vec& target, double delta, double burn_in,
                                 double f_star);

}  // namespace mdflow
