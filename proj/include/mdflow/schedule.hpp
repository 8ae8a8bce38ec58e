#pragma once

#include <stdexcept>

namespace mdflow {

// Sensitivity schedule eta(t): positive, nonincreasing, Lipschitz, with
// t * eta(t) -> infinity. PowerLaw is eta0 * min(1, t^-beta); Optimized is
// sqrt(Omega K / sigma*^2) * min(1, 1/sqrt(t)).
struct Schedule {
    enum class Kind { Constant, PowerLaw, Optimized } kind = Kind::Constant;
    double eta0 = 1.0;
    double beta = 0.0;

    static Schedule constant(double eta0) {
        if (!(eta0 > 0)) throw std::invalid_argument("schedule: eta0 must be positive");
        return {Kind::Constant, eta0, 0.0};
    }
    static Schedule power_law(double eta0, double beta) {
        if (!(eta0 > 0)) throw std::invalid_argument("schedule: eta0 must be positive");
        if (!(beta > 0.0 && beta < 1.0))
            throw std::invalid_argument("schedule: beta must lie in (0,1)");
        return {Kind::PowerLaw, eta0, beta};
    }
    static Schedule optimized(double omega, double strong_convexity, double sigma_sq);
};

double eta(const Schedule& s, double t);
double eta_dot(const Schedule& s, double t);  // closed-form derivative (a.e.)

}  // namespace mdflow
