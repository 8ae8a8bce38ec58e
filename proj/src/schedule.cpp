#include "mdflow/schedule.hpp"

#include <cmath>

namespace mdflow {

Schedule Schedule::optimized(double omega, double strong_convexity, double sigma_sq) {
    if (!(omega > 0) || !(strong_convexity > 0) || !(sigma_sq > 0))
        throw std::invalid_argument("schedule: optimized constants must be positive");
    Schedule s;
    s.kind = Kind::Optimized;
    s.eta0 = std::sqrt(omega * strong_convexity / sigma_sq);
    s.beta = 0.5;
    return s;
}

double eta(const Schedule& s, double t) {
    switch (s.kind) {
        case Schedule::Kind::Constant:
            return s.eta0;
        case Schedule::Kind::PowerLaw:
        case Schedule::Kind::Optimized:
            return t <= 1.0 ? s.eta0 : s.eta0 * std::pow(t, -s.beta);
    }
    return s.eta0;
}

double eta_dot(const Schedule& s, double t) {
    switch (s.kind) {
        case Schedule::Kind::Constant:
            return 0.0;
        case Schedule::Kind::PowerLaw:
        case Schedule::Kind::Optimized:
            return t <= 1.0 ? 0.0 : -s.beta * s.eta0 * std::pow(t, -s.beta - 1.0);
    }
    return 0.0;
}

}  // namespace mdflow
