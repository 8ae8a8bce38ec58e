#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "mdflow/geometry.hpp"

namespace mdflow {

// Convex objective with gradient and structural metadata. `alpha` is the
// strong-convexity modulus in the region norm, `gamma` the sharpness
// modulus when the minimum sits at a corner; both are zero when unknown.
struct Objective {
    enum class Kind { Quadratic, Linear, Traffic, Scalar1D } kind;

    // Quadratic: f(x) = (x-center)' A (x-center) / 2
    Mat A;
    Vec center;

    // Linear: f(x) = <cost, x> + offset
    Vec cost;
    double offset = 0.0;

    // Traffic (or any externally supplied smooth convex cost):
    // returns f(x) and fills grad.
    std::function<double(const Vec& x, Vec& grad)> eval_fn;
    int traffic_dim = 0;

    double alpha = 0.0;
    double gamma = 0.0;
    double lipschitz = 0.0;  // modulus of the drift, metadata only

    std::optional<Vec> min_point;
    std::optional<double> min_value;

    static Objective quadratic(Mat a, Vec center);
    static Objective linear(Vec cost, double offset = 0.0);
    static Objective scalar1d();  // f(x) = x on [0,1]

    int dim() const;
};

struct Evaluation {
    double value;
    DualVec gradient;  // drift is v = -gradient
};

Evaluation evaluate(const Objective& obj, const PrimalVec& x);

// Sharpness estimate at a polytope vertex: min over tangent-cone generators
// z of <grad f(vertex), z> / ||z||. Positive iff the vertex is a sharp
// minimum (generators are the extreme rays, and a linear functional attains
// its minimum over the normalized cone on one of them).
double check_sharpness(const Objective& obj, const Region& region,
                       const PrimalVec& vertex);

// Monte Carlo lower envelope of 2 (f(x)-f*) / ||x-x*||^2 over feasible
// samples, including points within 1e-3 of the minimizer. Requires min_point.
double check_strong_convexity(const Objective& obj, const Region& region,
                              int samples, uint64_t seed);

}  // namespace mdflow
