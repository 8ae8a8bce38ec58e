#pragma once

#include "mdflow/geometry.hpp"

namespace mdflow {

// Strongly convex penalty h inducing the mirror map
//   Q(y) = argmax_{x in region} { <y,x> - h(x) }.
//
// Three built-ins:
//   Euclidean   h(x) = ||x||_2^2 / 2          K = 1    (L2), nonsteep
//   Entropic    h(x) = sum x_i log(x_i/mass)  K = 1/mass (L1), steep
//   VonNeumann  h(X) = tr(X log X) + (1 - tr X) log(1 - tr X)
//                                             K = 1/2  (nuclear), steep
//
// The entropic penalty is normalized so that Q(y) = mass * softmax(y);
// for mass = 1 it is the plain negative Gibbs entropy.
struct Regularizer {
    enum class Kind { Euclidean, Entropic, VonNeumann } kind;

    static Regularizer euclidean() { return {Kind::Euclidean}; }
    static Regularizer entropic() { return {Kind::Entropic}; }
    static Regularizer von_neumann() { return {Kind::VonNeumann}; }

    bool steep() const { return kind != Kind::Euclidean; }
    double strong_convexity(const Region& region) const;  // K w.r.t. region norm
    const char* name() const;
};

// h(x); boundary points of steep regularizers use the 0*log 0 = 0 limit.
double reg_value(const Regularizer& reg, const Region& region, const PrimalVec& x);

// Q(y). Softmax-style maps subtract the max score before exponentiating.
PrimalVec mirror_map(const Regularizer& reg, const Region& region, const DualVec& y);

// h*(y) = <y, Q(y)> - h(Q(y)); closed forms where available.
double conjugate(const Regularizer& reg, const Region& region, const DualVec& y);

// F(p,y) = h(p) + h*(y) - <y,p>; >= 0, zero iff p = Q(y).
double fenchel_coupling(const Regularizer& reg, const Region& region,
                        const PrimalVec& p, const DualVec& y);

// D(p,x) = h(p) - h(x) - <grad h(x), p - x>; steep regularizers reject
// boundary x rather than returning infinity.
double bregman_divergence(const Regularizer& reg, const Region& region,
                          const PrimalVec& p, const PrimalVec& x);

// Omega = max h - min h over the region.
double regularizer_depth(const Regularizer& reg, const Region& region);

// grad h at x (differentiability domain only).
DualVec reg_gradient(const Regularizer& reg, const Region& region, const PrimalVec& x);

}  // namespace mdflow
