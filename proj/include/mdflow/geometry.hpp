#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "mdflow/linalg.hpp"
#include "mdflow/rng.hpp"

namespace mdflow {

// Primal points and dual scores share the coordinate layout of their region.
// Spectrahedron points are the sqrt(2)-scaled upper triangle of a symmetric
// matrix (see svec in linalg.hpp), so <y,x> is a plain dot product.
using PrimalVec = Vec;
using DualVec = Vec;

enum class NormKind { L1, L2, Nuclear };

struct Box {
    Vec lo, hi;
};

struct ScaledSimplex {
    double mass = 1.0;  // coordinates are >= 0 and sum to mass
    int dim = 0;
};

struct Spectrahedron {
    int order = 0;  // symmetric order x order, PSD, trace <= 1
};

struct Region;

struct ProductRegion {
    std::vector<Region> parts;
};

// Compact convex feasible set with its norm structure. Boxes pair with the
// L2 norm, simplices with L1, spectrahedra with the nuclear norm.
struct Region {
    std::variant<Box, ScaledSimplex, Spectrahedron, ProductRegion> shape;
    NormKind norm = NormKind::L2;

    static Region box(Vec lo, Vec hi);
    static Region box_uniform(double lo, double hi, int dim);
    static Region simplex(double mass, int dim);
    static Region spectrahedron(int order);
    static Region product(std::vector<Region> parts);

    int dim() const;  // ambient coordinate count
    bool is_box() const { return std::holds_alternative<Box>(shape); }
    bool is_simplex() const { return std::holds_alternative<ScaledSimplex>(shape); }
    bool is_spectrahedron() const { return std::holds_alternative<Spectrahedron>(shape); }
    bool is_product() const { return std::holds_alternative<ProductRegion>(shape); }
};

bool contains(const Region& region, const PrimalVec& x, double tol);
double diameter(const Region& region);
PrimalVec euclidean_project(const Region& region, const Vec& y);

// Generating directions of the tangent cone at a polytope vertex, unit
// length in the region's norm. Throws if `vertex` is not a vertex
// (tolerance 1e-9).
std::vector<PrimalVec> tangent_cone_generators(const Region& region,
                                               const PrimalVec& vertex);

double norm_of(const Region& region, const Vec& z);       // primal norm
double dual_norm_of(const Region& region, const Vec& y);  // its dual

// Uniform-ish feasible sample; exact for boxes and simplices.
PrimalVec sample_point(const Region& region, CounterRng& rng);

// Projection of y onto {x >= 0, sum x = mass} by sort and threshold.
Vec project_simplex(const Vec& y, double mass);

}  // namespace mdflow
