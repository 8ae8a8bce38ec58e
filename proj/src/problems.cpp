#include "mdflow/problems.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdflow {

Objective Objective::quadratic(Mat a, Vec center) {
    if (a.rows != a.cols || a.rows != static_cast<int>(center.size()))
        throw std::invalid_argument("quadratic: dimension mismatch");
    for (int i = 0; i < a.rows; ++i)
        for (int j = i + 1; j < a.cols; ++j)
            if (std::abs(a(i, j) - a(j, i)) > 1e-12)
                throw std::invalid_argument("quadratic: curvature matrix not symmetric");
    EigenSym e = jacobi_eigensym(a);
    if (e.values.front() < -1e-10)
        throw std::invalid_argument("quadratic: curvature matrix not positive semidefinite");
    Objective o;
    o.kind = Kind::Quadratic;
    o.A = std::move(a);
    o.center = std::move(center);
    o.alpha = std::max(e.values.front(), 0.0);
    o.lipschitz = e.values.back();
    return o;
}

Objective Objective::linear(Vec cost, double offset) {
    Objective o;
    o.kind = Kind::Linear;
    o.cost = std::move(cost);
    o.offset = offset;
    return o;
}

Objective Objective::scalar1d() {
    Objective o;
    o.kind = Kind::Scalar1D;
    o.cost = {1.0};
    o.min_point = Vec{0.0};
    o.min_value = 0.0;
    o.gamma = 1.0;
    return o;
}

int Objective::dim() const {
    switch (kind) {
        case Kind::Quadratic:
            return static_cast<int>(center.size());
        case Kind::Linear:
            return static_cast<int>(cost.size());
        case Kind::Traffic:
            return traffic_dim;
        case Kind::Scalar1D:
            return 1;
    }
    return 0;
}

Evaluation evaluate(const Objective& obj, const PrimalVec& x) {
    if (static_cast<int>(x.size()) != obj.dim())
        throw std::invalid_argument("evaluate: dimension mismatch");
    switch (obj.kind) {
        case Objective::Kind::Quadratic: {
            Vec d(x.size());
            for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - obj.center[i];
            Vec g = matvec(obj.A, d);
            return {0.5 * dot(d, g), g};
        }
        case Objective::Kind::Linear:
            return {dot(obj.cost, x) + obj.offset, obj.cost};
        case Objective::Kind::Traffic: {
            Vec g(x.size(), 0.0);
            double f = obj.eval_fn(x, g);
            return {f, g};
        }
        case Objective::Kind::Scalar1D:
            return {x[0], Vec{1.0}};
    }
    return {0.0, {}};
}

double check_sharpness(const Objective& obj, const Region& region,
                       const PrimalVec& vertex) {
    auto gens = tangent_cone_generators(region, vertex);  // throws if not a vertex
    Evaluation e = evaluate(obj, vertex);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& z : gens) {
        double nz = norm_of(region, z);
        worst = std::min(worst, dot(e.gradient, z) / nz);
    }
    return gens.empty() ? 0.0 : worst;
}

double check_strong_convexity(const Objective& obj, const Region& region,
                              int samples, uint64_t seed) {
    if (!obj.min_point || !obj.min_value)
        throw std::invalid_argument("check_strong_convexity: known minimizer required");
    const Vec& xs = *obj.min_point;
    double fs = *obj.min_value;
    CounterRng rng(seed, /*stream=*/7);
    double envelope = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        Vec x = sample_point(region, rng);
        if (k % 8 == 0) {
            // probe close to the minimizer as well
            Vec probe(xs.size());
            for (size_t i = 0; i < xs.size(); ++i)
                probe[i] = xs[i] + 1e-3 * (2.0 * rng.next_double() - 1.0);
            if (!region.is_spectrahedron()) x = euclidean_project(region, probe);
        }
        double d = norm_of(region, axpy(-1.0, xs, x));
        if (d < 1e-9) continue;
        double gap = evaluate(obj, x).value - fs;
        envelope = std::min(envelope, 2.0 * gap / (d * d));
    }
    return envelope;
}

}  // namespace mdflow
