#include "mdflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mdflow {

Region Region::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size() || lo.empty())
        throw std::invalid_argument("box: bound vectors must match and be nonempty");
    for (size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i]))
            throw std::invalid_argument("box: lo > hi at coordinate " + std::to_string(i));
    Region r;
    r.shape = Box{std::move(lo), std::move(hi)};
    r.norm = NormKind::L2;
    return r;
}

Region Region::box_uniform(double lo, double hi, int dim) {
    return box(Vec(dim, lo), Vec(dim, hi));
}

Region Region::simplex(double mass, int dim) {
    if (!(mass > 0)) throw std::invalid_argument("simplex: mass must be positive");
    if (dim < 2) throw std::invalid_argument("simplex: dimension must be >= 2");
    Region r;
    r.shape = ScaledSimplex{mass, dim};
    r.norm = NormKind::L1;
    return r;
}

Region Region::spectrahedron(int order) {
    if (order < 1) throw std::invalid_argument("spectrahedron: order must be >= 1");
    Region r;
    r.shape = Spectrahedron{order};
    r.norm = NormKind::Nuclear;
    return r;
}

Region Region::product(std::vector<Region> parts) {
    if (parts.empty()) throw std::invalid_argument("product: no parts");
    Region r;
    r.norm = NormKind::L2;
    r.shape = ProductRegion{std::move(parts)};
    return r;
}

int Region::dim() const {
    if (auto* b = std::get_if<Box>(&shape)) return static_cast<int>(b->lo.size());
    if (auto* s = std::get_if<ScaledSimplex>(&shape)) return s->dim;
    if (auto* d = std::get_if<Spectrahedron>(&shape)) return svec_dim(d->order);
    const auto& parts = std::get<ProductRegion>(shape).parts;
    int n = 0;
    for (const auto& p : parts) n += p.dim();
    return n;
}

static void check_dim(const Region& region, const Vec& x, const char* who) {
    if (static_cast<int>(x.size()) != region.dim())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

bool contains(const Region& region, const PrimalVec& x, double tol) {
    check_dim(region, x, "contains");
    for (double v : x)
        if (!std::isfinite(v)) return false;
    if (auto* b = std::get_if<Box>(&region.shape)) {
        for (size_t i = 0; i < x.size(); ++i)
            if (x[i] < b->lo[i] - tol || x[i] > b->hi[i] + tol) return false;
        return true;
    }
    if (auto* s = std::get_if<ScaledSimplex>(&region.shape)) {
        double sum = 0.0;
        for (double v : x) {
            if (v < -tol) return false;
            sum += v;
        }
        return std::abs(sum - s->mass) <= tol * std::max(1.0, s->mass) + 1e-15;
    }
    if (std::get_if<Spectrahedron>(&region.shape)) {
        Mat m = smat(x);
        EigenSym e = jacobi_eigensym(m);
        if (e.values.front() < -tol) return false;
        double tr = std::accumulate(e.values.begin(), e.values.end(), 0.0);
        return tr <= 1.0 + tol;
    }
    const auto& parts = std::get<ProductRegion>(region.shape).parts;
    size_t off = 0;
    for (const auto& p : parts) {
        Vec sub(x.begin() + off, x.begin() + off + p.dim());
        if (!contains(p, sub, tol)) return false;
        off += p.dim();
    }
    return true;
}

double diameter(const Region& region) {
    if (auto* b = std::get_if<Box>(&region.shape)) {
        // max L2 distance is attained between opposite corners
        double s = 0.0;
        for (size_t i = 0; i < b->lo.size(); ++i) {
            double d = b->hi[i] - b->lo[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    if (auto* s = std::get_if<ScaledSimplex>(&region.shape)) {
        // L1 distance between two vertices: ||mass*(e_i - e_j)||_1
        return 2.0 * s->mass;
    }
    if (auto* d = std::get_if<Spectrahedron>(&region.shape)) {
        // nuclear distance between rank-one corners, or |1-0| when order 1
        return d->order >= 2 ? 2.0 : 1.0;
    }
    const auto& parts = std::get<ProductRegion>(region.shape).parts;
    double s = 0.0;
    for (const auto& p : parts) {
        double d = diameter(p);
        s += d * d;
    }
    return std::sqrt(s);
}

Vec project_simplex(const Vec& y, double mass) {
    Vec u = y;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0, theta = 0.0;
    int rho = 0;
    for (size_t j = 0; j < u.size(); ++j) {
        cumsum += u[j];
        double candidate = (cumsum - mass) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0) {
            rho = static_cast<int>(j + 1);
            theta = candidate;
        }
    }
    Vec x(y.size());
    for (size_t i = 0; i < y.size(); ++i) x[i] = std::max(0.0, y[i] - theta);
    // kill residual drift of the sum
    double sum = std::accumulate(x.begin(), x.end(), 0.0);
    if (sum > 0 && std::abs(sum - mass) > 1e-15) {
        double fix = (sum - mass) / static_cast<double>(rho);
        for (double& v : x)
            if (v > 0) v = std::max(0.0, v - fix);
    }
    return x;
}

PrimalVec euclidean_project(const Region& region, const Vec& y) {
    check_dim(region, y, "euclidean_project");
    if (auto* b = std::get_if<Box>(&region.shape)) {
        Vec x(y.size());
        for (size_t i = 0; i < y.size(); ++i) x[i] = std::clamp(y[i], b->lo[i], b->hi[i]);
        return x;
    }
    if (auto* s = std::get_if<ScaledSimplex>(&region.shape))
        return project_simplex(y, s->mass);
    if (std::get_if<Spectrahedron>(&region.shape))
        throw std::invalid_argument(
            "euclidean_project: spectrahedron projection is not supported");
    const auto& parts = std::get<ProductRegion>(region.shape).parts;
    Vec x;
    x.reserve(y.size());
    size_t off = 0;
    for (const auto& p : parts) {
        Vec sub(y.begin() + off, y.begin() + off + p.dim());
        Vec proj = euclidean_project(p, sub);
        x.insert(x.end(), proj.begin(), proj.end());
        off += p.dim();
    }
    return x;
}

std::vector<PrimalVec> tangent_cone_generators(const Region& region,
                                               const PrimalVec& vertex) {
    check_dim(region, vertex, "tangent_cone_generators");
    const double vtol = 1e-9;
    std::vector<PrimalVec> gens;
    if (auto* b = std::get_if<Box>(&region.shape)) {
        int n = static_cast<int>(vertex.size());
        for (int i = 0; i < n; ++i) {
            bool at_lo = std::abs(vertex[i] - b->lo[i]) <= vtol;
            bool at_hi = std::abs(vertex[i] - b->hi[i]) <= vtol;
            if (!at_lo && !at_hi)
                throw std::invalid_argument(
                    "tangent_cone_generators: point is not a vertex (coordinate " +
                    std::to_string(i) + " is interior)");
            if (b->hi[i] - b->lo[i] <= vtol) continue;  // pinched coordinate
            Vec z(n, 0.0);
            z[i] = at_lo ? 1.0 : -1.0;  // at_lo && at_hi cannot happen past here
            gens.push_back(std::move(z));
        }
        return gens;
    }
    if (auto* s = std::get_if<ScaledSimplex>(&region.shape)) {
        int n = s->dim;
        int support = -1;
        for (int i = 0; i < n; ++i) {
            if (std::abs(vertex[i] - s->mass) <= vtol) {
                if (support >= 0)
                    throw std::invalid_argument("tangent_cone_generators: not a vertex");
                support = i;
            } else if (std::abs(vertex[i]) > vtol) {
                throw std::invalid_argument("tangent_cone_generators: not a vertex");
            }
        }
        if (support < 0)
            throw std::invalid_argument("tangent_cone_generators: not a vertex");
        for (int j = 0; j < n; ++j) {
            if (j == support) continue;
            Vec z(n, 0.0);
            // edge toward the neighboring vertex, unit L1 length
            z[j] = 0.5;
            z[support] = -0.5;
            gens.push_back(std::move(z));
        }
        return gens;
    }
    throw std::invalid_argument(
        "tangent_cone_generators: only box and simplex polytopes are supported");
}

double norm_of(const Region& region, const Vec& z) {
    switch (region.norm) {
        case NormKind::L1:
            return norm1(z);
        case NormKind::L2:
            return norm2(z);
        case NormKind::Nuclear: {
            EigenSym e = jacobi_eigensym(smat(z));
            double s = 0.0;
            for (double v : e.values) s += std::abs(v);
            return s;
        }
    }
    return 0.0;
}

double dual_norm_of(const Region& region, const Vec& y) {
    switch (region.norm) {
        case NormKind::L1:
            return norm_inf(y);
        case NormKind::L2:
            return norm2(y);
        case NormKind::Nuclear: {
            // dual of nuclear is the operator norm
            EigenSym e = jacobi_eigensym(smat(y));
            double s = 0.0;
            for (double v : e.values) s = std::max(s, std::abs(v));
            return s;
        }
    }
    return 0.0;
}

PrimalVec sample_point(const Region& region, CounterRng& rng) {
    if (auto* b = std::get_if<Box>(&region.shape)) {
        Vec x(b->lo.size());
        for (size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(b->lo[i], b->hi[i]);
        return x;
    }
    if (auto* s = std::get_if<ScaledSimplex>(&region.shape)) {
        // normalized exponentials are uniform on the simplex
        Vec x(s->dim);
        double sum = 0.0;
        for (double& v : x) {
            double u = std::max(rng.next_double(), 1e-300);
            v = -std::log(u);
            sum += v;
        }
        for (double& v : x) v *= s->mass / sum;
        return x;
    }
    if (auto* d = std::get_if<Spectrahedron>(&region.shape)) {
        // random PSD matrix with trace scaled into (0,1)
        int n = d->order;
        Mat g(n, n);
        for (auto& v : g.a) v = rng.next_normal();
        Mat p = matmul(g, transpose(g));
        double tr = trace(p);
        double scale = rng.next_double() / std::max(tr, 1e-12);
        for (auto& v : p.a) v *= scale;
        return svec(p);
    }
    const auto& parts = std::get<ProductRegion>(region.shape).parts;
    Vec x;
    for (const auto& p : parts) {
        Vec sub = sample_point(p, rng);
        x.insert(x.end(), sub.begin(), sub.end());
    }
    return x;
}

}  // namespace mdflow
