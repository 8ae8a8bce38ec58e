#include "mdflow/mirror.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mdflow {

namespace {

constexpr double kFeasTol = 1e-9;

double xlogx(double v) { return v > 0 ? v * std::log(v) : 0.0; }

const ScaledSimplex& need_simplex(const Region& region, const char* who) {
    if (auto* s = std::get_if<ScaledSimplex>(&region.shape)) return *s;
    throw std::invalid_argument(std::string(who) +
                                ": entropic regularizer requires a simplex region");
}

const Spectrahedron& need_spectrahedron(const Region& region, const char* who) {
    if (auto* s = std::get_if<Spectrahedron>(&region.shape)) return *s;
    throw std::invalid_argument(std::string(who) +
                                ": matrix regularizer requires a spectrahedron region");
}

void need_feasible(const Region& region, const PrimalVec& x, const char* who) {
    if (!contains(region, x, kFeasTol))
        throw std::invalid_argument(std::string(who) + ": infeasible point");
}

}  // namespace

const char* Regularizer::name() const {
    switch (kind) {
        case Kind::Euclidean:
            return "euclidean";
        case Kind::Entropic:
            return "entropic";
        case Kind::VonNeumann:
            return "vonneumann";
    }
    return "?";
}

double Regularizer::strong_convexity(const Region& region) const {
    switch (kind) {
        case Kind::Euclidean:
            return 1.0;
        case Kind::Entropic:
            return 1.0 / need_simplex(region, "strong_convexity").mass;
        case Kind::VonNeumann:
            need_spectrahedron(region, "strong_convexity");
            return 0.5;
    }
    return 0.0;
}

double reg_value(const Regularizer& reg, const Region& region, const PrimalVec& x) {
    need_feasible(region, x, "reg_value");
    switch (reg.kind) {
        case Regularizer::Kind::Euclidean:
            return 0.5 * dot(x, x);
        case Regularizer::Kind::Entropic: {
            double mass = need_simplex(region, "reg_value").mass;
            double s = 0.0;
            for (double v : x) s += xlogx(std::max(v, 0.0));
            // sum x_i log(x_i/mass) = sum x_i log x_i - mass log(mass)
            return s - mass * std::log(mass);
        }
        case Regularizer::Kind::VonNeumann: {
            need_spectrahedron(region, "reg_value");
            EigenSym e = jacobi_eigensym(smat(x));
            double s = 0.0, tr = 0.0;
            for (double mu : e.values) {
                s += xlogx(std::max(mu, 0.0));
                tr += mu;
            }
            return s + xlogx(std::max(1.0 - tr, 0.0));
        }
    }
    return 0.0;
}

PrimalVec mirror_map(const Regularizer& reg, const Region& region, const DualVec& y) {
    if (static_cast<int>(y.size()) != region.dim())
        throw std::invalid_argument("mirror_map: dimension mismatch");
    switch (reg.kind) {
        case Regularizer::Kind::Euclidean:
            return euclidean_project(region, y);
        case Regularizer::Kind::Entropic: {
            double mass = need_simplex(region, "mirror_map").mass;
            double m = *std::max_element(y.begin(), y.end());
            PrimalVec x(y.size());
            double z = 0.0;
            for (size_t i = 0; i < y.size(); ++i) {
                x[i] = std::exp(y[i] - m);
                z += x[i];
            }
            for (double& v : x) v *= mass / z;
            return x;
        }
        case Regularizer::Kind::VonNeumann: {
            need_spectrahedron(region, "mirror_map");
            EigenSym e = jacobi_eigensym(smat(y));
            double m = *std::max_element(e.values.begin(), e.values.end());
            m = std::max(m, 0.0);  // the implicit "+1" slot joins the shift
            int n = static_cast<int>(e.values.size());
            Vec w(n);
            double denom = std::exp(-m);
            for (int i = 0; i < n; ++i) {
                w[i] = std::exp(e.values[i] - m);
                denom += w[i];
            }
            Mat q(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < n; ++k)
                        s += e.vectors(i, k) * (w[k] / denom) * e.vectors(j, k);
                    q(i, j) = s;
                }
            return svec(q);
        }
    }
    return {};
}

double conjugate(const Regularizer& reg, const Region& region, const DualVec& y) {
    switch (reg.kind) {
        case Regularizer::Kind::Euclidean: {
            PrimalVec q = mirror_map(reg, region, y);
            return dot(y, q) - 0.5 * dot(q, q);
        }
        case Regularizer::Kind::Entropic: {
            double mass = need_simplex(region, "conjugate").mass;
            double m = *std::max_element(y.begin(), y.end());
            double z = 0.0;
            for (double v : y) z += std::exp(v - m);
            return mass * (m + std::log(z));
        }
        case Regularizer::Kind::VonNeumann: {
            need_spectrahedron(region, "conjugate");
            EigenSym e = jacobi_eigensym(smat(y));
            double m = std::max(*std::max_element(e.values.begin(), e.values.end()), 0.0);
            double z = std::exp(-m);
            for (double d : e.values) z += std::exp(d - m);
            return m + std::log(z);  // log(1 + tr exp(Y))
        }
    }
    return 0.0;
}

double fenchel_coupling(const Regularizer& reg, const Region& region,
                        const PrimalVec& p, const DualVec& y) {
    need_feasible(region, p, "fenchel_coupling");
    return reg_value(reg, region, p) + conjugate(reg, region, y) - dot(y, p);
}

DualVec reg_gradient(const Regularizer& reg, const Region& region, const PrimalVec& x) {
    need_feasible(region, x, "reg_gradient");
    switch (reg.kind) {
        case Regularizer::Kind::Euclidean:
            return x;
        case Regularizer::Kind::Entropic: {
            double mass = need_simplex(region, "reg_gradient").mass;
            DualVec g(x.size());
            for (size_t i = 0; i < x.size(); ++i) {
                if (x[i] <= 0.0)
                    throw std::invalid_argument(
                        "reg_gradient: boundary point, entropic gradient undefined");
                g[i] = std::log(x[i] / mass) + 1.0;
            }
            return g;
        }
        case Regularizer::Kind::VonNeumann: {
            need_spectrahedron(region, "reg_gradient");
            EigenSym e = jacobi_eigensym(smat(x));
            double tr = std::accumulate(e.values.begin(), e.values.end(), 0.0);
            if (e.values.front() <= 0.0 || tr >= 1.0)
                throw std::invalid_argument(
                    "reg_gradient: boundary point, matrix gradient undefined");
            int n = static_cast<int>(e.values.size());
            double shift = std::log(1.0 - tr);
            Mat g(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < n; ++k)
                        s += e.vectors(i, k) * (std::log(e.values[k]) - shift) *
                             e.vectors(j, k);
                    g(i, j) = s;
                }
            return svec(g);
        }
    }
    return {};
}

double bregman_divergence(const Regularizer& reg, const Region& region,
                          const PrimalVec& p, const PrimalVec& x) {
    need_feasible(region, p, "bregman_divergence");
    DualVec gx = reg_gradient(reg, region, x);  // rejects boundary x for steep h
    Vec diff(p.size());
    for (size_t i = 0; i < p.size(); ++i) diff[i] = p[i] - x[i];
    return reg_value(reg, region, p) - reg_value(reg, region, x) - dot(gx, diff);
}

double regularizer_depth(const Regularizer& reg, const Region& region) {
    switch (reg.kind) {
        case Regularizer::Kind::Euclidean: {
            if (auto* b = std::get_if<Box>(&region.shape)) {
                double hi = 0.0, lo = 0.0;
                for (size_t i = 0; i < b->lo.size(); ++i) {
                    double l = b->lo[i], h = b->hi[i];
                    hi += std::max(l * l, h * h);
                    lo += (l <= 0.0 && h >= 0.0) ? 0.0 : std::min(l * l, h * h);
                }
                return 0.5 * (hi - lo);
            }
            if (auto* s = std::get_if<ScaledSimplex>(&region.shape)) {
                double m = s->mass;
                return 0.5 * m * m * (1.0 - 1.0 / s->dim);
            }
            if (auto* pr = std::get_if<ProductRegion>(&region.shape)) {
                double sum = 0.0;  // separable: depths add
                for (const auto& part : pr->parts)
                    sum += regularizer_depth(reg, part);
                return sum;
            }
            break;
        }
        case Regularizer::Kind::Entropic: {
            const auto& s = need_simplex(region, "regularizer_depth");
            return s.mass * std::log(static_cast<double>(s.dim));
        }
        case Regularizer::Kind::VonNeumann: {
            const auto& s = need_spectrahedron(region, "regularizer_depth");
            return std::log(static_cast<double>(s.order) + 1.0);
        }
    }
    throw std::invalid_argument("regularizer_depth: unsupported regularizer/region pairing");
}

}  // namespace mdflow
