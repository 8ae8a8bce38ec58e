#include "mdflow/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace mdflow {

NoiseModel NoiseModel::constant(Mat sigma) {
    for (double v : sigma.a)
        if (!std::isfinite(v)) throw std::invalid_argument("noise: nonfinite entry");
    NoiseModel m;
    m.kind = Kind::Constant;
    m.n = sigma.rows;
    m.sigma = std::move(sigma);
    return m;
}

NoiseModel NoiseModel::scaled_identity(double s, int n) {
    Mat sig = Mat::identity(n);
    for (double& v : sig.a) v *= s;
    return constant(std::move(sig));
}

NoiseModel NoiseModel::zero(int n) { return constant(Mat(n, n)); }

NoiseModel NoiseModel::decaying(double sigma0, Decay decay, int n, double q) {
    if (!(sigma0 >= 0)) throw std::invalid_argument("noise: sigma0 must be >= 0");
    if (decay == Decay::LogPower && !(q > 0.5))
        throw std::invalid_argument("noise: log-power exponent must exceed 1/2");
    NoiseModel m;
    m.kind = Kind::DecayingScalar;
    m.sigma0 = sigma0;
    m.decay = decay;
    m.q = q;
    m.n = n;
    return m;
}

NoiseModel NoiseModel::path_correlated(const Mat& incidence, const Vec& sigma_e) {
    if (incidence.cols != static_cast<int>(sigma_e.size()))
        throw std::invalid_argument("noise: incidence/sigma_e mismatch");
    for (double s : sigma_e)
        if (!(s >= 0)) throw std::invalid_argument("noise: edge volatility must be >= 0");
    NoiseModel m;
    m.kind = Kind::PathCorrelated;
    m.n = incidence.rows;
    m.path_sigma = Mat(incidence.rows, incidence.cols);
    for (int p = 0; p < incidence.rows; ++p)
        for (int e = 0; e < incidence.cols; ++e)
            m.path_sigma(p, e) = incidence(p, e) != 0.0 ? sigma_e[e] : 0.0;
    return m;
}

int NoiseModel::state_dim() const { return n; }

int NoiseModel::wiener_dim() const {
    switch (kind) {
        case Kind::Constant:
            return sigma.cols;
        case Kind::DecayingScalar:
            return n;
        case Kind::PathCorrelated:
            return path_sigma.cols;
    }
    return 0;
}

double NoiseModel::decay_factor(double t) const {
    if (kind != Kind::DecayingScalar) return 1.0;
    switch (decay) {
        case Decay::InvLog:
            return 1.0 / std::log(M_E + t);
        case Decay::InvSqrtT:
            return 1.0 / std::sqrt(1.0 + t);
        case Decay::LogPower:
            return 1.0 / std::pow(std::log(M_E + t), q);
    }
    return 1.0;
}

Mat volatility(const NoiseModel& model, const Vec& x, double t) {
    (void)x;  // all built-ins are state-independent
    if (t < 0) throw std::invalid_argument("volatility: t must be >= 0");
    switch (model.kind) {
        case NoiseModel::Kind::Constant:
            return model.sigma;
        case NoiseModel::Kind::DecayingScalar: {
            Mat s = Mat::identity(model.n);
            double g = model.decay_factor(t) * model.sigma0;
            for (double& v : s.a) v *= g;
            return s;
        }
        case NoiseModel::Kind::PathCorrelated:
            return model.path_sigma;
    }
    return {};
}

Mat covariance(const NoiseModel& model, const Vec& x, double t) {
    Mat s = volatility(model, x, t);
    return matmul(s, transpose(s));
}

double trace_covariance(const NoiseModel& model, const Vec& x, double t) {
    // tr(sigma sigma') = ||sigma||_F^2, cheap paths for the built-ins
    switch (model.kind) {
        case NoiseModel::Kind::Constant:
            return frobenius_sq(model.sigma);
        case NoiseModel::Kind::DecayingScalar: {
            double g = model.decay_factor(t) * model.sigma0;
            return g * g * model.n;
        }
        case NoiseModel::Kind::PathCorrelated:
            return frobenius_sq(model.path_sigma);
    }
    (void)x;
    return 0.0;
}

double sup_bound(const NoiseModel& model) {
    switch (model.kind) {
        case NoiseModel::Kind::Constant:
            return frobenius_sq(model.sigma);
        case NoiseModel::Kind::DecayingScalar:
            // every decay factor peaks at t = 0 with g(0) = 1
            return model.sigma0 * model.sigma0 * model.n;
        case NoiseModel::Kind::PathCorrelated:
            return frobenius_sq(model.path_sigma);
    }
    return 0.0;
}

}  // namespace mdflow
