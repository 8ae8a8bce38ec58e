#pragma once

#include "mdflow/linalg.hpp"

namespace mdflow {

// Volatility model sigma(x, t) of the dual disturbance dZ = sigma dW.
// All built-ins are state-independent, so the Lipschitz-in-x modulus is 0.
struct NoiseModel {
    enum class Kind { Constant, DecayingScalar, PathCorrelated } kind;
    enum class Decay { InvLog, InvSqrtT, LogPower };

    Mat sigma;  // Constant: n x m

    double sigma0 = 0.0;  // DecayingScalar: g(t) * sigma0 * I_n
    Decay decay = Decay::InvLog;
    double q = 0.75;  // LogPower exponent, must be > 1/2
    int n = 0;

    Mat path_sigma;  // PathCorrelated: rows = paths, cols = edges, sigma_e if e in p

    static NoiseModel constant(Mat sigma);
    static NoiseModel scaled_identity(double s, int n);
    static NoiseModel zero(int n);
    static NoiseModel decaying(double sigma0, Decay decay, int n, double q = 0.75);
    // incidence: paths x edges 0/1 matrix
    static NoiseModel path_correlated(const Mat& incidence, const Vec& sigma_e);

    int state_dim() const;
    int wiener_dim() const;
    double decay_factor(double t) const;  // g(t) for DecayingScalar, else 1
};

Mat volatility(const NoiseModel& model, const Vec& x, double t);
Mat covariance(const NoiseModel& model, const Vec& x, double t);   // sigma sigma'
double trace_covariance(const NoiseModel& model, const Vec& x, double t);
double sup_bound(const NoiseModel& model);  // sup_(x,t) ||sigma||_F^2

}  // namespace mdflow
