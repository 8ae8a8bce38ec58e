#include "mdflow/dynamics.hpp"

#include <cmath>
#include <limits>

#include "mdflow/rng.hpp"

namespace mdflow {

namespace {

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

struct Logger {
    Trajectory traj;
    const Objective* obj;
    const Regularizer* reg;
    const Region* region;
    const Schedule* sched;
    bool track_fenchel;

    void log(double t, const Vec& y, const Vec& x, double fx, double favg_int,
             const Vec& xavg_int) {
        traj.times.push_back(t);
        traj.dual.push_back(y);
        traj.primal.push_back(x);
        traj.f.push_back(fx);
        if (t > 0) {
            traj.f_avg.push_back(favg_int / t);
            Vec xa(x.size());
            for (size_t i = 0; i < x.size(); ++i) xa[i] = xavg_int[i] / t;
            traj.avg_primal.push_back(std::move(xa));
        } else {
            traj.f_avg.push_back(fx);
            traj.avg_primal.push_back(x);
        }
        if (traj.f_best.empty() || fx < traj.f_best.back()) {
            traj.f_best.push_back(fx);
            traj.best = {t, x, fx};
        } else {
            traj.f_best.push_back(traj.f_best.back());
        }
        if (track_fenchel) {
            double e = eta(*sched, t);
            Vec ey(y.size());
            for (size_t i = 0; i < y.size(); ++i) ey[i] = e * y[i];
            traj.fenchel.push_back(
                fenchel_coupling(*reg, *region, *obj->min_point, ey) / e);
        }
    }
};

Trajectory integrate_core(const Objective& obj, const Regularizer& reg,
                          const Region& region, const NoiseModel* noise,
                          const Schedule& sched, const IntegratorConfig& cfg,
                          int path_index) {
    cfg.validate();
    const int n = region.dim();
    if (obj.dim() != n)
        throw std::invalid_argument("integrate: objective/region dimension mismatch");
    Vec y = cfg.y0.empty() ? Vec(n, 0.0) : cfg.y0;
    if (static_cast<int>(y.size()) != n)
        throw std::invalid_argument("integrate: y0 dimension mismatch");

    const long steps = std::lround(cfg.horizon / cfg.dt);
    const double dt = cfg.dt, sqrt_dt = std::sqrt(dt);

    const int m = noise ? noise->wiener_dim() : 0;
    const bool constant_sigma =
        noise && noise->kind != NoiseModel::Kind::DecayingScalar;
    Mat sigma_const;
    bool sigma_is_zero = true;
    if (noise) {
        if (noise->state_dim() != n)
            throw std::invalid_argument("integrate: noise dimension mismatch");
        if (constant_sigma) {
            sigma_const = volatility(*noise, y, 0.0);
            sigma_is_zero = frobenius_sq(sigma_const) == 0.0;
        } else {
            sigma_is_zero = noise->sigma0 == 0.0;
        }
    }

    Logger lg;
    lg.obj = &obj;
    lg.reg = &reg;
    lg.region = &region;
    lg.sched = &sched;
    lg.track_fenchel = obj.min_point.has_value();

    Vec ey(n), xi(std::max(m, 1)), w(n);
    double favg_int = 0.0;
    Vec xavg_int(n, 0.0);

    auto primal_at = [&](double t, const Vec& yy) {
        double e = eta(sched, t);
        for (int i = 0; i < n; ++i) ey[i] = e * yy[i];
        return mirror_map(reg, region, ey);
    };

    Vec x = primal_at(0.0, y);
    Evaluation ev = evaluate(obj, x);
    lg.log(0.0, y, x, ev.value, favg_int, xavg_int);

    for (long k = 0; k < steps; ++k) {
        const double t = k * dt;
        // dual drift
        for (int i = 0; i < n; ++i) y[i] -= dt * ev.gradient[i];
        // dual diffusion
        if (noise && !sigma_is_zero) {
            step_normals(cfg.seed, static_cast<uint64_t>(path_index),
                         static_cast<uint64_t>(k), m, xi.data());
            if (constant_sigma) {
                const Mat& s = sigma_const;
                for (int i = 0; i < n; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < m; ++j) acc += s(i, j) * xi[j];
                    y[i] += sqrt_dt * acc;
                }
            } else {
                double g = noise->decay_factor(t) * noise->sigma0;
                for (int i = 0; i < n; ++i) y[i] += sqrt_dt * g * xi[i];
            }
        }
        if (!all_finite(y)) throw NumericalAbort(k);

        const double t1 = (k + 1) * dt;
        Vec x1 = primal_at(t1, y);
        Evaluation ev1 = evaluate(obj, x1);
        if (!std::isfinite(ev1.value)) throw NumericalAbort(k);

        favg_int += 0.5 * dt * (ev.value + ev1.value);
        for (int i = 0; i < n; ++i) xavg_int[i] += 0.5 * dt * (x[i] + x1[i]);

        x = std::move(x1);
        ev = std::move(ev1);
        if ((k + 1) % cfg.log_stride == 0 || k + 1 == steps)
            lg.log(t1, y, x, ev.value, favg_int, xavg_int);
    }
    return std::move(lg.traj);
}

}  // namespace

Trajectory integrate_md(const Objective& obj, const Regularizer& reg,
                        const Region& region, double eta0,
                        const IntegratorConfig& cfg) {
    Schedule s = Schedule::constant(eta0);
    return integrate_core(obj, reg, region, nullptr, s, cfg, 0);
}

Trajectory integrate_smd(const Objective& obj, const Regularizer& reg,
                         const Region& region, const NoiseModel& noise,
                         const Schedule& sched, const IntegratorConfig& cfg,
                         int path_index) {
    return integrate_core(obj, reg, region, &noise, sched, cfg, path_index);
}

namespace {

// shared logging for the one-dimensional pair
struct ScalarLogger {
    Trajectory traj;
    double favg_int = 0.0, xavg_int = 0.0;

    static double logit(double x) { return std::log(x) - std::log(1.0 - x); }

    void accumulate(double dt, double x_prev, double x_next) {
        favg_int += 0.5 * dt * (x_prev + x_next);  // f(x) = x
        xavg_int = favg_int;
    }
    void log(double t, double x) {
        traj.times.push_back(t);
        traj.primal.push_back({x});
        traj.dual.push_back({logit(x)});
        traj.f.push_back(x);
        traj.f_avg.push_back(t > 0 ? favg_int / t : x);
        traj.avg_primal.push_back({t > 0 ? xavg_int / t : x});
        if (traj.f_best.empty() || x < traj.f_best.back()) {
            traj.f_best.push_back(x);
            traj.best = {t, {x}, x};
        } else {
            traj.f_best.push_back(traj.f_best.back());
        }
    }
};

}  // namespace

Hr1dResult integrate_hr1d(double sigma, double x0, const IntegratorConfig& cfg) {
    cfg.validate();
    if (!(x0 > 0.0 && x0 < 1.0))
        throw std::invalid_argument("integrate_hr1d: x0 must lie in (0,1)");
    const double eps = 1e-12;
    const long steps = std::lround(cfg.horizon / cfg.dt);
    const double dt = cfg.dt, sqrt_dt = std::sqrt(dt);

    double x_shd = x0, x_smd = x0;
    double y = ScalarLogger::logit(x0);
    double x_dual = x0;

    ScalarLogger shd, smd, dual;
    shd.log(0.0, x_shd);
    smd.log(0.0, x_smd);
    dual.log(0.0, x_dual);
    // dual-form trajectory keeps the true dual variable
    dual.traj.dual.back() = {y};

    double xi = 0.0;
    for (long k = 0; k < steps; ++k) {
        step_normals(cfg.seed, 0, static_cast<uint64_t>(k), 1, &xi);
        double dw = sqrt_dt * xi;

        double g_shd = x_shd * (1.0 - x_shd);
        double next_shd = x_shd + g_shd * (-dt + sigma * dw);

        double g_smd = x_smd * (1.0 - x_smd);
        double next_smd = x_smd + g_smd * (-dt + sigma * dw) +
                          0.5 * g_smd * (1.0 - 2.0 * x_smd) * sigma * sigma * dt;

        y += -dt + sigma * dw;
        double next_dual = 1.0 / (1.0 + std::exp(-y));

        next_shd = std::clamp(next_shd, eps, 1.0 - eps);
        next_smd = std::clamp(next_smd, eps, 1.0 - eps);
        next_dual = std::clamp(next_dual, eps, 1.0 - eps);
        if (!std::isfinite(next_shd) || !std::isfinite(next_smd) || !std::isfinite(y))
            throw NumericalAbort(k);

        shd.accumulate(dt, x_shd, next_shd);
        smd.accumulate(dt, x_smd, next_smd);
        dual.accumulate(dt, x_dual, next_dual);
        x_shd = next_shd;
        x_smd = next_smd;
        x_dual = next_dual;

        if ((k + 1) % cfg.log_stride == 0 || k + 1 == steps) {
            double t1 = (k + 1) * dt;
            shd.log(t1, x_shd);
            smd.log(t1, x_smd);
            dual.log(t1, x_dual);
            dual.traj.dual.back() = {y};
        }
    }
    return {std::move(shd.traj), std::move(smd.traj), std::move(dual.traj)};
}

Trajectory rectify(const Trajectory& traj, RectifyMode mode) {
    if (traj.size() == 0) throw std::invalid_argument("rectify: empty trajectory");
    Trajectory out;
    out.times = traj.times;
    out.dual = traj.dual;
    const size_t n = traj.size();
    const size_t d = traj.primal.front().size();

    if (mode == RectifyMode::Average) {
        out.primal.resize(n);
        out.f.resize(n);
        Vec acc(d, 0.0);
        double t0 = traj.times.front();
        double facc = 0.0;
        out.primal[0] = traj.primal[0];
        out.f[0] = traj.f[0];
        for (size_t k = 1; k < n; ++k) {
            double h = traj.times[k] - traj.times[k - 1];
            for (size_t i = 0; i < d; ++i)
                acc[i] += 0.5 * h * (traj.primal[k - 1][i] + traj.primal[k][i]);
            facc += 0.5 * h * (traj.f[k - 1] + traj.f[k]);
            double span = traj.times[k] - t0;
            Vec xa(d);
            for (size_t i = 0; i < d; ++i) xa[i] = acc[i] / span;
            out.primal[k] = std::move(xa);
            out.f[k] = facc / span;
        }
    } else {
        out.primal.resize(n);
        out.f.resize(n);
        size_t best = 0;
        for (size_t k = 0; k < n; ++k) {
            if (traj.f[k] < traj.f[best]) best = k;  // strict: earliest wins ties
            out.primal[k] = traj.primal[best];
            out.f[k] = traj.f[best];
        }
        out.best = {traj.times[best], traj.primal[best], traj.f[best]};
    }
    out.avg_primal = out.primal;
    out.f_avg = out.f;
    out.f_best = out.f;
    if (mode == RectifyMode::Average) {
        size_t best = 0;
        for (size_t k = 0; k < n; ++k)
            if (out.f[k] < out.f[best]) best = k;
        out.best = {out.times[best], out.primal[best], out.f[best]};
    }
    return out;
}

}  // namespace mdflow
