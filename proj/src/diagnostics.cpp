#include "mdflow/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdflow {

namespace {

double dist2(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

double occupation_fraction(const Trajectory& traj, const Vec& center, double delta,
                           double burn_in) {
    if (!(delta > 0)) throw std::invalid_argument("occupation: delta must be positive");
    long total = 0, inside = 0;
    for (size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] < burn_in) continue;
        ++total;
        if (dist2(traj.primal[k], center) <= delta) ++inside;
    }
    if (total == 0) throw std::invalid_argument("occupation: empty window");
    return static_cast<double>(inside) / static_cast<double>(total);
}

std::optional<double> hitting_time(const Trajectory& traj, const Vec& center,
                                   double delta) {
    if (!(delta > 0)) throw std::invalid_argument("hitting_time: delta must be positive");
    for (size_t k = 0; k < traj.size(); ++k)
        if (dist2(traj.primal[k], center) <= delta) return traj.times[k];
    return std::nullopt;
}

FenchelAudit fenchel_audit(const Trajectory& traj, const Objective& obj,
                           const Regularizer& reg, const Region& region,
                           const Vec& target, const Schedule& sched,
                           const NoiseModel& noise) {
    if (traj.size() < 2) throw std::invalid_argument("fenchel_audit: trajectory too short");
    if (!contains(region, target, 1e-9))
        throw std::invalid_argument("fenchel_audit: infeasible target");

    const double K = reg.strong_convexity(region);
    const double h_star = reg_value(reg, region, target);
    const size_t n_pts = traj.size();

    FenchelAudit audit;
    audit.v.resize(n_pts);

    // pointwise ingredients at the logged states
    Vec g_drift(n_pts), g_temp(n_pts), g_ito(n_pts);
    double max_drift_mag = 0.0;
    for (size_t k = 0; k < n_pts; ++k) {
        double t = traj.times[k];
        double e = eta(sched, t);
        Vec ey(traj.dual[k].size());
        for (size_t i = 0; i < ey.size(); ++i) ey[i] = e * traj.dual[k][i];
        audit.v[k] = fenchel_coupling(reg, region, target, ey) / e;
        if (audit.v[k] < -1e-12) ++audit.negative_v_count;

        Evaluation ev = evaluate(obj, traj.primal[k]);
        double drift = 0.0;
        for (size_t i = 0; i < ey.size(); ++i)
            drift -= ev.gradient[i] * (traj.primal[k][i] - target[i]);
        g_drift[k] = drift;
        max_drift_mag = std::max(max_drift_mag, norm2(ev.gradient));

        double hx = reg_value(reg, region, traj.primal[k]);
        g_temp[k] = -(eta_dot(sched, t) / (e * e)) * (h_star - hx);
        g_ito[k] = e * trace_covariance(noise, traj.primal[k], t) / (2.0 * K);
    }

    audit.slack_per_step = 10.0 * std::max(max_drift_mag, 1.0) * diameter(region);

    size_t m = n_pts - 1;
    audit.t.resize(m);
    audit.drift.resize(m);
    audit.temperature.resize(m);
    audit.ito.resize(m);
    audit.residual.resize(m);
    audit.delta_v.resize(m);
    audit.cum_drift.resize(m);
    audit.cum_temperature.resize(m);
    audit.cum_ito.resize(m);
    audit.cum_residual.resize(m);

    double cd = 0, ct = 0, ci = 0, cr = 0;
    for (size_t k = 0; k < m; ++k) {
        double h = traj.times[k + 1] - traj.times[k];
        audit.t[k] = traj.times[k + 1];
        audit.drift[k] = 0.5 * h * (g_drift[k] + g_drift[k + 1]);
        audit.temperature[k] = 0.5 * h * (g_temp[k] + g_temp[k + 1]);
        audit.ito[k] = 0.5 * h * (g_ito[k] + g_ito[k + 1]);
        audit.delta_v[k] = audit.v[k + 1] - audit.v[k];
        audit.residual[k] =
            audit.delta_v[k] - audit.drift[k] - audit.temperature[k] - audit.ito[k];
        audit.max_v_increase = std::max(audit.max_v_increase, audit.delta_v[k]);
        double rhs = audit.drift[k] + audit.temperature[k] + audit.ito[k] +
                     audit.residual[k] + audit.slack_per_step * h;
        if (audit.delta_v[k] > rhs) ++audit.violation_count;
        cd += audit.drift[k];
        ct += audit.temperature[k];
        ci += audit.ito[k];
        cr += audit.residual[k];
        audit.cum_drift[k] = cd;
        audit.cum_temperature[k] = ct;
        audit.cum_ito[k] = ci;
        audit.cum_residual[k] = cr;
    }
    return audit;
}

RateFit rate_fit(const std::vector<double>& times, const std::vector<double>& gaps,
                 double t_lo, double t_hi) {
    if (times.size() != gaps.size())
        throw std::invalid_argument("rate_fit: series length mismatch");
    std::vector<double> lx, ly;
    for (size_t k = 0; k < times.size(); ++k) {
        if (times[k] < t_lo || times[k] > t_hi) continue;
        if (!(gaps[k] > 0))
            throw std::invalid_argument("rate_fit: nonpositive gap inside window");
        lx.push_back(std::log(times[k]));
        ly.push_back(std::log(gaps[k]));
    }
    if (lx.size() < 10) throw std::invalid_argument("rate_fit: fewer than 10 points");
    double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t k = 0; k < lx.size(); ++k) {
        sx += lx[k];
        sy += ly[k];
        sxx += lx[k] * lx[k];
        sxy += lx[k] * ly[k];
        syy += ly[k] * ly[k];
    }
    double vxx = sxx - sx * sx / n;
    double vxy = sxy - sx * sy / n;
    double vyy = syy - sy * sy / n;
    RateFit fit;
    fit.points = static_cast<int>(lx.size());
    fit.slope = vxy / vxx;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.r_squared = vyy > 0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
    return fit;
}

EnsembleSummary ensemble_summary(const std::vector<Trajectory>& trajs,
                                 const Vec& target, double delta, double burn_in,
                                 double f_star) {
    if (trajs.empty()) throw std::invalid_argument("ensemble_summary: empty ensemble");
    const size_t n_pts = trajs.front().size();
    for (const auto& tr : trajs)
        if (tr.size() != n_pts ||
            std::abs(tr.times.back() - trajs.front().times.back()) > 1e-12)
            throw std::invalid_argument("ensemble_summary: paths on different grids");

    EnsembleSummary s;
    double horizon = trajs.front().times.back();
    std::vector<double> msd(trajs.size());
    double sum_hit = 0.0;
    int hits = 0;
    double sum_occ = 0.0;
    s.min_final_gap = std::numeric_limits<double>::infinity();
    s.max_final_gap = -std::numeric_limits<double>::infinity();

    for (size_t p = 0; p < trajs.size(); ++p) {
        const Trajectory& tr = trajs[p];
        // trapezoidal time average of the squared distance
        double acc = 0.0;
        auto sq = [&](size_t k) {
            double d = dist2(tr.primal[k], target);
            return d * d;
        };
        double prev = sq(0);
        for (size_t k = 1; k < n_pts; ++k) {
            double cur = sq(k);
            acc += 0.5 * (tr.times[k] - tr.times[k - 1]) * (prev + cur);
            prev = cur;
        }
        msd[p] = acc / (tr.times.back() - tr.times.front());

        auto hit = hitting_time(tr, target, delta);
        if (hit) {
            sum_hit += *hit;
            ++hits;
        } else {
            sum_hit += horizon;
        }
        sum_occ += occupation_fraction(tr, target, delta, burn_in);

        double gap = tr.f.back() - f_star;
        s.mean_final_gap += gap;
        s.min_final_gap = std::min(s.min_final_gap, gap);
        s.max_final_gap = std::max(s.max_final_gap, gap);
    }

    double n = static_cast<double>(trajs.size());
    double mean = 0.0;
    for (double v : msd) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : msd) var += (v - mean) * (v - mean);
    s.mean_time_avg_sq_dist = mean;
    s.se_time_avg_sq_dist = trajs.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    s.mean_hitting_time = sum_hit / n;
    s.hit_fraction = hits / n;
    s.mean_occupation = sum_occ / n;
    s.mean_final_gap /= n;
    return s;
}

}  // namespace mdflow
