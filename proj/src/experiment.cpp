#include "mdflow/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mdflow/diagnostics.hpp"
#include "mdflow/ensemble.hpp"

namespace mdflow {

namespace {

void put_real(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
    std::ofstream out(path);
    int n = static_cast<int>(tr.primal.front().size());
    out << "t";
    for (int i = 1; i <= n; ++i) out << ",x_" << i;
    out << ",f,f_avg,f_best,fenchel\n";
    for (size_t k = 0; k < tr.size(); ++k) {
        put_real(out, tr.times[k]);
        for (int i = 0; i < n; ++i) {
            out << ",";
            put_real(out, tr.primal[k][i]);
        }
        out << ",";
        put_real(out, tr.f[k]);
        out << ",";
        put_real(out, tr.f_avg[k]);
        out << ",";
        put_real(out, tr.f_best[k]);
        out << ",";
        put_real(out, tr.has_fenchel() ? tr.fenchel[k] : std::nan(""));
        out << "\n";
    }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) return {2, "output.dir: cannot create '" + cfg.output_dir + "'"};

    std::vector<Trajectory> paths;
    try {
        paths = run_ensemble(cfg.objective, cfg.reg, cfg.region, cfg.noise,
                             cfg.schedule, cfg.integrator, cfg.ensemble_size,
                             cfg.threads);
    } catch (const NumericalAbort& e) {
        return {3, std::string("numerical abort: ") + e.what()};
    }

    for (size_t i = 0; i < paths.size(); ++i)
        write_trajectory_csv(cfg.output_dir + "/trajectory_" + std::to_string(i) + ".csv",
                             paths[i]);

    std::ofstream sum(cfg.output_dir + "/summary.csv");
    sum << "stat,value\n";
    auto row = [&](const std::string& key, double v) {
        sum << key << ",";
        put_real(sum, v);
        sum << "\n";
    };
    row("paths", static_cast<double>(paths.size()));
    row("horizon", cfg.integrator.horizon);
    row("dt", cfg.integrator.dt);

    if (cfg.objective.min_point) {
        const Vec& target = *cfg.objective.min_point;
        double f_star = cfg.objective.min_value.value_or(0.0);
        double delta = cfg.hitting_delta > 0 ? cfg.hitting_delta
                                             : 0.1 * diameter(cfg.region);
        double burn_in = cfg.burn_in_frac * cfg.integrator.horizon;
        EnsembleSummary es = ensemble_summary(paths, target, delta, burn_in, f_star);
        row("mean_time_avg_sq_dist", es.mean_time_avg_sq_dist);
        row("se_time_avg_sq_dist", es.se_time_avg_sq_dist);
        row("mean_hitting_time", es.mean_hitting_time);
        row("hit_fraction", es.hit_fraction);
        row("mean_final_gap", es.mean_final_gap);
        row("min_final_gap", es.min_final_gap);
        row("max_final_gap", es.max_final_gap);
        for (double d : cfg.occupation_deltas) {
            double occ = 0.0;
            for (const auto& tr : paths)
                occ += occupation_fraction(tr, target, d, burn_in);
            char key[64];
            std::snprintf(key, sizeof key, "mean_occupation_delta_%g", d);
            row(key, occ / static_cast<double>(paths.size()));
        }

        if (cfg.audit) {
            int violations = 0, negative_v = 0;
            double max_incr = 0.0, cum_residual = 0.0;
            for (const auto& tr : paths) {
                FenchelAudit a = fenchel_audit(tr, cfg.objective, cfg.reg, cfg.region,
                                               target, cfg.schedule, cfg.noise);
                violations += a.violation_count;
                negative_v += a.negative_v_count;
                max_incr = std::max(max_incr, a.max_v_increase);
                cum_residual += a.cumulative_residual();
            }
            row("audit_violations", violations);
            row("audit_negative_v", negative_v);
            row("audit_max_v_increase", max_incr);
            row("audit_mean_cum_residual",
                cum_residual / static_cast<double>(paths.size()));
        }

        if (cfg.rate_window) {
            // ensemble-mean optimality gap of the requested series
            const auto& t0 = paths.front().times;
            std::vector<double> gap(t0.size(), 0.0);
            for (const auto& tr : paths) {
                for (size_t k = 0; k < t0.size(); ++k) {
                    double g;
                    if (cfg.rectify == ExperimentConfig::Rectify::Average)
                        g = evaluate(cfg.objective, tr.avg_primal[k]).value - f_star;
                    else if (cfg.rectify == ExperimentConfig::Rectify::Best)
                        g = tr.f_best[k] - f_star;
                    else
                        g = tr.f[k] - f_star;
                    gap[k] += g;
                }
            }
            for (double& g : gap) g /= static_cast<double>(paths.size());
            std::ofstream gs(cfg.output_dir + "/gap_series.csv");
            gs << "t,mean_gap\n";
            for (size_t k = 0; k < t0.size(); ++k) {
                put_real(gs, t0[k]);
                gs << ",";
                put_real(gs, gap[k]);
                gs << "\n";
            }
            try {
                RateFit fit =
                    rate_fit(t0, gap, cfg.rate_window->first, cfg.rate_window->second);
                row("rate_fit_slope", fit.slope);
                row("rate_fit_r_squared", fit.r_squared);
                row("rate_fit_points", fit.points);
            } catch (const std::exception&) {
                row("rate_fit_slope", std::nan(""));
            }
        }
    }
    sum.close();

    std::ofstream echo(cfg.output_dir + "/config.echo");
    write_key_values(echo, cfg.resolved);
    return {0, ""};
}

}  // namespace mdflow
