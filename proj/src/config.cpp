#include "mdflow/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace mdflow {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_vec(const Vec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += fmt_real(v[i]);
    }
    return s;
}

}  // namespace

bool KeyValues::has(const std::string& key) const {
    for (auto it = items.rbegin(); it != items.rend(); ++it)
        if (it->first == key) return true;
    return false;
}

std::string KeyValues::get(const std::string& key) const {
    for (auto it = items.rbegin(); it != items.rend(); ++it)
        if (it->first == key) return it->second;
    throw ConfigError(key, "missing required key");
}

std::string KeyValues::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

void KeyValues::set(const std::string& key, const std::string& value) {
    for (auto& kv : items)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    items.emplace_back(key, value);
}

double KeyValues::get_real(const std::string& key) const {
    std::string v = get(key);
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return d;
    } catch (...) {
    }
    throw ConfigError(key, "expected a real number, got '" + v + "'");
}

double KeyValues::get_real_or(const std::string& key, double fallback) const {
    return has(key) ? get_real(key) : fallback;
}

long KeyValues::get_int(const std::string& key) const {
    std::string v = get(key);
    try {
        size_t pos = 0;
        long n = std::stol(v, &pos);
        if (trim(v.substr(pos)).empty()) return n;
    } catch (...) {
    }
    throw ConfigError(key, "expected an integer, got '" + v + "'");
}

long KeyValues::get_int_or(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

Vec KeyValues::get_vec(const std::string& key) const {
    std::istringstream in(get(key));
    Vec v;
    double d;
    while (in >> d) v.push_back(d);
    if (!in.eof()) throw ConfigError(key, "expected space-separated reals");
    if (v.empty()) throw ConfigError(key, "expected at least one real");
    return v;
}

KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno), "empty key");
        kv.set(key, value);
    }
    return kv;
}

KeyValues parse_key_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open file '" + path + "'");
    return parse_key_values(in);
}

void write_key_values(std::ostream& out, const KeyValues& kv) {
    for (const auto& [k, v] : kv.items) out << k << " = " << v << "\n";
}

namespace {

const char* const kKnownKeys[] = {
    "problem.kind", "problem.center", "problem.matrix", "problem.cost",
    "problem.offset", "problem.min_point", "problem.min_value", "problem.alpha",
    "problem.gamma",
    "region.kind", "region.lo", "region.hi", "region.dim", "region.mass",
    "regularizer.name",
    "noise.kind", "noise.sigma", "noise.diag", "noise.sigma0", "noise.decay",
    "noise.q",
    "schedule.kind", "schedule.eta0", "schedule.beta",
    "integrator.dt", "integrator.horizon", "integrator.log_stride", "integrator.y0",
    "ensemble.size", "ensemble.seed", "ensemble.threads",
    "output.dir",
    "diagnostics.audit", "diagnostics.occupation_delta", "diagnostics.hitting_delta",
    "diagnostics.burn_in_frac", "diagnostics.rate_window",
    "rectify.mode",
    "traffic.file", "traffic.nodes", "traffic.extra_edges", "traffic.seed",
    "traffic.path_cap",
};

void check_known_keys(const KeyValues& kv) {
    for (const auto& [k, v] : kv.items) {
        (void)v;
        if (k.rfind("derived.", 0) == 0) continue;  // echoed constants, ignored
        bool known = false;
        for (const char* key : kKnownKeys)
            if (k == key) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(k, "unknown key");
    }
}

Region resolve_region(const KeyValues& kv) {
    std::string kind = kv.get("region.kind");
    if (kind == "box") {
        Vec lo = kv.get_vec("region.lo");
        Vec hi = kv.get_vec("region.hi");
        long dim = kv.get_int_or("region.dim", static_cast<long>(lo.size()));
        if (lo.size() == 1 && dim > 1) lo.assign(dim, lo[0]);
        if (hi.size() == 1 && dim > 1) hi.assign(dim, hi[0]);
        if (lo.size() != hi.size())
            throw ConfigError("region.hi", "lo/hi dimension mismatch");
        try {
            return Region::box(lo, hi);
        } catch (const std::exception& e) {
            throw ConfigError("region.lo", e.what());
        }
    }
    if (kind == "simplex") {
        try {
            return Region::simplex(kv.get_real_or("region.mass", 1.0),
                                   static_cast<int>(kv.get_int("region.dim")));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("region.mass", e.what());
        }
    }
    throw ConfigError("region.kind", "expected box or simplex, got '" + kind + "'");
}

Mat resolve_matrix(const KeyValues& kv, const std::string& key, int dim) {
    std::string spec = kv.get_or(key, "identity");
    if (spec == "identity") return Mat::identity(dim);
    std::istringstream in(spec);
    std::string tag;
    in >> tag;
    if (tag == "diag") {
        Vec d;
        double v;
        while (in >> v) d.push_back(v);
        if (static_cast<int>(d.size()) != dim)
            throw ConfigError(key, "diag entries do not match the dimension");
        return Mat::diag(d);
    }
    if (tag == "scale") {
        double s;
        if (!(in >> s)) throw ConfigError(key, "scale needs a factor");
        Mat m = Mat::identity(dim);
        for (auto& x : m.a) x *= s;
        return m;
    }
    throw ConfigError(key, "expected identity, 'diag ...' or 'scale s'");
}

Objective resolve_problem(const KeyValues& kv, const Region& region) {
    std::string kind = kv.get("problem.kind");
    Objective obj = Objective::linear({0.0});
    if (kind == "quadratic") {
        Vec center = kv.get_vec("problem.center");
        if (static_cast<int>(center.size()) != region.dim())
            throw ConfigError("problem.center", "dimension mismatch with region");
        Mat a = resolve_matrix(kv, "problem.matrix", region.dim());
        try {
            obj = Objective::quadratic(std::move(a), std::move(center));
        } catch (const std::exception& e) {
            throw ConfigError("problem.matrix", e.what());
        }
        if (contains(region, obj.center, 1e-9)) {
            obj.min_point = obj.center;
            obj.min_value = 0.0;
        }
    } else if (kind == "linear") {
        Vec cost = kv.get_vec("problem.cost");
        if (static_cast<int>(cost.size()) != region.dim())
            throw ConfigError("problem.cost", "dimension mismatch with region");
        obj = Objective::linear(std::move(cost), kv.get_real_or("problem.offset", 0.0));
    } else if (kind == "scalar1d") {
        if (region.dim() != 1)
            throw ConfigError("region.dim", "scalar1d needs a one-dimensional region");
        obj = Objective::scalar1d();
    } else {
        throw ConfigError("problem.kind",
                          "expected quadratic, linear or scalar1d, got '" + kind + "'");
    }
    if (kv.has("problem.min_point")) {
        Vec mp = kv.get_vec("problem.min_point");
        if (static_cast<int>(mp.size()) != region.dim())
            throw ConfigError("problem.min_point", "dimension mismatch");
        obj.min_point = mp;
        obj.min_value = kv.get_real("problem.min_value");
    }
    obj.alpha = kv.get_real_or("problem.alpha", obj.alpha);
    obj.gamma = kv.get_real_or("problem.gamma", obj.gamma);
    return obj;
}

Regularizer resolve_regularizer(const KeyValues& kv, const Region& region) {
    std::string name = kv.get_or("regularizer.name",
                                 region.is_simplex() ? "entropic" : "euclidean");
    Regularizer reg = Regularizer::euclidean();
    if (name == "euclidean")
        reg = Regularizer::euclidean();
    else if (name == "entropic")
        reg = Regularizer::entropic();
    else if (name == "vonneumann")
        reg = Regularizer::von_neumann();
    else
        throw ConfigError("regularizer.name", "unknown regularizer '" + name + "'");
    try {
        regularizer_depth(reg, region);  // also validates the pairing
    } catch (const std::exception& e) {
        throw ConfigError("regularizer.name", e.what());
    }
    return reg;
}

NoiseModel resolve_noise(const KeyValues& kv, int dim) {
    std::string kind = kv.get_or("noise.kind", "zero");
    if (kind == "zero") return NoiseModel::zero(dim);
    if (kind == "constant") {
        if (kv.has("noise.diag")) {
            Vec d = kv.get_vec("noise.diag");
            if (static_cast<int>(d.size()) != dim)
                throw ConfigError("noise.diag", "dimension mismatch");
            return NoiseModel::constant(Mat::diag(d));
        }
        return NoiseModel::scaled_identity(kv.get_real("noise.sigma"), dim);
    }
    if (kind == "decaying") {
        std::string decay = kv.get_or("noise.decay", "invlog");
        NoiseModel::Decay d;
        if (decay == "invlog")
            d = NoiseModel::Decay::InvLog;
        else if (decay == "invsqrt")
            d = NoiseModel::Decay::InvSqrtT;
        else if (decay == "logpower")
            d = NoiseModel::Decay::LogPower;
        else
            throw ConfigError("noise.decay",
                              "expected invlog, invsqrt or logpower, got '" + decay + "'");
        try {
            return NoiseModel::decaying(kv.get_real("noise.sigma0"), d, dim,
                                        kv.get_real_or("noise.q", 0.75));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("noise.sigma0", e.what());
        }
    }
    throw ConfigError("noise.kind", "expected zero, constant or decaying, got '" + kind + "'");
}

Schedule resolve_schedule(const KeyValues& kv, const Regularizer& reg,
                          const Region& region, const NoiseModel& noise) {
    std::string kind = kv.get_or("schedule.kind", "constant");
    try {
        if (kind == "constant") return Schedule::constant(kv.get_real_or("schedule.eta0", 1.0));
        if (kind == "powerlaw")
            return Schedule::power_law(kv.get_real_or("schedule.eta0", 1.0),
                                       kv.get_real("schedule.beta"));
        if (kind == "optimized")
            return Schedule::optimized(regularizer_depth(reg, region),
                                       reg.strong_convexity(region), sup_bound(noise));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("schedule.kind", e.what());
    }
    throw ConfigError("schedule.kind",
                      "expected constant, powerlaw or optimized, got '" + kind + "'");
}

void resolve_integrator(const KeyValues& kv, ExperimentConfig& cfg) {
    cfg.integrator.dt = kv.get_real("integrator.dt");
    cfg.integrator.horizon = kv.get_real("integrator.horizon");
    cfg.integrator.log_stride = static_cast<int>(kv.get_int_or("integrator.log_stride", 1));
    std::string y0 = kv.get_or("integrator.y0", "zero");
    if (y0 == "zero") {
        cfg.integrator.y0.clear();
    } else {
        std::istringstream in(y0);
        Vec v;
        double d;
        while (in >> d) v.push_back(d);
        if (v.empty() || !in.eof()) throw ConfigError("integrator.y0", "expected 'zero' or reals");
        if (static_cast<int>(v.size()) != cfg.region.dim())
            throw ConfigError("integrator.y0", "dimension mismatch");
        cfg.integrator.y0 = v;
    }
    cfg.integrator.seed = static_cast<uint64_t>(kv.get_int_or("ensemble.seed", 0));
    try {
        cfg.integrator.validate();
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::string field = "integrator.dt";
        if (msg.find("horizon") != std::string::npos) field = "integrator.horizon";
        if (msg.find("log_stride") != std::string::npos) field = "integrator.log_stride";
        throw ConfigError(field, msg);
    }
}

void resolve_diagnostics(const KeyValues& kv, ExperimentConfig& cfg) {
    std::string audit = kv.get_or("diagnostics.audit", "off");
    if (audit != "on" && audit != "off")
        throw ConfigError("diagnostics.audit", "expected on or off");
    cfg.audit = audit == "on";
    if (kv.has("diagnostics.occupation_delta")) {
        for (double d : kv.get_vec("diagnostics.occupation_delta")) {
            if (!(d > 0)) throw ConfigError("diagnostics.occupation_delta", "must be positive");
            cfg.occupation_deltas.push_back(d);
        }
    }
    cfg.hitting_delta = kv.get_real_or("diagnostics.hitting_delta", 0.0);
    cfg.burn_in_frac = kv.get_real_or("diagnostics.burn_in_frac", 0.2);
    if (!(cfg.burn_in_frac >= 0 && cfg.burn_in_frac < 1))
        throw ConfigError("diagnostics.burn_in_frac", "must lie in [0,1)");
    if (kv.has("diagnostics.rate_window")) {
        Vec w = kv.get_vec("diagnostics.rate_window");
        if (w.size() != 2 || !(w[0] > 0) || !(w[1] > w[0]))
            throw ConfigError("diagnostics.rate_window", "expected '2' increasing positives");
        cfg.rate_window = {w[0], w[1]};
    }
    std::string rmode = kv.get_or("rectify.mode", "none");
    if (rmode == "none")
        cfg.rectify = ExperimentConfig::Rectify::None;
    else if (rmode == "average")
        cfg.rectify = ExperimentConfig::Rectify::Average;
    else if (rmode == "best")
        cfg.rectify = ExperimentConfig::Rectify::Best;
    else
        throw ConfigError("rectify.mode", "expected none, average or best");
}

void echo_config(ExperimentConfig& cfg, const KeyValues& input) {
    KeyValues out = input;
    out.set("integrator.log_stride", std::to_string(cfg.integrator.log_stride));
    out.set("ensemble.size", std::to_string(cfg.ensemble_size));
    out.set("ensemble.seed", std::to_string(cfg.integrator.seed));
    out.set("output.dir", cfg.output_dir);
    double k = cfg.reg.strong_convexity(cfg.region);
    double omega = regularizer_depth(cfg.reg, cfg.region);
    out.set("derived.K", fmt_real(k));
    out.set("derived.omega", fmt_real(omega));
    out.set("derived.sigma_star_sq", fmt_real(sup_bound(cfg.noise)));
    out.set("derived.alpha", fmt_real(cfg.objective.alpha));
    out.set("derived.diameter", fmt_real(diameter(cfg.region)));
    if (cfg.objective.min_point)
        out.set("derived.min_point", fmt_vec(*cfg.objective.min_point));
    cfg.resolved = std::move(out);
}

}  // namespace

ExperimentConfig resolve_experiment(const KeyValues& kv, bool is_traffic) {
    check_known_keys(kv);
    ExperimentConfig cfg;

    if (is_traffic) {
        Network net;
        if (kv.has("traffic.file")) {
            std::ifstream in(kv.get("traffic.file"));
            if (!in) throw ConfigError("traffic.file", "cannot open network file");
            try {
                net = read_network(in);
            } catch (const std::exception& e) {
                throw ConfigError("traffic.file", e.what());
            }
        } else {
            long nodes = kv.get_int("traffic.nodes");
            long extra = kv.get_int_or("traffic.extra_edges", 2 * nodes);
            uint64_t seed = static_cast<uint64_t>(kv.get_int_or("traffic.seed", 1));
            try {
                net = random_network(static_cast<int>(nodes), static_cast<int>(extra), seed);
            } catch (const std::exception& e) {
                throw ConfigError("traffic.nodes", e.what());
            }
        }
        int cap = static_cast<int>(kv.get_int_or("traffic.path_cap", 64));
        PathSet ps;
        try {
            ps = enumerate_paths(net, cap);
        } catch (const std::exception& e) {
            throw ConfigError("traffic.path_cap", e.what());
        }
        cfg.region = Region::simplex(net.demand, ps.count());
        cfg.reg = Regularizer::entropic();
        cfg.objective = make_traffic_objective(net, ps);
        cfg.noise = make_traffic_noise(net, ps);
        SocialOptimum opt = social_optimum(net, ps);
        cfg.objective.min_point = opt.flow;
        cfg.objective.min_value = opt.cost;
        cfg.network = std::move(net);
        cfg.path_set = std::move(ps);
    } else {
        cfg.region = resolve_region(kv);
        cfg.objective = resolve_problem(kv, cfg.region);
        cfg.reg = resolve_regularizer(kv, cfg.region);
        cfg.noise = resolve_noise(kv, cfg.region.dim());
    }
    if (is_traffic) {
        cfg.noise = kv.has("noise.kind") ? resolve_noise(kv, cfg.region.dim()) : cfg.noise;
    }
    cfg.schedule = resolve_schedule(kv, cfg.reg, cfg.region, cfg.noise);
    resolve_integrator(kv, cfg);
    cfg.ensemble_size = static_cast<int>(kv.get_int_or("ensemble.size", 1));
    if (cfg.ensemble_size < 1) throw ConfigError("ensemble.size", "must be >= 1");
    cfg.threads = static_cast<int>(kv.get_int_or("ensemble.threads", 0));
    cfg.output_dir = kv.get_or("output.dir", ".");
    resolve_diagnostics(kv, cfg);
    echo_config(cfg, kv);
    return cfg;
}

}  // namespace mdflow
