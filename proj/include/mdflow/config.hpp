#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdflow/dynamics.hpp"
#include "mdflow/traffic.hpp"

namespace mdflow {

// Raised on malformed or inconsistent experiment configuration; `field`
// names the offending key.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string f, const std::string& what)
        : std::runtime_error(f + ": " + what), field(std::move(f)) {}
};

// Flat "section.key = value" text format, '#' starts a comment. Keys are
// unique; later duplicates override earlier ones.
struct KeyValues {
    std::vector<std::pair<std::string, std::string>> items;

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;  // throws ConfigError if absent
    std::string get_or(const std::string& key, const std::string& fallback) const;
    void set(const std::string& key, const std::string& value);

    double get_real(const std::string& key) const;
    double get_real_or(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int_or(const std::string& key, long fallback) const;
    Vec get_vec(const std::string& key) const;  // space-separated reals
};

KeyValues parse_key_values(std::istream& in);
KeyValues parse_key_values_file(const std::string& path);
void write_key_values(std::ostream& out, const KeyValues& kv);

// Fully resolved experiment: every component constructed and validated.
struct ExperimentConfig {
    Region region = Region::box_uniform(0.0, 1.0, 1);
    Regularizer reg = Regularizer::euclidean();
    Objective objective = Objective::linear({0.0});
    NoiseModel noise = NoiseModel::zero(1);
    Schedule schedule = Schedule::constant(1.0);
    IntegratorConfig integrator;
    int ensemble_size = 1;
    int threads = 0;
    std::string output_dir = ".";

    bool audit = false;
    std::vector<double> occupation_deltas;
    double hitting_delta = 0.0;
    double burn_in_frac = 0.2;
    std::optional<std::pair<double, double>> rate_window;
    enum class Rectify { None, Average, Best } rectify = Rectify::None;

    // traffic runs keep the instance around for reporting
    std::optional<Network> network;
    std::optional<PathSet> path_set;

    KeyValues resolved;  // echoed back with derived constants
};

// Builds and validates an ExperimentConfig; throws ConfigError naming the
// field on any problem. `is_traffic` selects the traffic-demo schema.
ExperimentConfig resolve_experiment(const KeyValues& kv, bool is_traffic);

}  // namespace mdflow
