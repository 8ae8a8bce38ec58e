#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mdflow/noise.hpp"
#include "mdflow/problems.hpp"

namespace mdflow {

// Single origin/destination routing game on a directed multigraph with
// affine edge costs c_e(w) = a_e w + b_e and per-edge noise volatility.
struct TrafficEdge {
    int src = 0, dst = 0;
    double a = 0.0, b = 0.0;
    double sigma = 0.0;
};

struct Network {
    int nodes = 0;
    std::vector<TrafficEdge> edges;
    int origin = 0, dest = 0;
    double demand = 1.0;

    void validate() const;
};

struct PathSet {
    std::vector<std::vector<int>> paths;  // edge-index sequences, origin to dest
    bool truncated = false;
    Mat incidence;  // paths x edges, 0/1

    int count() const { return static_cast<int>(paths.size()); }
};

// Depth-first enumeration of simple origin->dest paths in lexicographic
// edge-index order, truncated at `cap`. Throws if no path exists.
PathSet enumerate_paths(const Network& net, int cap);

struct CostEval {
    Vec loads;       // per edge: w_e = sum of flow on paths through e
    double total;    // C(x) = sum_e w_e c_e(w_e)
    Vec marginal;    // per path: sum_{e in p} (2 a_e w_e + b_e)
};
CostEval cost_eval(const Network& net, const PathSet& ps, const Vec& flow);

// Sigma_{pp'} = sum of sigma_e^2 over shared edges; computed in factored
// form (incidence * diag(sigma)) (incidence * diag(sigma))'.
Mat path_covariance(const Network& net, const PathSet& ps, const Vec& sigma_e);

// Connected random instance: a random origin->dest path through every node
// plus `extra_edges` random directed edges; a_e, b_e uniform on (0,1),
// sigma_e = 0.25. Deterministic per seed.
Network random_network(int nodes, int extra_edges, uint64_t seed);

// Objective over the flow simplex lambda * Delta(paths); gradient is the
// marginal path cost.
Objective make_traffic_objective(const Network& net, const PathSet& ps);

// Dual noise induced by per-edge disturbances: volatility row p has entry
// sigma_e in column e iff e in p.
NoiseModel make_traffic_noise(const Network& net, const PathSet& ps);

struct SocialOptimum {
    Vec flow;
    double cost = 0.0;
    double marginal_spread = 0.0;  // max-min marginal over support paths
    bool certified = false;        // spread below 1e-6 and off-support marginals no smaller
};

// Long-horizon deterministic mirror flow with the entropic map to locate
// the support, followed by a Newton-style polish that equalizes marginal
// costs on the support (first-order optimality on the simplex).
SocialOptimum social_optimum(const Network& net, const PathSet& ps);

// Text format: "nodes N  od o d  demand L" then one "src dst a b sigma"
// line per edge.
Network read_network(std::istream& in);
void write_network(std::ostream& out, const Network& net);

}  // namespace mdflow
