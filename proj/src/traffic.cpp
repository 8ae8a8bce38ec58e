#include "mdflow/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mdflow/mirror.hpp"
#include "mdflow/rng.hpp"

namespace mdflow {

void Network::validate() const {
    if (nodes < 2) throw std::invalid_argument("network: need at least two nodes");
    if (origin == dest) throw std::invalid_argument("network: origin equals destination");
    if (origin < 0 || origin >= nodes || dest < 0 || dest >= nodes)
        throw std::invalid_argument("network: origin/destination out of range");
    if (!(demand > 0)) throw std::invalid_argument("network: demand must be positive");
    for (const auto& e : edges) {
        if (e.src < 0 || e.src >= nodes || e.dst < 0 || e.dst >= nodes)
            throw std::invalid_argument("network: edge endpoint out of range");
        if (!(e.a >= 0) || !(e.b >= 0) || !std::isfinite(e.a) || !std::isfinite(e.b))
            throw std::invalid_argument("network: edge cost coefficients must be >= 0");
        if (!(e.sigma >= 0))
            throw std::invalid_argument("network: edge volatility must be >= 0");
    }
}

namespace {

void dfs_paths(const Network& net, const std::vector<std::vector<int>>& out_edges,
               int node, std::vector<int>& edge_stack, std::vector<char>& visited,
               int cap, std::vector<std::vector<int>>& found, bool& overflow) {
    if (overflow) return;
    if (node == net.dest) {
        if (static_cast<int>(found.size()) < cap)
            found.push_back(edge_stack);
        else
            overflow = true;
        return;
    }
    for (int ei : out_edges[node]) {
        int next = net.edges[ei].dst;
        if (visited[next]) continue;
        visited[next] = 1;
        edge_stack.push_back(ei);
        dfs_paths(net, out_edges, next, edge_stack, visited, cap, found, overflow);
        edge_stack.pop_back();
        visited[next] = 0;
        if (overflow) return;
    }
}

}  // namespace

PathSet enumerate_paths(const Network& net, int cap) {
    net.validate();
    if (cap < 1) throw std::invalid_argument("enumerate_paths: cap must be >= 1");
    std::vector<std::vector<int>> out_edges(net.nodes);
    for (size_t ei = 0; ei < net.edges.size(); ++ei)
        out_edges[net.edges[ei].src].push_back(static_cast<int>(ei));
    // already in increasing edge-index order per node

    std::vector<std::vector<int>> found;
    std::vector<int> stack;
    std::vector<char> visited(net.nodes, 0);
    visited[net.origin] = 1;
    bool overflow = false;
    dfs_paths(net, out_edges, net.origin, stack, visited, cap, found, overflow);
    if (found.empty())
        throw std::runtime_error("enumerate_paths: no origin->destination path");

    PathSet ps;
    ps.paths = std::move(found);
    ps.truncated = overflow;
    ps.incidence = Mat(ps.count(), static_cast<int>(net.edges.size()));
    for (int p = 0; p < ps.count(); ++p)
        for (int ei : ps.paths[p]) ps.incidence(p, ei) = 1.0;
    return ps;
}

CostEval cost_eval(const Network& net, const PathSet& ps, const Vec& flow) {
    if (static_cast<int>(flow.size()) != ps.count())
        throw std::invalid_argument("cost_eval: flow dimension mismatch");
    double sum = 0.0;
    for (double v : flow) {
        if (v < -1e-9) throw std::invalid_argument("cost_eval: negative path flow");
        sum += v;
    }
    if (std::abs(sum - net.demand) > 1e-6 * std::max(1.0, net.demand))
        throw std::invalid_argument("cost_eval: flow does not meet demand");

    CostEval ev;
    ev.loads.assign(net.edges.size(), 0.0);
    for (int p = 0; p < ps.count(); ++p)
        for (int ei : ps.paths[p]) ev.loads[ei] += flow[p];

    ev.total = 0.0;
    for (size_t e = 0; e < net.edges.size(); ++e)
        ev.total += ev.loads[e] * (net.edges[e].a * ev.loads[e] + net.edges[e].b);

    ev.marginal.assign(ps.count(), 0.0);
    for (int p = 0; p < ps.count(); ++p) {
        double s = 0.0;
        for (int ei : ps.paths[p])
            s += 2.0 * net.edges[ei].a * ev.loads[ei] + net.edges[ei].b;
        ev.marginal[p] = s;
    }
    return ev;
}

Mat path_covariance(const Network& net, const PathSet& ps, const Vec& sigma_e) {
    if (static_cast<int>(sigma_e.size()) != static_cast<int>(net.edges.size()))
        throw std::invalid_argument("path_covariance: sigma_e dimension mismatch");
    Mat b(ps.count(), static_cast<int>(net.edges.size()));
    for (int p = 0; p < ps.count(); ++p)
        for (int e = 0; e < b.cols; ++e) b(p, e) = ps.incidence(p, e) * sigma_e[e];
    return matmul(b, transpose(b));
}

Network random_network(int nodes, int extra_edges, uint64_t seed) {
    if (nodes < 2) throw std::invalid_argument("random_network: need at least two nodes");
    CounterRng rng(seed, /*stream=*/11);
    Network net;
    net.nodes = nodes;
    net.origin = 0;
    net.dest = nodes - 1;
    net.demand = 1.0;

    // backbone: a random origin->dest path visiting every node
    std::vector<int> mid(nodes - 2);
    std::iota(mid.begin(), mid.end(), 1);
    for (int i = static_cast<int>(mid.size()) - 1; i > 0; --i)
        std::swap(mid[i], mid[rng.next_below(i + 1)]);
    std::vector<int> order;
    order.push_back(net.origin);
    order.insert(order.end(), mid.begin(), mid.end());
    order.push_back(net.dest);

    auto add_edge = [&](int s, int d) {
        TrafficEdge e;
        e.src = s;
        e.dst = d;
        e.a = rng.next_double();
        e.b = rng.next_double();
        e.sigma = 0.25;
        net.edges.push_back(e);
    };
    for (int i = 0; i + 1 < nodes; ++i) add_edge(order[i], order[i + 1]);
    for (int k = 0; k < extra_edges; ++k) {
        int s = static_cast<int>(rng.next_below(nodes));
        int d = static_cast<int>(rng.next_below(nodes));
        if (s == d) d = (d + 1) % nodes;
        add_edge(s, d);
    }
    return net;
}

Objective make_traffic_objective(const Network& net, const PathSet& ps) {
    Objective obj;
    obj.kind = Objective::Kind::Traffic;
    obj.traffic_dim = ps.count();
    obj.eval_fn = [net, ps](const Vec& x, Vec& grad) {
        CostEval ev = cost_eval(net, ps, x);
        grad = ev.marginal;
        return ev.total;
    };
    return obj;
}

NoiseModel make_traffic_noise(const Network& net, const PathSet& ps) {
    Vec sigma_e(net.edges.size());
    for (size_t e = 0; e < net.edges.size(); ++e) sigma_e[e] = net.edges[e].sigma;
    return NoiseModel::path_correlated(ps.incidence, sigma_e);
}

SocialOptimum social_optimum(const Network& net, const PathSet& ps) {
    const int np = ps.count();
    const double lambda = net.demand;

    // marginal(x) = H x + c, the gradient of the total cost
    Mat h(np, np);
    Vec c(np, 0.0);
    for (int p = 0; p < np; ++p) {
        for (int q = 0; q < np; ++q) {
            double s = 0.0;
            for (int e = 0; e < ps.incidence.cols; ++e)
                s += 2.0 * net.edges[e].a * ps.incidence(p, e) * ps.incidence(q, e);
            h(p, q) = s;
        }
        for (int ei : ps.paths[p]) c[p] += net.edges[ei].b;
    }

    // mirror flow with the entropic map to locate the optimal support
    Region region = Region::simplex(lambda, np);
    Regularizer reg = Regularizer::entropic();
    Vec y(np, 0.0);
    const double dt = 1e-2;
    for (int k = 0; k < 60000; ++k) {
        Vec x = mirror_map(reg, region, y);
        Vec marg = axpy(1.0, c, matvec(h, x));
        for (int p = 0; p < np; ++p) y[p] -= dt * marg[p];
    }
    Vec x_md = mirror_map(reg, region, y);

    std::vector<char> support(np, 0);
    for (int p = 0; p < np; ++p) support[p] = x_md[p] > 1e-9 * lambda;

    // active-set polish: equalize marginals on the support
    SocialOptimum opt;
    Vec x(np, 0.0);
    for (int pass = 0; pass < 4 * np + 8; ++pass) {
        std::vector<int> s_idx;
        for (int p = 0; p < np; ++p)
            if (support[p]) s_idx.push_back(p);
        if (s_idx.empty()) {
            support[std::max_element(x_md.begin(), x_md.end()) - x_md.begin()] = 1;
            continue;
        }
        int ns = static_cast<int>(s_idx.size());
        // [ H_SS  -1 ] [x_S ]   [-c_S  ]
        // [ 1'     0 ] [ nu ] = [lambda]
        Mat sys(ns + 1, ns + 1);
        Vec rhs(ns + 1, 0.0);
        for (int i = 0; i < ns; ++i) {
            for (int j = 0; j < ns; ++j) sys(i, j) = h(s_idx[i], s_idx[j]);
            sys(i, i) += 1e-12;  // ridge for linearly dependent paths
            sys(i, ns) = -1.0;
            sys(ns, i) = 1.0;
            rhs[i] = -c[s_idx[i]];
        }
        rhs[ns] = lambda;
        Vec sol;
        try {
            sol = solve_linear(sys, rhs);
        } catch (const std::runtime_error&) {
            break;  // fall back to the mirror-flow point below
        }
        double nu = sol[ns];

        int worst_neg = -1;
        double most_neg = -1e-12;
        for (int i = 0; i < ns; ++i)
            if (sol[i] < most_neg) {
                most_neg = sol[i];
                worst_neg = s_idx[i];
            }
        if (worst_neg >= 0) {
            support[worst_neg] = 0;
            continue;
        }

        std::fill(x.begin(), x.end(), 0.0);
        for (int i = 0; i < ns; ++i) x[s_idx[i]] = std::max(sol[i], 0.0);
        Vec marg = axpy(1.0, c, matvec(h, x));
        int best_off = -1;
        double best_gain = 1e-9;
        for (int p = 0; p < np; ++p)
            if (!support[p] && nu - marg[p] > best_gain) {
                best_gain = nu - marg[p];
                best_off = p;
            }
        if (best_off >= 0) {
            support[best_off] = 1;
            continue;
        }

        // KKT satisfied
        opt.flow = x;
        CostEval ev = cost_eval(net, ps, x);
        opt.cost = ev.total;
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < ns; ++i) {
            lo = std::min(lo, ev.marginal[s_idx[i]]);
            hi = std::max(hi, ev.marginal[s_idx[i]]);
        }
        opt.marginal_spread = hi - lo;
        bool off_ok = true;
        for (int p = 0; p < np; ++p)
            if (!support[p] && ev.marginal[p] < lo - 1e-6) off_ok = false;
        opt.certified = opt.marginal_spread <= 1e-6 && off_ok;
        return opt;
    }

    opt.flow = x_md;
    opt.cost = cost_eval(net, ps, x_md).total;
    opt.certified = false;
    return opt;
}

Network read_network(std::istream& in) {
    Network net;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("network file: empty input");
    {
        std::istringstream hdr(line);
        std::string kw_nodes, kw_od, kw_demand;
        if (!(hdr >> kw_nodes >> net.nodes >> kw_od >> net.origin >> net.dest >>
              kw_demand >> net.demand) ||
            kw_nodes != "nodes" || kw_od != "od" || kw_demand != "demand")
            throw std::runtime_error("network file: malformed header");
    }
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        TrafficEdge e;
        if (!(ls >> e.src >> e.dst >> e.a >> e.b >> e.sigma)) {
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            throw std::runtime_error("network file: malformed edge line: " + line);
        }
        net.edges.push_back(e);
    }
    net.validate();
    return net;
}

void write_network(std::ostream& out, const Network& net) {
    out << "nodes " << net.nodes << "  od " << net.origin << " " << net.dest
        << "  demand " << net.demand << "\n";
    char buf[160];
    for (const auto& e : net.edges) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g %.17g\n", e.src, e.dst, e.a,
                      e.b, e.sigma);
        out << buf;
    }
}

}  // namespace mdflow
