#include "polyspan/oracles.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace polyspan::oracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> bellman_ford(const GraphContext& g, std::size_t source) {
    std::vector<double> dist(g.nodes(), kInf);
    dist.at(source) = 0;
    for (std::size_t round = 1; round < g.nodes(); ++round) {
        bool changed = false;
        for (const Edge& e : g.edges()) {
            if (dist[e.source] == kInf) continue;
            const double candidate = dist[e.source] + e.weight;
            if (candidate < dist[e.target]) {
                dist[e.target] = candidate;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

DistanceMatrix floyd_warshall(const DistanceMatrix& d0) {
    Eigen::MatrixXd d = d0.entries;
    const Eigen::Index n = d.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
            }
        }
    }
    return DistanceMatrix(std::move(d));
}

std::vector<double> reachability(const GraphContext& g, std::size_t source) {
    std::vector<std::vector<std::size_t>> out(g.nodes());
    for (const Edge& e : g.edges()) out[e.source].push_back(e.target);
    std::vector<double> seen(g.nodes(), 0.0);
    std::deque<std::size_t> queue{source};
    seen.at(source) = 1.0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : out[u]) {
            if (seen[v] == 0.0) {
                seen[v] = 1.0;
                queue.push_back(v);
            }
        }
    }
    return seen;
}

std::vector<double> bellman_ford_update(const GraphContext& g, const std::vector<double>& d) {
    std::vector<double> next = d;
    for (const Edge& e : g.edges()) next[e.target] = std::min(next[e.target], d[e.source] + e.weight);
    return next;
}

DistanceMatrix relaxation_step(const DistanceMatrix& d) {
    const Eigen::Index n = d.entries.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Constant(n, n, kInf);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = 0; k < n; ++k) out(i, j) = std::min(out(i, j), d.entries(i, k) + d.entries(k, j));
        }
    }
    return DistanceMatrix(std::move(out));
}

Eigen::MatrixXd mpnn(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg,
                     const LayerParams& params) {
    const auto n = static_cast<Eigen::Index>(g.nodes());
    const Eigen::Index width = params.psi.output_width();
    const bool sum = cfg.aggregator == Aggregator::Sum;
    Eigen::MatrixXd aggregate = Eigen::MatrixXd::Constant(n, width, sum ? 0.0 : -kInf);
    std::vector<bool> touched(g.nodes(), false);
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const Edge& e = g.edge(k);
        Eigen::VectorXd args(x.graph.cols() + 2 * x.nodes.cols() + x.edges.cols());
        args << x.graph.row(0).transpose(), x.nodes.row(static_cast<Eigen::Index>(e.source)).transpose(),
            x.nodes.row(static_cast<Eigen::Index>(e.target)).transpose(),
            x.edges.row(static_cast<Eigen::Index>(k)).transpose();
        const Eigen::VectorXd message = params.psi.forward(args);
        auto slot = aggregate.row(static_cast<Eigen::Index>(e.target));
        for (Eigen::Index c = 0; c < width; ++c) {
            slot(c) = sum ? slot(c) + message(c) : std::max(slot(c), message(c));
        }
        touched[e.target] = true;
    }
    Eigen::MatrixXd out(n, params.phi_node.output_width());
    for (Eigen::Index u = 0; u < n; ++u) {
        if (!sum && !touched[static_cast<std::size_t>(u)]) aggregate.row(u).setConstant(cfg.max_floor);
        Eigen::VectorXd in(x.nodes.cols() + width);
        in << x.nodes.row(u).transpose(), aggregate.row(u).transpose();
        out.row(u) = params.phi_node.forward(in).transpose();
    }
    return out;
}

}  // namespace polyspan::oracle
