#include "polyspan/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace polyspan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Multiples of 1/64 in [-100, 100]: sums and short products stay exact, so
// cancellation cannot masquerade as a law failure.
double dyadic(Rng& rng) { return std::uniform_int_distribution<int>(-6400, 6400)(rng) / 64.0; }

}  // namespace

GraphContext random_graph(Rng& rng, std::size_t max_nodes, std::size_t max_edges, int max_weight) {
    const std::size_t n = uniform_index(rng, 1, max_nodes);
    const std::size_t m = uniform_index(rng, 0, max_edges);
    std::uniform_int_distribution<int> weight(0, max_weight);
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t u = uniform_index(rng, 0, n - 1);
        const std::size_t v = uniform_index(rng, 0, n - 1);
        edges.push_back({u, v, static_cast<double>(weight(rng))});
    }
    return GraphContext(n, std::move(edges));
}

GraphContext example_graph() { return GraphContext(3, {{0, 1, 2}, {0, 2, 7}, {1, 2, 3}}); }

std::vector<NamedGraph> adversarial_graphs() {
    std::vector<NamedGraph> out;
    out.push_back({"single node", GraphContext(1, {})});
    out.push_back({"isolated nodes", GraphContext(4, {})});
    out.push_back({"self-loops", GraphContext(3, {{0, 0, 1}, {0, 1, 4}, {1, 1, 0}, {2, 2, 5}, {1, 2, 2}})});
    out.push_back({"parallel edges", GraphContext(3, {{0, 1, 9}, {0, 1, 3}, {0, 1, 5}, {1, 2, 1}, {1, 2, 1}})});
    out.push_back({"unreachable component", GraphContext(5, {{0, 1, 1}, {1, 0, 1}, {2, 3, 2}, {3, 4, 2}, {4, 2, 2}})});
    std::vector<Edge> chain;
    for (std::size_t v = 0; v + 1 < 8; ++v) chain.push_back({v, v + 1, static_cast<double>(v % 3)});
    out.push_back({"chain", GraphContext(8, chain)});
    out.push_back({"worked example", example_graph()});
    out.push_back({"cycle", GraphContext(4, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 0, 3}, {0, 2, 7}})});
    out.push_back({"star", GraphContext(6, {{1, 0, 4}, {2, 0, 1}, {3, 0, 7}, {0, 4, 2}, {0, 5, 20}, {5, 0, 0}})});
    out.push_back({"zero weights", GraphContext(4, {{0, 1, 0}, {1, 2, 0}, {2, 0, 0}, {2, 3, 0}, {0, 3, 5}})});
    return out;
}

DistanceMatrix random_distance_matrix(Rng& rng, std::size_t max_nodes, int max_weight, double inf_probability) {
    const std::size_t n = uniform_index(rng, 1, max_nodes);
    std::uniform_int_distribution<int> weight(0, max_weight);
    Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index j = 0; j < d.cols(); ++j) {
            if (i == j) {
                d(i, j) = 0;
            } else {
                d(i, j) = coin(rng, inf_probability) ? kInf : weight(rng);
            }
        }
    }
    return DistanceMatrix(std::move(d));
}

std::vector<double> random_distances(Rng& rng, std::size_t n, int max_weight, double inf_probability) {
    std::uniform_int_distribution<int> weight(0, max_weight);
    std::vector<double> d(n);
    for (auto& v : d) v = coin(rng, inf_probability) ? kInf : weight(rng);
    return d;
}

GraphFeatures random_features(Rng& rng, const GraphContext& g, const LayerConfig& cfg) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto fill = [&](Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = unif(rng);
        }
        return m;
    };
    GraphFeatures x;
    x.nodes = fill(static_cast<Eigen::Index>(g.nodes()), cfg.node_width);
    x.edges = fill(static_cast<Eigen::Index>(g.edge_count()), cfg.edge_width);
    x.graph = fill(1, cfg.graph_width);
    return x;
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

double random_value(Rng& rng, ValueKind kind) {
    switch (kind) {
        case ValueKind::TropicalNat:
            return coin(rng, 0.1) ? kInf : static_cast<double>(std::uniform_int_distribution<int>(0, 1000)(rng));
        case ValueKind::Boolean:
            return coin(rng, 0.5) ? 1.0 : 0.0;
        case ValueKind::MaxPlusReal:
            if (coin(rng, 0.1)) return -kInf;
            return dyadic(rng);
        case ValueKind::Real:
            break;
    }
    return dyadic(rng);
}

std::vector<std::array<double, 3>> random_triples(Rng& rng, ValueKind kind, std::size_t count) {
    std::vector<std::array<double, 3>> out(count);
    for (auto& t : out) {
        for (auto& v : t) v = random_value(rng, kind);
    }
    return out;
}

}  // namespace polyspan
