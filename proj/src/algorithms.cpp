#include "polyspan/algorithms.hpp"

#include <cmath>
#include <limits>

namespace polyspan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RowMatrix<double> column(const std::vector<double>& v) {
    RowMatrix<double> m(static_cast<Eigen::Index>(v.size()), 1);
    for (std::size_t k = 0; k < v.size(); ++k) m(static_cast<Eigen::Index>(k), 0) = v[k];
    return m;
}

std::vector<double> to_vector(const DataMap<double>& m) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) out[static_cast<std::size_t>(r)] = m(r, 0);
    return out;
}

void require_non_negative(const GraphContext& g) {
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        if (g.edge(k).weight < 0 || std::isnan(g.edge(k).weight)) {
            throw InputError("edge " + std::to_string(k) + " has a negative weight; tropical weights must be >= 0");
        }
    }
}

}  // namespace

SpanSpec bellman_ford_spec() {
    return {"V + (V + E)",
            "(V + E) + (V + E)",
            "V + E",
            "V",
            "[inj[1]; inj[1].src; inj[2]; inj[3]]",
            "[inj[1]; inj[2]; inj[1]; inj[2]]",
            "[id; tgt]"};
}

PolynomialSpan bellman_ford_span(const GraphContext&) { return build_span(bellman_ford_spec()); }

BellmanFordState make_bellman_ford_state(const GraphContext& g, const std::vector<double>& distances,
                                         const Semiring<double>& s) {
    if (distances.size() != g.nodes()) throw InputError("need one distance per node");
    const Carrier V = parse_carrier("V");
    const Carrier E = parse_carrier("E");
    std::vector<double> w(g.edge_count());
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = s.kind == ValueKind::Boolean ? s.one : g.edge(k).weight;
    }
    return {DataMap<double>(V, g, column(distances)), DataMap<double>::constant(V, g, 1, s.one),
            DataMap<double>(E, g, column(w))};
}

DataMap<double> bellman_ford_input(const GraphContext& g, const BellmanFordState& st) {
    return DataMap<double>::from_blocks(parse_carrier("V + (V + E)"), g,
                                        {st.distances.values(), st.bias.values(), st.weights.values()});
}

DataMap<double> bellman_ford_step(const BoundSpan& bs, const BellmanFordState& st, const Semiring<double>& s) {
    return integral_transform(bs, s, FoldStrategy<double>::semiring_fold(), bellman_ford_input(bs.graph(), st));
}

DataMap<double> bellman_ford_step(const GraphContext& g, const BellmanFordState& st) {
    const BoundSpan bs(bellman_ford_span(g), g);
    return bellman_ford_step(bs, st);
}

namespace {

std::vector<double> propagate(const GraphContext& g, std::size_t source, const Semiring<double>& s,
                              std::size_t* rounds) {
    if (source >= g.nodes()) {
        throw InputError("source " + std::to_string(source) + " is not a node of a graph with " +
                         std::to_string(g.nodes()) + " nodes");
    }
    std::vector<double> d(g.nodes(), s.zero);
    d[source] = s.one;
    BellmanFordState st = make_bellman_ford_state(g, d, s);
    const BoundSpan bs(bellman_ford_span(g), g);
    std::size_t done = 0;
    for (; done + 1 < g.nodes(); ++done) {
        DataMap<double> next = bellman_ford_step(bs, st, s);
        if (next == st.distances) break;
        st.distances = std::move(next);
    }
    if (rounds) *rounds = done;
    return to_vector(st.distances);
}

}  // namespace

std::vector<double> bellman_ford(const GraphContext& g, std::size_t source, std::size_t* rounds) {
    require_non_negative(g);
    return propagate(g, source, min_plus<double>(), rounds);
}

std::vector<double> reachability(const GraphContext& g, std::size_t source) {
    return propagate(g, source, boolean_or_and<double>(), nullptr);
}

DistanceMatrix distance_matrix(const GraphContext& g) {
    const auto n = static_cast<Eigen::Index>(g.nodes());
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, kInf);
    for (const Edge& e : g.edges()) {
        auto& slot = m(static_cast<Eigen::Index>(e.source), static_cast<Eigen::Index>(e.target));
        slot = std::min(slot, e.weight);
    }
    m.diagonal().setZero();
    return DistanceMatrix(std::move(m));
}

SpanSpec floyd_warshall_spec() {
    return {"V^2", "V^3 + V^3", "V^3", "V^2", "[proj[1,2]; proj[2,3]]", "[id; id]", "proj[1,3]"};
}

PolynomialSpan floyd_warshall_span(std::size_t) { return build_span(floyd_warshall_spec()); }

DataMap<double> to_data_map(const DistanceMatrix& d, const GraphContext& complete) {
    const auto n = d.entries.rows();
    RowMatrix<double> values(n * n, 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) values(i * n + j, 0) = d.entries(i, j);
    }
    return DataMap<double>(parse_carrier("V^2"), complete, std::move(values));
}

DistanceMatrix to_distance_matrix(const DataMap<double>& m, std::size_t n) {
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd out(nn, nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
        for (Eigen::Index j = 0; j < nn; ++j) out(i, j) = m(i * nn + j, 0);
    }
    return DistanceMatrix(std::move(out));
}

namespace {

DistanceMatrix fw_step(const BoundSpan& bs, const DistanceMatrix& d) {
    const DataMap<double> out = integral_transform(bs, min_plus<double>(), FoldStrategy<double>::semiring_fold(),
                                                   to_data_map(d, bs.graph()));
    return to_distance_matrix(out, d.nodes());
}

}  // namespace

DistanceMatrix floyd_warshall_step(const DistanceMatrix& d) {
    const GraphContext complete = GraphContext::fully_connected(d.nodes());
    const BoundSpan bs(floyd_warshall_span(d.nodes()), complete);
    return fw_step(bs, d);
}

DistanceMatrix floyd_warshall(const DistanceMatrix& d0, std::size_t* rounds) {
    if (d0.entries.rows() != d0.entries.cols()) throw InputError("distance matrix must be square");
    for (Eigen::Index i = 0; i < d0.entries.rows(); ++i) {
        if (d0.entries(i, i) != 0.0) {
            throw InputError("distance matrix diagonal must be 0 (entry " + std::to_string(i) + ")");
        }
        for (Eigen::Index j = 0; j < d0.entries.cols(); ++j) {
            if (d0.entries(i, j) < 0 || std::isnan(d0.entries(i, j))) {
                throw InputError("distance matrix entries must be non-negative");
            }
        }
    }
    const GraphContext complete = GraphContext::fully_connected(d0.nodes());
    const BoundSpan bs(floyd_warshall_span(d0.nodes()), complete);
    DistanceMatrix d = d0;
    std::size_t done = 0;
    while (true) {
        DistanceMatrix next(d.entries.cwiseMin(fw_step(bs, d).entries));
        ++done;
        if (next == d) break;
        d = std::move(next);
    }
    if (rounds) *rounds = done;
    return d;
}

}  // namespace polyspan
