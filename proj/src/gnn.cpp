#include "polyspan/gnn.hpp"

#include <random>

namespace polyspan {

namespace {

using Row = RowVector<double>;

struct Widths {
    Eigen::Index graph, node, edge, padded;
};

Widths check_features(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg) {
    auto fail = [](const std::string& what, Eigen::Index rows, Eigen::Index cols, Eigen::Index want_rows,
                   Eigen::Index want_cols) {
        throw InputError(what + " features are " + std::to_string(rows) + " x " + std::to_string(cols) +
                         ", expected " + std::to_string(want_rows) + " x " + std::to_string(want_cols));
    };
    const auto n = static_cast<Eigen::Index>(g.nodes());
    const auto m = static_cast<Eigen::Index>(g.edge_count());
    if (x.nodes.rows() != n || x.nodes.cols() != cfg.node_width) {
        fail("node", x.nodes.rows(), x.nodes.cols(), n, cfg.node_width);
    }
    if (x.edges.rows() != m || x.edges.cols() != cfg.edge_width) {
        fail("edge", x.edges.rows(), x.edges.cols(), m, cfg.edge_width);
    }
    if (x.graph.rows() != 1 || x.graph.cols() != cfg.graph_width) {
        fail("graph", x.graph.rows(), x.graph.cols(), 1, cfg.graph_width);
    }
    return {cfg.graph_width, cfg.node_width, cfg.edge_width,
            std::max({cfg.graph_width, cfg.node_width, cfg.edge_width})};
}

RowMatrix<double> padded(const Eigen::MatrixXd& m, Eigen::Index width) {
    RowMatrix<double> out = RowMatrix<double>::Zero(m.rows(), width);
    out.leftCols(m.cols()) = m;
    return out;
}

/// Data on 1 + V + E (or 1 + V + V^2): graph, node and edge rows, zero padded.
DataMap<double> assemble_input(const Carrier& W, const GraphContext& g, const GraphFeatures& x, Eigen::Index width) {
    return DataMap<double>::from_blocks(W, g, {padded(x.graph, width), padded(x.nodes, width), padded(x.edges, width)});
}

/// Concatenates the first widths[k] entries of each width-`stride` segment.
Row gather(const Row& concat, Eigen::Index stride, const std::vector<Eigen::Index>& widths) {
    Eigen::Index total = 0;
    for (auto w : widths) total += w;
    Row out(total);
    Eigen::Index at = 0;
    for (std::size_t k = 0; k < widths.size(); ++k) {
        out.segment(at, widths[k]) = concat.segment(static_cast<Eigen::Index>(k) * stride, widths[k]);
        at += widths[k];
    }
    return out;
}

FoldStrategy<double>::Mapping message_mapping(const Mlp<double>& mlp, const Widths& w, std::size_t fiber) {
    std::vector<Eigen::Index> widths;
    if (fiber == 4) {
        widths = {w.graph, w.node, w.node, w.edge};
    } else {
        widths = {w.graph, w.node, w.node, w.node, w.edge, w.edge, w.edge};
    }
    return [&mlp, widths, stride = w.padded](const Row& concat) { return Row(mlp.forward_row(gather(concat, stride, widths))); };
}

/// Max over an empty preimage yields the configured floor instead of -inf.
void apply_floor(DataMap<double>& agg, const BoundSpan& bs, const LayerConfig& cfg, Eigen::Index row_offset = 0,
                 Eigen::Index rows = -1) {
    if (cfg.aggregator != Aggregator::Max) return;
    if (rows < 0) rows = agg.rows();
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (bs.deliveries()[static_cast<std::size_t>(row_offset + r)].empty()) agg.values().row(r).setConstant(cfg.max_floor);
    }
}

DataMap<double> readout(const Mlp<double>& phi, const Carrier& carrier, const GraphContext& g,
                        const Eigen::MatrixXd& features, const DataMap<double>& aggregate) {
    RowMatrix<double> out(aggregate.rows(), phi.output_width());
    for (Eigen::Index r = 0; r < aggregate.rows(); ++r) {
        Row in(features.cols() + aggregate.width());
        in << features.row(r), aggregate.row(r);
        out.row(r) = phi.forward_row(in);
    }
    return DataMap<double>(carrier, g, std::move(out));
}

void require_fully_connected(const GraphContext& g) {
    if (!g.is_fully_connected()) throw InputError("edge-updating layers need a fully-connected graph (E = V^2)");
}

DataMap<double> slice(const DataMap<double>& m, const GraphContext& g, std::size_t term, const char* carrier) {
    return DataMap<double>(parse_carrier(carrier), g, m.block(g, term));
}

}  // namespace

LayerParams make_layer_params(const LayerConfig& cfg) {
    const auto relu_then_linear = std::vector<Activation>{Activation::Relu, Activation::Identity};
    std::mt19937_64 rng(cfg.seed);
    LayerParams p;
    p.psi = Mlp<double>::random({cfg.graph_width + 2 * cfg.node_width + cfg.edge_width, cfg.hidden_width,
                                 cfg.message_width},
                                relu_then_linear, rng);
    p.phi_node = Mlp<double>::random({cfg.node_width + cfg.message_width, cfg.hidden_width, cfg.output_width},
                                     relu_then_linear, rng);
    p.phi_edge = Mlp<double>::random({cfg.edge_width + cfg.message_width, cfg.hidden_width, cfg.output_width},
                                     relu_then_linear, rng);
    p.psi3 = Mlp<double>::random({cfg.graph_width + 3 * cfg.node_width + 3 * cfg.edge_width, cfg.hidden_width,
                                  cfg.message_width},
                                 relu_then_linear, rng);
    return p;
}

Semiring<double> aggregator_semiring(Aggregator a) {
    return a == Aggregator::Sum ? real_sum_product<double>() : max_plus<double>();
}

SpanSpec mpnn_spec() {
    return {"1 + V + E", "E + (E + E) + E", "E", "V", "[inj[1].bang; inj[2].src; inj[2].tgt; inj[3]]",
            "[id; id; id; id]", "tgt"};
}

PolynomialSpan mpnn_span(const GraphContext&) { return build_span(mpnn_spec()); }

DataMap<double> mpnn_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg) {
    return mpnn_forward(g, x, cfg, make_layer_params(cfg));
}

DataMap<double> mpnn_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg,
                             const LayerParams& params) {
    const Widths w = check_features(g, x, cfg);
    const BoundSpan bs(mpnn_span(g), g);
    const auto fold = FoldStrategy<double>::learned(params.psi.output_width(), {{4, message_mapping(params.psi, w, 4)}});
    DataMap<double> agg = integral_transform(bs, aggregator_semiring(cfg.aggregator), fold,
                                             assemble_input(bs.span().W(), g, x, w.padded));
    apply_floor(agg, bs, cfg);
    return readout(params.phi_node, bs.span().Z(), g, x.nodes, agg);
}

SpanSpec v2_single_span_spec() {
    return {"1 + V + V^2", "V^2 + (V^2 + V^2) + V^2", "V^2", "V + V^2",
            "[inj[1].bang; inj[2].src; inj[2].tgt; inj[3]]", "[id; id; id; id]", "[inj[1].tgt; inj[2]]"};
}

SpanSpec v2_node_spec() {
    SpanSpec s = v2_single_span_spec();
    s.Z = "V";
    s.o = "tgt";
    return s;
}

SpanSpec v2_edge_spec() {
    SpanSpec s = v2_single_span_spec();
    s.Z = "V^2";
    s.o = "id";
    return s;
}

EdgeLayerOutput v2_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg) {
    return v2_forward(g, x, cfg, make_layer_params(cfg));
}

EdgeLayerOutput v2_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg,
                           const LayerParams& params) {
    require_fully_connected(g);
    const Widths w = check_features(g, x, cfg);
    const BoundSpan to_nodes(build_span(v2_node_spec()), g);
    const BoundSpan to_edges(build_span(v2_edge_spec()), g);
    const Semiring<double> s = aggregator_semiring(cfg.aggregator);
    const auto fold = FoldStrategy<double>::learned(params.psi.output_width(), {{4, message_mapping(params.psi, w, 4)}});

    // One message map on V^2, delivered by two spans.
    const DataMap<double> messages =
        argument_pushforward(to_nodes, s, fold, pullback(to_nodes, assemble_input(to_nodes.span().W(), g, x, w.padded)));
    DataMap<double> node_agg = message_pushforward(to_nodes, s, messages);
    apply_floor(node_agg, to_nodes, cfg);
    DataMap<double> edge_agg = message_pushforward(to_edges, s, messages);

    EdgeLayerOutput out;
    out.nodes = readout(params.phi_node, to_nodes.span().Z(), g, x.nodes, node_agg);
    out.edges = readout(params.phi_edge, to_edges.span().Z(), g, x.edges, edge_agg);
    out.node_aggregate = std::move(node_agg);
    out.edge_aggregate = std::move(edge_agg);
    out.message_rows = static_cast<std::size_t>(messages.rows());
    return out;
}

SpanSpec v3_spec() {
    return {"1 + V + V^2",
            "V^2 + V^2 + V^2 + V^2 + V^3 + V^3 + V^3 + V^3 + V^3 + V^3 + V^3",
            "V^2 + V^3",
            "V + V^2",
            "[inj[1].bang; inj[2].src; inj[2].tgt; inj[3]; "
            "inj[1].bang; inj[2].proj[1]; inj[2].proj[2]; inj[2].proj[3]; "
            "inj[3].proj[1,2]; inj[3].proj[2,3]; inj[3].proj[1,3]]",
            "[inj[1]; inj[1]; inj[1]; inj[1]; inj[2]; inj[2]; inj[2]; inj[2]; inj[2]; inj[2]; inj[2]]",
            "[inj[1].tgt; inj[2].proj[1,3]]"};
}

PolynomialSpan v3_span(std::size_t) { return build_span(v3_spec()); }

EdgeLayerOutput v3_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg) {
    return v3_forward(g, x, cfg, make_layer_params(cfg));
}

EdgeLayerOutput v3_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg,
                           const LayerParams& params) {
    require_fully_connected(g);
    const Widths w = check_features(g, x, cfg);
    const std::size_t n = g.nodes();
    const std::size_t cubic = n * n * n * static_cast<std::size_t>(cfg.message_width);
    if (cubic > cfg.memory_cap) {
        throw InputError("V^3 messages need " + std::to_string(cubic) + " values, over the cap of " +
                         std::to_string(cfg.memory_cap));
    }
    if (params.psi.output_width() != params.psi3.output_width()) {
        throw InputError("psi and psi3 must produce messages of the same width");
    }
    const BoundSpan bs(v3_span(n), g);
    const auto fold = FoldStrategy<double>::learned(
        params.psi.output_width(), {{4, message_mapping(params.psi, w, 4)}, {7, message_mapping(params.psi3, w, 7)}});
    const auto trace = integral_transform_traced(bs, aggregator_semiring(cfg.aggregator), fold,
                                                 assemble_input(bs.span().W(), g, x, w.padded));
    DataMap<double> node_agg = slice(trace.output, g, 0, "V");
    DataMap<double> edge_agg = slice(trace.output, g, 1, "V^2");
    apply_floor(node_agg, bs, cfg, 0, node_agg.rows());
    apply_floor(edge_agg, bs, cfg, node_agg.rows(), edge_agg.rows());

    EdgeLayerOutput out;
    out.nodes = readout(params.phi_node, node_agg.carrier(), g, x.nodes, node_agg);
    out.edges = readout(params.phi_edge, edge_agg.carrier(), g, x.edges, edge_agg);
    out.node_aggregate = std::move(node_agg);
    out.edge_aggregate = std::move(edge_agg);
    out.message_rows = static_cast<std::size_t>(trace.messages.rows());
    return out;
}

DataMap<double> v3_transform(const GraphContext& g, const GraphFeatures& x, const Semiring<double>& s,
                             const FoldStrategy<double>& fold) {
    require_fully_connected(g);
    const Eigen::Index width = std::max({x.graph.cols(), x.nodes.cols(), x.edges.cols()});
    const BoundSpan bs(v3_span(g.nodes()), g);
    return integral_transform(bs, s, fold, assemble_input(bs.span().W(), g, x, width));
}

FoldStrategy<double> path_fold(const Semiring<double>& s, Eigen::Index width) {
    auto fold_segments = [s, width](const Row& concat, const std::vector<Eigen::Index>& segments) {
        Row out(width);
        for (Eigen::Index c = 0; c < width; ++c) {
            double acc = s.one;
            for (Eigen::Index k : segments) acc = s.times(acc, concat(k * width + c));
            out(c) = acc;
        }
        return out;
    };
    return FoldStrategy<double>::learned(
        width, {{4, [fold_segments](const Row& c) { return fold_segments(c, {0, 1, 2, 3}); }},
                {7, [fold_segments](const Row& c) { return fold_segments(c, {4, 5}); }}});
}

DistanceMatrix v3_relaxation(const DistanceMatrix& d) {
    const std::size_t n = d.nodes();
    const auto nn = static_cast<Eigen::Index>(n);
    const GraphContext g = GraphContext::fully_connected(n);
    GraphFeatures x;
    x.graph = Eigen::MatrixXd::Zero(1, 1);
    x.nodes = Eigen::MatrixXd::Zero(nn, 1);
    x.edges.resize(nn * nn, 1);
    for (Eigen::Index i = 0; i < nn; ++i) {
        for (Eigen::Index j = 0; j < nn; ++j) x.edges(i * nn + j, 0) = d.entries(i, j);
    }
    const Semiring<double> s = min_plus<double>();
    const DataMap<double> out = v3_transform(g, x, s, path_fold(s, 1));
    return to_distance_matrix(slice(out, g, 1, "V^2"), n);
}

PermutedInstance permute(const GraphContext& g, const GraphFeatures& x, const std::vector<std::size_t>& perm) {
    const std::size_t n = g.nodes();
    if (perm.size() != n) throw InputError("permutation size does not match the node count");
    PermutedInstance out;
    out.features.graph = x.graph;
    out.features.nodes.resize(x.nodes.rows(), x.nodes.cols());
    for (std::size_t u = 0; u < n; ++u) {
        out.features.nodes.row(static_cast<Eigen::Index>(perm[u])) = x.nodes.row(static_cast<Eigen::Index>(u));
    }
    if (g.is_fully_connected()) {
        std::vector<double> weights(n * n);
        out.features.edges.resize(x.edges.rows(), x.edges.cols());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t from = i * n + j;
                const std::size_t to = perm[i] * n + perm[j];
                weights[to] = g.edge(from).weight;
                out.features.edges.row(static_cast<Eigen::Index>(to)) = x.edges.row(static_cast<Eigen::Index>(from));
            }
        }
        out.graph = GraphContext::fully_connected(n, weights);
    } else {
        std::vector<Edge> edges = g.edges();
        for (Edge& e : edges) {
            e.source = perm[e.source];
            e.target = perm[e.target];
        }
        out.graph = GraphContext(n, std::move(edges));
        out.features.edges = x.edges;
    }
    return out;
}

}  // namespace polyspan
