#include <gtest/gtest.h>

#include "polyspan/gnn.hpp"
#include "polyspan/mlp.hpp"
#include "polyspan/oracles.hpp"
#include "polyspan/random.hpp"

namespace polyspan {
namespace {

using Vec = Eigen::VectorXd;

bool close(const RowMatrix<double>& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            if (!approx_equal(a(r, c), b(r, c))) return false;
        }
    }
    return true;
}

Mlp<double> zero_mlp(Eigen::Index in, Eigen::Index out) {
    return Mlp<double>({DenseLayer<double>{Eigen::MatrixXd::Zero(out, in), Vec::Zero(out), Activation::Identity}});
}

TEST(Mlp, ShapesAreChecked) {
    DenseLayer<double> a{Eigen::MatrixXd::Zero(3, 2), Vec::Zero(3), Activation::Relu};
    DenseLayer<double> b{Eigen::MatrixXd::Zero(1, 4), Vec::Zero(1), Activation::Identity};
    EXPECT_THROW(Mlp<double>({a, b}), InputError);
    EXPECT_THROW(Mlp<double>::identity(2).forward(Vec::Zero(3)), InputError);
}

TEST(Mlp, RandomInitIsBoundedAndSeeded) {
    Rng r1(0), r2(0);
    const auto a = Mlp<double>::random({4, 8, 4}, {Activation::Relu, Activation::Identity}, r1);
    const auto b = Mlp<double>::random({4, 8, 4}, {Activation::Relu, Activation::Identity}, r2);
    EXPECT_EQ(a.parameters(), b.parameters());
    EXPECT_LE(a.layers()[0].weight.cwiseAbs().maxCoeff(), 0.5);
    EXPECT_LE(a.layers()[1].weight.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(8.0));
}

TEST(FiniteDiff, TwoLayerReluSeedZero) {
    Rng rng(0);
    const auto mlp = Mlp<double>::random({4, 8, 4}, {Activation::Relu, Activation::Identity}, rng);
    Vec x(4);
    x << 0.3, -0.7, 0.2, 0.9;
    const auto report = finite_diff_check(mlp, x, squared_loss<double>(Vec::Constant(4, 0.1)));
    EXPECT_LT(report.max_relative_error, 1e-4);
    EXPECT_GT(report.checked, 0u);
}

TEST(FiniteDiff, IdentityMlpGradientIsTwiceResidual) {
    const auto mlp = Mlp<double>::identity(3);
    Vec x(3), t(3);
    x << 1.0, -2.0, 0.5;
    t << 0.0, 1.0, 0.5;
    const Vec g = mlp.parameter_gradient(x, squared_loss<double>(t).gradient(mlp.forward(x)));
    const Vec residual = 2.0 * (x - t);
    EXPECT_EQ(Vec(g.tail(3)), residual);
    for (Eigen::Index r = 0; r < 3; ++r) {
        for (Eigen::Index c = 0; c < 3; ++c) EXPECT_EQ(g(r * 3 + c), residual(r) * x(c));
    }
    EXPECT_LT(finite_diff_check(mlp, x, squared_loss<double>(t)).max_relative_error, 1e-6);
}

TEST(FiniteDiff, KinkedUnitsAreExcluded) {
    // Zero input: hidden pre-activations equal the biases; unit 0 sits on the
    // kink, unit 1 is dead, unit 2 is live.
    DenseLayer<double> hidden{Eigen::MatrixXd::Constant(3, 2, 0.5), Vec(3), Activation::Relu};
    hidden.bias << 0.0, -1.0, 0.7;
    DenseLayer<double> out{Eigen::MatrixXd::Constant(1, 3, 0.4), Vec::Constant(1, 0.1), Activation::Identity};
    const Mlp<double> mlp({hidden, out});
    const auto report = finite_diff_check(mlp, Vec::Zero(2), squared_loss<double>(Vec::Constant(1, 2.0)));
    EXPECT_GT(report.excluded, 0u);
    EXPECT_GT(report.checked, 0u);
    EXPECT_LT(report.max_relative_error, 1e-4);
}

TEST(LayerParamsTest, SeedDeterminesParameters) {
    LayerConfig cfg;
    cfg.seed = 9;
    const auto a = make_layer_params(cfg);
    const auto b = make_layer_params(cfg);
    EXPECT_EQ(a.psi.parameters(), b.psi.parameters());
    EXPECT_EQ(a.psi3.parameters(), b.psi3.parameters());
    cfg.seed = 10;
    EXPECT_NE(make_layer_params(cfg).psi.parameters(), a.psi.parameters());
}

TEST(Mpnn, SpanShape) {
    const PolynomialSpan span = mpnn_span(example_graph());
    EXPECT_EQ(span.W(), parse_carrier("1 + V + E"));
    EXPECT_EQ(span.X(), parse_carrier("E + E + E + E"));
    EXPECT_TRUE(validate_span(span).valid());
}

TEST(Mpnn, NoEdgesMaxAggregatorUsesFloor) {
    LayerConfig cfg;
    cfg.aggregator = Aggregator::Max;
    cfg.max_floor = 0.25;
    const GraphContext g(3, {});
    Rng rng(1);
    const auto x = random_features(rng, g, cfg);
    const auto params = make_layer_params(cfg);
    const auto out = mpnn_forward(g, x, cfg, params);
    for (Eigen::Index u = 0; u < 3; ++u) {
        Vec in(cfg.node_width + cfg.message_width);
        in << x.nodes.row(u).transpose(), Vec::Constant(cfg.message_width, 0.25);
        EXPECT_TRUE(out.row(u).transpose().isApprox(params.phi_node.forward(in), 1e-12));
    }
}

TEST(Mpnn, FeatureShapesAreChecked) {
    LayerConfig cfg;
    GraphFeatures x{Eigen::MatrixXd::Zero(3, 2), Eigen::MatrixXd::Zero(2, 1), Eigen::MatrixXd::Zero(1, 1)};
    EXPECT_THROW(mpnn_forward(example_graph(), x, cfg), InputError);
}

TEST(V2, SingleNodeMessageFeedsBothOutputs) {
    LayerConfig cfg;
    const GraphContext g = GraphContext::fully_connected(1);
    Rng rng(2);
    const auto out = v2_forward(g, random_features(rng, g, cfg), cfg);
    EXPECT_EQ(out.message_rows, 1u);
    EXPECT_EQ(out.node_aggregate.values(), out.edge_aggregate.values());
}

TEST(V2, NodeHalfIsMpnnOnTheCompleteGraph) {
    Rng rng(3);
    for (auto agg : {Aggregator::Sum, Aggregator::Max}) {
        LayerConfig cfg;
        cfg.aggregator = agg;
        const GraphContext g = GraphContext::fully_connected(4);
        const auto x = random_features(rng, g, cfg);
        EXPECT_TRUE(close(v2_forward(g, x, cfg).nodes.values(), mpnn_forward(g, x, cfg).values()));
    }
}

TEST(V2, NeedsFullyConnectedGraph) {
    LayerConfig cfg;
    Rng rng(4);
    const GraphContext g = example_graph();
    EXPECT_THROW(v2_forward(g, random_features(rng, g, cfg), cfg), InputError);
    EXPECT_THROW(v3_forward(g, random_features(rng, g, cfg), cfg), InputError);
}

TEST(V3, SpanFiberSizes) {
    const GraphContext g = GraphContext::fully_connected(3);
    const BoundSpan bs(v3_span(3), g);
    ASSERT_EQ(bs.size_Y(), 9u + 27u);
    for (std::size_t y = 0; y < 9; ++y) EXPECT_EQ(bs.fibers()[y].size(), 4u);
    for (std::size_t y = 9; y < 36; ++y) EXPECT_EQ(bs.fibers()[y].size(), 7u);
    // Node j collects the V^2 messages (i, j); pair (i, j) one V^3 message per k.
    for (std::size_t z = 0; z < bs.size_Z(); ++z) EXPECT_EQ(bs.deliveries()[z].size(), 3u);
}

TEST(V3, ZeroWeightsGiveZeroOutputs) {
    LayerConfig cfg;
    cfg.node_width = cfg.edge_width = cfg.graph_width = 1;
    cfg.message_width = 1;
    cfg.output_width = 1;
    LayerParams p{zero_mlp(4, 1), zero_mlp(2, 1), zero_mlp(2, 1), zero_mlp(7, 1)};
    const GraphContext g = GraphContext::fully_connected(3);
    Rng rng(5);
    const auto out = v3_forward(g, random_features(rng, g, cfg), cfg, p);
    EXPECT_TRUE(out.nodes.values().isZero(0));
    EXPECT_TRUE(out.edges.values().isZero(0));
}

TEST(V3, MemoryCapIsEnforced) {
    LayerConfig cfg;
    cfg.memory_cap = 1000;
    const GraphContext g = GraphContext::fully_connected(7);
    Rng rng(6);
    EXPECT_THROW(v3_forward(g, random_features(rng, g, cfg), cfg), InputError);
}

TEST(V3, MessageWidthsMustAgree) {
    LayerConfig cfg;
    auto p = make_layer_params(cfg);
    Rng rng(7);
    p.psi3 = Mlp<double>::random({cfg.graph_width + 3 * cfg.node_width + 3 * cfg.edge_width, 3},
                                 {Activation::Identity}, rng);
    const GraphContext g = GraphContext::fully_connected(2);
    EXPECT_THROW(v3_forward(g, random_features(rng, g, cfg), cfg, p), InputError);
}

TEST(V3, RelaxationOnWorkedExample) {
    const double inf = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd d(3, 3);
    d << 0, 2, 7, inf, 0, 3, inf, inf, 0;
    Eigen::MatrixXd want(3, 3);
    want << 0, 2, 5, inf, 0, 3, inf, inf, 0;
    EXPECT_EQ(v3_relaxation(DistanceMatrix(d)), DistanceMatrix(want));
}

class GnnProperties : public ::testing::TestWithParam<int> {};

LayerConfig config_for(int seed) {
    LayerConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.aggregator = seed % 2 ? Aggregator::Max : Aggregator::Sum;
    cfg.node_width = 1 + seed % 3;
    cfg.edge_width = 1 + (seed / 3) % 2;
    return cfg;
}

TEST_P(GnnProperties, MpnnMatchesDirectEvaluation) {
    const LayerConfig cfg = config_for(GetParam());
    Rng rng(cfg.seed + 100);
    const GraphContext g = random_graph(rng, 8, 24, 20);
    const auto x = random_features(rng, g, cfg);
    const auto params = make_layer_params(cfg);
    EXPECT_TRUE(close(mpnn_forward(g, x, cfg, params).values(), oracle::mpnn(g, x, cfg, params)));
}

TEST_P(GnnProperties, MpnnIsEquivariant) {
    const LayerConfig cfg = config_for(GetParam());
    Rng rng(cfg.seed + 200);
    const GraphContext g = random_graph(rng, 6, 14, 20);
    const auto x = random_features(rng, g, cfg);
    const auto perm = random_permutation(rng, g.nodes());
    const auto moved = permute(g, x, perm);
    const auto a = mpnn_forward(g, x, cfg);
    const auto b = mpnn_forward(moved.graph, moved.features, cfg);
    for (std::size_t u = 0; u < g.nodes(); ++u) {
        for (Eigen::Index c = 0; c < a.width(); ++c) {
            EXPECT_TRUE(approx_equal(a(static_cast<Eigen::Index>(u), c), b(static_cast<Eigen::Index>(perm[u]), c)));
        }
    }
}

TEST_P(GnnProperties, EdgeLayersAreEquivariant) {
    const LayerConfig cfg = config_for(GetParam());
    Rng rng(cfg.seed + 300);
    const std::size_t n = 1 + static_cast<std::size_t>(GetParam()) % 6;
    const GraphContext g = GraphContext::fully_connected(n);
    const auto x = random_features(rng, g, cfg);
    const auto perm = random_permutation(rng, n);
    const auto moved = permute(g, x, perm);
    for (int layer = 0; layer < 2; ++layer) {
        const auto a = layer ? v3_forward(g, x, cfg) : v2_forward(g, x, cfg);
        const auto b = layer ? v3_forward(moved.graph, moved.features, cfg) : v2_forward(moved.graph, moved.features, cfg);
        for (std::size_t i = 0; i < n; ++i) {
            for (Eigen::Index c = 0; c < a.nodes.width(); ++c) {
                ASSERT_TRUE(approx_equal(a.nodes(static_cast<Eigen::Index>(i), c), b.nodes(static_cast<Eigen::Index>(perm[i]), c)));
            }
            for (std::size_t j = 0; j < n; ++j) {
                const auto from = static_cast<Eigen::Index>(i * n + j);
                const auto to = static_cast<Eigen::Index>(perm[i] * n + perm[j]);
                for (Eigen::Index c = 0; c < a.edges.width(); ++c) ASSERT_TRUE(approx_equal(a.edges(from, c), b.edges(to, c)));
            }
        }
    }
}

TEST_P(GnnProperties, MaxAggregationIgnoresDuplicateEdges) {
    LayerConfig cfg = config_for(GetParam());
    cfg.aggregator = Aggregator::Max;
    Rng rng(cfg.seed + 400);
    GraphContext g = random_graph(rng, 6, 10, 20);
    while (g.edge_count() == 0) g = random_graph(rng, 6, 10, 20);
    const auto x = random_features(rng, g, cfg);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, g.edge_count() - 1)(rng);
    std::vector<Edge> edges = g.edges();
    edges.push_back(g.edge(k));
    GraphFeatures y = x;
    y.edges.conservativeResize(y.edges.rows() + 1, Eigen::NoChange);
    y.edges.row(y.edges.rows() - 1) = x.edges.row(static_cast<Eigen::Index>(k));
    EXPECT_EQ(mpnn_forward(g, x, cfg).values(), mpnn_forward(GraphContext(g.nodes(), edges), y, cfg).values());
}

TEST_P(GnnProperties, V3RelaxationIsOneFloydWarshallStep) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 500);
    const DistanceMatrix d = random_distance_matrix(rng, 8);
    EXPECT_EQ(v3_relaxation(d), floyd_warshall_step(d));
}

TEST_P(GnnProperties, RandomMlpGradients) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 600);
    const auto mlp = Mlp<double>::random({5, 6, 6, 3}, {Activation::Relu, Activation::Relu, Activation::Identity}, rng);
    Vec x = Vec::Random(5);
    EXPECT_LT(finite_diff_check(mlp, x, squared_loss<double>(Vec::Random(3))).max_relative_error, 1e-4);
}

INSTANTIATE_TEST_SUITE_P(Seeds, GnnProperties, ::testing::Range(0, 30));

}  // namespace
}  // namespace polyspan
