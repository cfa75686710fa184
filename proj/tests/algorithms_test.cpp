#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "polyspan/algorithms.hpp"
#include "polyspan/oracles.hpp"
#include "polyspan/random.hpp"

namespace polyspan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Dist = std::vector<double>;

DistanceMatrix matrix(std::initializer_list<std::initializer_list<double>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return DistanceMatrix(m);
}

Dist flat(const DataMap<double>& d) { return {d.values().data(), d.values().data() + d.values().size()}; }

TEST(BellmanFord, WorkedExample) {
    std::size_t rounds = 0;
    EXPECT_EQ(bellman_ford(example_graph(), 0, &rounds), (Dist{0, 2, 5}));
    EXPECT_LE(rounds, 2u);
    EXPECT_EQ(oracle::bellman_ford(example_graph(), 0), (Dist{0, 2, 5}));
}

TEST(BellmanFord, NoEdges) {
    EXPECT_EQ(bellman_ford(GraphContext(3, {}), 1), (Dist{kInf, 0, kInf}));
    EXPECT_EQ(oracle::bellman_ford(GraphContext(3, {}), 1), (Dist{kInf, 0, kInf}));
}

TEST(BellmanFord, UnitChain) {
    const GraphContext g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
    EXPECT_EQ(bellman_ford(g, 0), (Dist{0, 1, 2, 3}));
}

TEST(BellmanFord, DisconnectedNodeStaysInfinite) {
    EXPECT_EQ(oracle::bellman_ford(GraphContext(3, {{0, 1, 4}}), 0), (Dist{0, 4, kInf}));
}

TEST(BellmanFord, BadInputs) {
    EXPECT_THROW(bellman_ford(example_graph(), 3), InputError);
    EXPECT_THROW(bellman_ford(GraphContext(2, {{0, 1, -1}}), 0), InputError);
}

TEST(BellmanFordStep, Examples) {
    const GraphContext g1 = example_graph();
    EXPECT_EQ(flat(bellman_ford_step(g1, make_bellman_ford_state(g1, {0, kInf, kInf}))), (Dist{0, 2, 7}));
    EXPECT_EQ(flat(bellman_ford_step(g1, make_bellman_ford_state(g1, {0, 2, 5}))), (Dist{0, 2, 5}));
    const GraphContext one(1, {});
    EXPECT_EQ(flat(bellman_ford_step(one, make_bellman_ford_state(one, {0}))), (Dist{0}));
}

TEST(BellmanFordStep, SpanMatchesTextDescription) {
    const PolynomialSpan span = bellman_ford_span(example_graph());
    EXPECT_EQ(span.W(), parse_carrier("V + (V + E)"));
    EXPECT_EQ(span.X(), parse_carrier("(V + E) + (V + E)"));
    EXPECT_EQ(span.Y(), parse_carrier("V + E"));
    EXPECT_EQ(span.Z(), parse_carrier("V"));
    EXPECT_TRUE(validate_span(span).valid());
}

TEST(Reachability, BooleanSemiring) {
    EXPECT_EQ(reachability(example_graph(), 1), (Dist{0, 1, 1}));
    EXPECT_EQ(reachability(GraphContext(4, {{3, 0, 5}, {0, 3, 1}}), 0), (Dist{1, 0, 0, 1}));
}

TEST(FloydWarshall, WorkedExample) {
    const auto d = matrix({{0, 2, 7}, {kInf, 0, 3}, {kInf, kInf, 0}});
    const auto want = matrix({{0, 2, 5}, {kInf, 0, 3}, {kInf, kInf, 0}});
    EXPECT_EQ(floyd_warshall(d), want);
    EXPECT_EQ(oracle::floyd_warshall(d), want);
    EXPECT_EQ(distance_matrix(example_graph()), d);
}

TEST(FloydWarshall, DiagonalOnlyIsFixed) {
    const auto d = matrix({{0, kInf, kInf}, {kInf, 0, kInf}, {kInf, kInf, 0}});
    std::size_t rounds = 0;
    EXPECT_EQ(floyd_warshall(d, &rounds), d);
    EXPECT_EQ(rounds, 1u);
}

TEST(FloydWarshall, UnitCompleteGraph) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Ones(4, 4);
    m.diagonal().setZero();
    EXPECT_EQ(floyd_warshall(DistanceMatrix(m)), DistanceMatrix(m));
}

TEST(FloydWarshall, OneByOne) {
    EXPECT_EQ(oracle::floyd_warshall(matrix({{0}})), matrix({{0}}));
    EXPECT_EQ(floyd_warshall(matrix({{0}})), matrix({{0}}));
}

TEST(FloydWarshall, Preconditions) {
    EXPECT_THROW(floyd_warshall(matrix({{1, 0}, {0, 0}})), InputError);
    EXPECT_THROW(floyd_warshall(matrix({{0, -1}, {0, 0}})), InputError);
}

TEST(FloydWarshall, SpanDropsTheMiddleNode) {
    const PolynomialSpan span = floyd_warshall_span(3);
    EXPECT_EQ(span.output(), build_arrow("proj[1,3]", parse_carrier("V^3"), parse_carrier("V^2")));
    EXPECT_TRUE(validate_span(span).valid());
}

TEST(DistanceMatrixTest, ParallelEdgesKeepTheLightest) {
    const auto d = distance_matrix(GraphContext(2, {{0, 1, 5}, {0, 1, 2}, {1, 1, 3}}));
    EXPECT_EQ(d, matrix({{0, 2}, {kInf, 0}}));
}

class AlgorithmProperties : public ::testing::TestWithParam<int> {};

TEST_P(AlgorithmProperties, BellmanFordMatchesOracle) {
    Rng rng(static_cast<std::uint64_t>(GetParam()));
    const GraphContext g = random_graph(rng);
    for (std::size_t s = 0; s < g.nodes(); ++s) ASSERT_EQ(bellman_ford(g, s), oracle::bellman_ford(g, s));
}

TEST_P(AlgorithmProperties, FloydWarshallMatchesOracleAndConvergesFast) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 7);
    const DistanceMatrix d = random_distance_matrix(rng);
    std::size_t rounds = 0;
    ASSERT_EQ(floyd_warshall(d, &rounds), oracle::floyd_warshall(d));
    // Path lengths double each round; one extra round detects the fixpoint.
    const auto bound = static_cast<std::size_t>(std::ceil(std::log2(std::max<double>(2.0, double(d.nodes()))))) + 1;
    EXPECT_LE(rounds, bound);
}

TEST_P(AlgorithmProperties, StepMatchesDirectUpdate) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 13);
    const GraphContext g = random_graph(rng);
    const Dist d = random_distances(rng, g.nodes());
    ASSERT_EQ(flat(bellman_ford_step(g, make_bellman_ford_state(g, d))), oracle::bellman_ford_update(g, d));
}

TEST_P(AlgorithmProperties, BiasActsAsZeroSelfLoop) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 17);
    const GraphContext g = random_graph(rng);
    const Dist d = random_distances(rng, g.nodes());
    // Same graph plus a weight-0 loop at every node, with the self term
    // switched off (bias = zero = inf).
    std::vector<Edge> looped = g.edges();
    for (std::size_t u = 0; u < g.nodes(); ++u) looped.push_back({u, u, 0});
    const GraphContext h(g.nodes(), looped);
    auto st_loop = make_bellman_ford_state(h, d);
    st_loop.bias = DataMap<double>::constant(parse_carrier("V"), h, 1, kInf);
    EXPECT_EQ(flat(bellman_ford_step(h, st_loop)), flat(bellman_ford_step(g, make_bellman_ford_state(g, d))));
}

TEST_P(AlgorithmProperties, BooleanReachabilityIsBfs) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 23);
    const GraphContext g = random_graph(rng, 12, 20, 20);
    for (std::size_t s = 0; s < g.nodes(); ++s) ASSERT_EQ(reachability(g, s), oracle::reachability(g, s));
}

TEST_P(AlgorithmProperties, RelaxationStepMatchesOracle) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 29);
    const DistanceMatrix d = random_distance_matrix(rng, 7);
    ASSERT_EQ(floyd_warshall_step(d), oracle::relaxation_step(d));
}

INSTANTIATE_TEST_SUITE_P(Seeds, AlgorithmProperties, ::testing::Range(0, 40));

TEST(Adversarial, AllFixturesMatchOracles) {
    const auto fixtures = adversarial_graphs();
    EXPECT_EQ(fixtures.size(), 10u);
    for (const auto& f : fixtures) {
        for (std::size_t s = 0; s < f.graph.nodes(); ++s) {
            EXPECT_EQ(bellman_ford(f.graph, s), oracle::bellman_ford(f.graph, s)) << f.name;
            EXPECT_EQ(reachability(f.graph, s), oracle::reachability(f.graph, s)) << f.name;
        }
        const auto d = distance_matrix(f.graph);
        EXPECT_EQ(floyd_warshall(d), oracle::floyd_warshall(d)) << f.name;
    }
}

}  // namespace
}  // namespace polyspan
