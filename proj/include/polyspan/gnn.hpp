#pragma once

/**
 * @file gnn.hpp
 * @brief Message-passing layers expressed as integral transforms.
 *
 * mpnn_forward   1 + V + E   <- E + (E + E) + E -> E -> V
 * v2_forward     the same messages on V^2, delivered both to the target node
 *                and to the edge's own slot (two spans sharing one message map)
 * v3_forward     1 + V + V^2 <- 4 V^2 + 7 V^3 -> V^2 + V^3 -> V + V^2
 *
 * Fiber rows are concatenated in fiber order before the message MLP:
 * (graph, sender, receiver, edge) for V^2 messages and
 * (graph, node i, node k, node j, edge ik, edge kj, edge ij) for a V^3
 * message (i, k, j). Parameters are fixed by the seed; there is no training.
 */

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polyspan/algorithms.hpp"
#include "polyspan/mlp.hpp"
#include "polyspan/span.hpp"

namespace polyspan {

enum class Aggregator { Max, Sum };

struct LayerConfig {
    Aggregator aggregator = Aggregator::Sum;
    Eigen::Index node_width = 2;
    Eigen::Index edge_width = 1;
    Eigen::Index graph_width = 1;
    Eigen::Index message_width = 4;
    Eigen::Index hidden_width = 8;
    Eigen::Index output_width = 2;
    std::uint64_t seed = 0;
    double max_floor = 0.0;                   // max-aggregate of an empty preimage
    std::size_t memory_cap = 50'000'000;      // cap on n^3 * message_width
};

/// Input features: n x node_width, m x edge_width (E order), 1 x graph_width.
struct GraphFeatures {
    Eigen::MatrixXd nodes;
    Eigen::MatrixXd edges;
    Eigen::MatrixXd graph;
};

/// psi: (graph, sender, receiver, edge) -> message
/// phi_node: (node, aggregate) -> output, phi_edge: (edge, aggregate) -> output
/// psi3: (graph, 3 nodes, 3 edges) -> message
struct LayerParams {
    Mlp<double> psi;
    Mlp<double> phi_node;
    Mlp<double> phi_edge;
    Mlp<double> psi3;
};

/// Draws psi, phi_node, phi_edge, psi3 in that order from one seeded stream,
/// so every layer built from the same config shares psi and phi_node.
LayerParams make_layer_params(const LayerConfig& cfg);

Semiring<double> aggregator_semiring(Aggregator a);

SpanSpec mpnn_spec();
PolynomialSpan mpnn_span(const GraphContext& g);

DataMap<double> mpnn_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg);
DataMap<double> mpnn_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg,
                             const LayerParams& params);

struct EdgeLayerOutput {
    DataMap<double> nodes;           // on V, after phi_node
    DataMap<double> edges;           // on V^2, after phi_edge
    DataMap<double> node_aggregate;  // on V, before readout
    DataMap<double> edge_aggregate;  // on V^2, before readout
    std::size_t message_rows = 0;    // rows of the message map on Y
};

/// The one-span edge-updating attempt whose o would deliver each V^2
/// message twice. It does not type-check.
SpanSpec v2_single_span_spec();
SpanSpec v2_node_spec();
SpanSpec v2_edge_spec();

EdgeLayerOutput v2_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg);
EdgeLayerOutput v2_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg,
                           const LayerParams& params);

SpanSpec v3_spec();
PolynomialSpan v3_span(std::size_t n);

EdgeLayerOutput v3_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg);
EdgeLayerOutput v3_forward(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg,
                           const LayerParams& params);

/// Raw transform over v3_span with the given semiring and fold, on data
/// assembled from `x` (each summand zero-padded to the widest feature).
DataMap<double> v3_transform(const GraphContext& g, const GraphFeatures& x, const Semiring<double>& s,
                             const FoldStrategy<double>& fold);

/// Fold for v3_transform that multiplies the two path broadcasts
/// (edge ik, edge kj) of each V^3 fiber and folds V^2 fibers entirely,
/// channel-wise over `width` channels.
FoldStrategy<double> path_fold(const Semiring<double>& s, Eigen::Index width);

/// Edge half of v3_transform under min-plus and path_fold, for features
/// that are zero everywhere except edge channel 0 = d.
DistanceMatrix v3_relaxation(const DistanceMatrix& d);

struct PermutedInstance {
    GraphContext graph;
    GraphFeatures features;
};

/// Relabels node u as perm[u]. Sparse graphs keep their edge order; in
/// fully-connected graphs edge (i, j) moves to (perm[i], perm[j]).
PermutedInstance permute(const GraphContext& g, const GraphFeatures& x, const std::vector<std::size_t>& perm);

}  // namespace polyspan
