#pragma once

// Seeded generators for property tests and the verification suite.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "polyspan/algebra.hpp"
#include "polyspan/algorithms.hpp"
#include "polyspan/carrier.hpp"
#include "polyspan/gnn.hpp"

namespace polyspan {

using Rng = std::mt19937_64;

/// 1..max_nodes nodes, 0..max_edges edges, integer weights 0..max_weight.
/// Self-loops and parallel edges are allowed.
GraphContext random_graph(Rng& rng, std::size_t max_nodes = 12, std::size_t max_edges = 40, int max_weight = 20);

struct NamedGraph {
    std::string name;
    GraphContext graph;
};

/// The three-node worked example: 0 -> 1 (2), 0 -> 2 (7), 1 -> 2 (3).
GraphContext example_graph();

/// Ten small hand-built graphs covering edge cases.
std::vector<NamedGraph> adversarial_graphs();

/// n in 1..max_nodes, zero diagonal, off-diagonal 0..max_weight or inf.
DistanceMatrix random_distance_matrix(Rng& rng, std::size_t max_nodes = 10, int max_weight = 20,
                                      double inf_probability = 0.25);

/// Distance vector for g: integers 0..max_weight, each inf with the given probability.
std::vector<double> random_distances(Rng& rng, std::size_t n, int max_weight = 20, double inf_probability = 0.3);

/// Uniform [-1, 1] features of the widths in cfg.
GraphFeatures random_features(Rng& rng, const GraphContext& g, const LayerConfig& cfg);

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

/// Values drawn from the carrier set of the semiring's kind, including its
/// infinity where it has one.
double random_value(Rng& rng, ValueKind kind);
std::vector<std::array<double, 3>> random_triples(Rng& rng, ValueKind kind, std::size_t count);

}  // namespace polyspan
