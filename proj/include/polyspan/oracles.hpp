#pragma once

// Textbook reference implementations. None of these touch the span engine;
// they exist to be compared against it.

#include <cstddef>
#include <vector>

#include "polyspan/algorithms.hpp"
#include "polyspan/carrier.hpp"
#include "polyspan/gnn.hpp"

namespace polyspan::oracle {

/// Relax every edge, n - 1 rounds, in place.
std::vector<double> bellman_ford(const GraphContext& g, std::size_t source);

/// The classic k-outermost triple loop.
DistanceMatrix floyd_warshall(const DistanceMatrix& d0);

/// Breadth-first search; 1 where reachable from `source`, else 0.
std::vector<double> reachability(const GraphContext& g, std::size_t source);

/// d'_u = min(d_u, min over edges v -> u of d_v + w), evaluated directly.
std::vector<double> bellman_ford_update(const GraphContext& g, const std::vector<double>& d);

/// Entry (i, j) = min over k of d[i][k] + d[k][j], computed from a frozen copy.
DistanceMatrix relaxation_step(const DistanceMatrix& d);

/// h_u = phi(x_u, aggregate over edges v -> u of psi(graph, x_v, x_u, e_vu)),
/// written as plain loops over the edge list. Empty max-aggregates take cfg.max_floor.
Eigen::MatrixXd mpnn(const GraphContext& g, const GraphFeatures& x, const LayerConfig& cfg,
                     const LayerParams& params);

}  // namespace polyspan::oracle
