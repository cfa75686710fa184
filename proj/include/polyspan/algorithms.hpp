#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "polyspan/algebra.hpp"
#include "polyspan/span.hpp"

namespace polyspan {

// ---------------------------------------------------------------------------
// Bellman-Ford as one integral transform over
//   V + (V + E)  <-i-  (V + E) + (V + E)  -p->  V + E  -o->  V
// Input rows on W are (distance d, bias b, weight w); the messages are
// d + b on nodes and d(src) + w on edges; o delivers them to themselves and
// to the edge target.
// ---------------------------------------------------------------------------

SpanSpec bellman_ford_spec();
PolynomialSpan bellman_ford_span(const GraphContext& g);

struct BellmanFordState {
    DataMap<double> distances;  // on V
    DataMap<double> bias;       // on V, every row the times-identity
    DataMap<double> weights;    // on E
};

/// Bias is `s.one` everywhere. Weights come from the graph, except for the
/// boolean semiring where every edge carries `one` (edge present).
BellmanFordState make_bellman_ford_state(const GraphContext& g, const std::vector<double>& distances,
                                         const Semiring<double>& s = min_plus<double>());

/// Stacks (d, b, w) into data on V + (V + E).
DataMap<double> bellman_ford_input(const GraphContext& g, const BellmanFordState& st);

DataMap<double> bellman_ford_step(const BoundSpan& bs, const BellmanFordState& st,
                                  const Semiring<double>& s = min_plus<double>());
DataMap<double> bellman_ford_step(const GraphContext& g, const BellmanFordState& st);

/// Single-source distances over min-plus. Iterates the transform until it
/// stops changing or n - 1 rounds have run. Throws InputError on a bad
/// source or a negative weight.
std::vector<double> bellman_ford(const GraphContext& g, std::size_t source, std::size_t* rounds = nullptr);

/// The same propagation over the boolean semiring: 1 where reachable.
std::vector<double> reachability(const GraphContext& g, std::size_t source);

// ---------------------------------------------------------------------------
// Floyd-Warshall as a transform over
//   V^2  <-i-  V^3 + V^3  -p->  V^3  -o->  V^2
// Message (i, k, j) is the path i -> k -> j: d[i][k] + d[k][j]; o drops k.
// ---------------------------------------------------------------------------

/// Dense n x n min-plus matrix; +inf means no path.
struct DistanceMatrix {
    Eigen::MatrixXd entries;

    DistanceMatrix() = default;
    explicit DistanceMatrix(Eigen::MatrixXd m) : entries(std::move(m)) {}

    std::size_t nodes() const noexcept { return static_cast<std::size_t>(entries.rows()); }

    friend bool operator==(const DistanceMatrix& a, const DistanceMatrix& b) {
        return a.entries.rows() == b.entries.rows() && a.entries.cols() == b.entries.cols() &&
               a.entries == b.entries;
    }
};

/// 0 diagonal, the lightest u -> v edge weight elsewhere, +inf when absent.
DistanceMatrix distance_matrix(const GraphContext& g);

SpanSpec floyd_warshall_spec();
PolynomialSpan floyd_warshall_span(std::size_t n);

DataMap<double> to_data_map(const DistanceMatrix& d, const GraphContext& complete);
DistanceMatrix to_distance_matrix(const DataMap<double>& m, std::size_t n);

/// One transform: entry (i, j) becomes min over k of d[i][k] + d[k][j].
DistanceMatrix floyd_warshall_step(const DistanceMatrix& d);

/// Iterates d <- min(d, step(d)) to a fixpoint. Requires a zero diagonal and
/// non-negative entries.
DistanceMatrix floyd_warshall(const DistanceMatrix& d0, std::size_t* rounds = nullptr);

}  // namespace polyspan
