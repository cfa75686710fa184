#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace polyspan {

struct Edge {
    std::size_t source = 0;
    std::size_t target = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * The node set V and edge set E every carrier is built from.
 *
 * Edge order is the load order and is the canonical enumeration of E. In
 * fully-connected mode E is V^2 and edge k is (k / n, k % n).
 */
class GraphContext {
public:
    GraphContext() = default;
    GraphContext(std::size_t nodes, std::vector<Edge> edges);

    /// E = V^2 in row-major order; `weights` is n*n row-major (empty = all 0).
    static GraphContext fully_connected(std::size_t nodes, const std::vector<double>& weights = {});

    std::size_t nodes() const noexcept { return nodes_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t k) const { return edges_.at(k); }
    bool is_fully_connected() const noexcept { return fully_connected_; }

private:
    std::size_t nodes_ = 0;
    std::vector<Edge> edges_;
    bool fully_connected_ = false;
};

enum class BaseSet : unsigned char { Node, Edge };

/// A product of base sets. The empty product is the singleton 1.
using Term = std::vector<BaseSet>;

/// Hard limit on the number of elements of any carrier.
inline constexpr std::size_t kCarrierSizeCap = 10'000'000;

/**
 * A finite set written as a disjoint sum of products of V, E and 1.
 *
 * Elements are enumerated term-major, then row-major within a term (last
 * factor varies fastest).
 */
class Carrier {
public:
    Carrier() = default;
    explicit Carrier(std::vector<Term> terms) : terms_(std::move(terms)) {}

    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const Term& term(std::size_t t) const { return terms_.at(t); }

    /// The single-term carrier holding only term `t`.
    Carrier summand(std::size_t t) const { return Carrier({terms_.at(t)}); }

    std::string to_string() const;

    friend bool operator==(const Carrier&, const Carrier&) = default;

private:
    std::vector<Term> terms_;
};

/// A point of a carrier: which summand, and one base-set index per factor.
struct Element {
    std::size_t term = 0;
    std::vector<std::size_t> coords;

    friend bool operator==(const Element&, const Element&) = default;
};

std::string to_string(const Element& e);

/// Parses `carrier := term {"+" term}; term := factor {"*" factor};
/// factor := "V" | "E" | "1" | "V^" INT | "(" carrier ")"`.
/// Products distribute over parenthesised sums.
Carrier parse_carrier(std::string_view expr);

std::size_t base_size(BaseSet b, const GraphContext& g);
std::size_t term_size(const Term& t, const GraphContext& g);

/// Total element count. Throws InputError past kCarrierSizeCap.
std::size_t size(const Carrier& c, const GraphContext& g);

/// Rank of the first element of term `t`.
std::size_t term_offset(const Carrier& c, const GraphContext& g, std::size_t t);

Element element_at(const Carrier& c, const GraphContext& g, std::size_t index);
std::size_t rank(const Carrier& c, const GraphContext& g, const Element& e);

bool contains(const Carrier& c, const GraphContext& g, const Element& e);

}  // namespace polyspan
