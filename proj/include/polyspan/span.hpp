#pragma once

/**
 * @file span.hpp
 * @brief Polynomial spans W <-i- X -p-> Y -o-> Z and the integral transform.
 *
 * Given data f on W, the transform runs three stages:
 *
 *   pullback              i* f = f . i                       (data on X)
 *   argument pushforward  fold each ordered p-fiber with times (data on Y)
 *   message pushforward   reduce each o-preimage with plus    (data on Z)
 *
 * An optional hook rewrites every message row between the last two stages.
 * Fibers are ordered by ascending canonical rank of the domain carrier.
 */

#include <functional>
#include <type_traits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyspan/algebra.hpp"
#include "polyspan/arrow.hpp"
#include "polyspan/carrier.hpp"
#include "polyspan/data_map.hpp"

namespace polyspan {

/// Textual form of a span: carrier expressions and arrow expressions.
struct SpanSpec {
    std::string W, X, Y, Z;
    std::string i, p, o;
};

class PolynomialSpan {
public:
    /// Throws TypeError when an arrow's typing does not match the carriers.
    PolynomialSpan(Carrier W, Carrier X, Carrier Y, Carrier Z, Arrow i, Arrow p, Arrow o);

    const Carrier& W() const noexcept { return W_; }
    const Carrier& X() const noexcept { return X_; }
    const Carrier& Y() const noexcept { return Y_; }
    const Carrier& Z() const noexcept { return Z_; }
    const Arrow& input() const noexcept { return i_; }
    const Arrow& process() const noexcept { return p_; }
    const Arrow& output() const noexcept { return o_; }

    SpanSpec to_spec() const;

    friend bool operator==(const PolynomialSpan&, const PolynomialSpan&) = default;

private:
    Carrier W_, X_, Y_, Z_;
    Arrow i_, p_, o_;
};

/// Parses and type-checks; errors name the offending arrow ("i", "p" or "o").
PolynomialSpan build_span(const SpanSpec& spec);

struct SpanIssue {
    enum class Kind { CarrierSyntax, ArrowSyntax, TypeMismatch, DuplicatedDelivery };
    Kind kind;
    std::string where;  // "W".."Z" or "i", "p", "o"
    std::string message;
};

struct ValidationReport {
    std::vector<SpanIssue> issues;

    bool valid() const noexcept { return issues.empty(); }
    /// True when some arrow would send one element to two places.
    bool duplicated_delivery() const noexcept;
    std::string to_string() const;
};

ValidationReport validate_span(const SpanSpec& spec);
ValidationReport validate_span(const PolynomialSpan& span);

/// A span together with a graph and its tabulated arrows and fibers.
class BoundSpan {
public:
    BoundSpan(PolynomialSpan span, GraphContext graph);

    const PolynomialSpan& span() const noexcept { return span_; }
    const GraphContext& graph() const noexcept { return graph_; }

    /// W rank of i(x) for every X rank x.
    const std::vector<std::size_t>& input_map() const noexcept { return input_map_; }
    /// Ordered p-fiber (X ranks) of every Y rank.
    const std::vector<std::vector<std::size_t>>& fibers() const noexcept { return fibers_; }
    /// Ordered o-preimage (Y ranks) of every Z rank.
    const std::vector<std::vector<std::size_t>>& deliveries() const noexcept { return deliveries_; }

    std::size_t size_W() const noexcept { return size_W_; }
    std::size_t size_X() const noexcept { return input_map_.size(); }
    std::size_t size_Y() const noexcept { return fibers_.size(); }
    std::size_t size_Z() const noexcept { return deliveries_.size(); }

private:
    PolynomialSpan span_;
    GraphContext graph_;
    std::size_t size_W_ = 0;
    std::vector<std::size_t> input_map_;
    std::vector<std::vector<std::size_t>> fibers_;
    std::vector<std::vector<std::size_t>> deliveries_;
};

/**
 * How a p-fiber collapses to one message row.
 *
 * The semiring fold applies times channel-wise in fiber order. A learned fold
 * hands the concatenation of the fiber's rows to a mapping chosen by fiber
 * size; every occurring non-empty fiber size needs a mapping.
 */
template <typename Scalar>
class FoldStrategy {
public:
    using Row = RowVector<Scalar>;
    using Mapping = std::function<Row(const Row&)>;

    static FoldStrategy semiring_fold() { return FoldStrategy(); }

    static FoldStrategy learned(Eigen::Index output_width, std::map<std::size_t, Mapping> by_fiber_size,
                                Row empty_row = Row()) {
        FoldStrategy f;
        f.learned_ = true;
        f.output_width_ = output_width;
        f.mappings_ = std::move(by_fiber_size);
        f.empty_row_ = empty_row.size() == 0 ? Row::Zero(output_width) : std::move(empty_row);
        if (f.empty_row_.size() != output_width) throw InputError("empty-fiber row has the wrong width");
        return f;
    }

    bool is_learned() const noexcept { return learned_; }
    Eigen::Index output_width() const noexcept { return output_width_; }
    const Row& empty_row() const noexcept { return empty_row_; }

    const Mapping& mapping(std::size_t fiber_size) const {
        auto it = mappings_.find(fiber_size);
        if (it == mappings_.end()) {
            throw InputError("learned fold has no mapping for fibers of size " + std::to_string(fiber_size));
        }
        return it->second;
    }

private:
    bool learned_ = false;
    Eigen::Index output_width_ = 0;
    std::map<std::size_t, Mapping> mappings_;
    Row empty_row_;
};

template <typename Scalar>
using RowHook = std::function<RowVector<Scalar>(const RowVector<Scalar>&)>;

template <typename Scalar>
DataMap<Scalar> pullback(const BoundSpan& bs, const DataMap<Scalar>& f) {
    if (f.carrier() != bs.span().W()) {
        throw InputError("pullback expects data on '" + bs.span().W().to_string() + "', got '" +
                         f.carrier().to_string() + "'");
    }
    const auto& index = bs.input_map();
    RowMatrix<Scalar> out(static_cast<Eigen::Index>(index.size()), f.width());
    for (std::size_t x = 0; x < index.size(); ++x) {
        out.row(static_cast<Eigen::Index>(x)) = f.row(static_cast<Eigen::Index>(index[x]));
    }
    return DataMap<Scalar>(bs.span().X(), bs.graph(), std::move(out));
}

template <typename Scalar>
DataMap<Scalar> argument_pushforward(const BoundSpan& bs, const Semiring<Scalar>& s,
                                     const FoldStrategy<Scalar>& strategy, const DataMap<Scalar>& args) {
    if (args.carrier() != bs.span().X()) {
        throw InputError("argument pushforward expects data on '" + bs.span().X().to_string() + "', got '" +
                         args.carrier().to_string() + "'");
    }
    const auto& fibers = bs.fibers();
    const Eigen::Index width = args.width();
    const auto rows = static_cast<Eigen::Index>(fibers.size());

    if (!strategy.is_learned()) {
        RowMatrix<Scalar> out(rows, width);
        for (Eigen::Index y = 0; y < rows; ++y) {
            for (Eigen::Index c = 0; c < width; ++c) {
                Scalar acc = s.one;
                for (std::size_t x : fibers[static_cast<std::size_t>(y)]) {
                    acc = s.times(acc, args(static_cast<Eigen::Index>(x), c));
                }
                out(y, c) = acc;
            }
        }
        return DataMap<Scalar>(bs.span().Y(), bs.graph(), std::move(out));
    }

    RowMatrix<Scalar> out(rows, strategy.output_width());
    for (Eigen::Index y = 0; y < rows; ++y) {
        const auto& fiber = fibers[static_cast<std::size_t>(y)];
        if (fiber.empty()) {
            out.row(y) = strategy.empty_row();
            continue;
        }
        RowVector<Scalar> concat(static_cast<Eigen::Index>(fiber.size()) * width);
        for (std::size_t k = 0; k < fiber.size(); ++k) {
            concat.segment(static_cast<Eigen::Index>(k) * width, width) = args.row(static_cast<Eigen::Index>(fiber[k]));
        }
        RowVector<Scalar> folded = strategy.mapping(fiber.size())(concat);
        if (folded.size() != strategy.output_width()) {
            throw InputError("learned fold for fiber size " + std::to_string(fiber.size()) + " returned width " +
                             std::to_string(folded.size()) + ", expected " +
                             std::to_string(strategy.output_width()));
        }
        out.row(y) = folded;
    }
    return DataMap<Scalar>(bs.span().Y(), bs.graph(), std::move(out));
}

/// Applies `hook` to every message row. An empty hook is the identity.
template <typename Scalar>
DataMap<Scalar> apply_hook(const BoundSpan& bs, const DataMap<Scalar>& messages,
                           const std::type_identity_t<RowHook<Scalar>>& hook) {
    if (!hook || messages.rows() == 0) return messages;
    std::vector<RowVector<Scalar>> rows;
    rows.reserve(static_cast<std::size_t>(messages.rows()));
    for (Eigen::Index r = 0; r < messages.rows(); ++r) rows.push_back(hook(messages.row(r)));
    const Eigen::Index width = rows.front().size();
    RowMatrix<Scalar> out(messages.rows(), width);
    for (Eigen::Index r = 0; r < messages.rows(); ++r) {
        if (rows[static_cast<std::size_t>(r)].size() != width) throw InputError("message hook changed width between rows");
        out.row(r) = rows[static_cast<std::size_t>(r)];
    }
    return DataMap<Scalar>(messages.carrier(), bs.graph(), std::move(out));
}

template <typename Scalar>
DataMap<Scalar> message_pushforward(const BoundSpan& bs, const Semiring<Scalar>& s, const DataMap<Scalar>& messages,
                                    const std::type_identity_t<RowHook<Scalar>>& hook = {}) {
    if (messages.carrier() != bs.span().Y()) {
        throw InputError("message pushforward expects data on '" + bs.span().Y().to_string() + "', got '" +
                         messages.carrier().to_string() + "'");
    }
    const DataMap<Scalar> m = apply_hook(bs, messages, hook);
    const auto& deliveries = bs.deliveries();
    const auto rows = static_cast<Eigen::Index>(deliveries.size());
    RowMatrix<Scalar> out(rows, m.width());
    for (Eigen::Index z = 0; z < rows; ++z) {
        for (Eigen::Index c = 0; c < m.width(); ++c) {
            Scalar acc = s.zero;
            for (std::size_t y : deliveries[static_cast<std::size_t>(z)]) {
                acc = s.plus(acc, m(static_cast<Eigen::Index>(y), c));
            }
            out(z, c) = acc;
        }
    }
    return DataMap<Scalar>(bs.span().Z(), bs.graph(), std::move(out));
}

/// Every stage output of one transform.
template <typename Scalar>
struct TransformTrace {
    DataMap<Scalar> arguments;  // on X
    DataMap<Scalar> messages;   // on Y, before the hook
    DataMap<Scalar> output;     // on Z
};

template <typename Scalar>
TransformTrace<Scalar> integral_transform_traced(const BoundSpan& bs, const Semiring<Scalar>& s,
                                                 const FoldStrategy<Scalar>& strategy, const DataMap<Scalar>& f,
                                                 const std::type_identity_t<RowHook<Scalar>>& hook = {}) {
    DataMap<Scalar> args = pullback(bs, f);
    DataMap<Scalar> messages = argument_pushforward(bs, s, strategy, args);
    DataMap<Scalar> output = message_pushforward(bs, s, messages, hook);
    return {std::move(args), std::move(messages), std::move(output)};
}

template <typename Scalar>
DataMap<Scalar> integral_transform(const BoundSpan& bs, const Semiring<Scalar>& s,
                                   const FoldStrategy<Scalar>& strategy, const DataMap<Scalar>& f,
                                   const std::type_identity_t<RowHook<Scalar>>& hook = {}) {
    return integral_transform_traced(bs, s, strategy, f, hook).output;
}

/// The list-valued intermediate: the ordered fiber of each message, as rows.
template <typename Scalar>
std::vector<OrderedList<std::vector<Scalar>>> argument_lists(const BoundSpan& bs, const DataMap<Scalar>& args) {
    std::vector<OrderedList<std::vector<Scalar>>> out(bs.size_Y());
    for (std::size_t y = 0; y < bs.size_Y(); ++y) {
        for (std::size_t x : bs.fibers()[y]) {
            const auto row = args.row(static_cast<Eigen::Index>(x));
            out[y].items.emplace_back(row.begin(), row.end());
        }
    }
    return out;
}

/// The bag-valued intermediate: the multiset of messages delivered to each output.
template <typename Scalar>
std::vector<Bag<std::vector<Scalar>>> message_bags(const BoundSpan& bs, const DataMap<Scalar>& messages) {
    std::vector<Bag<std::vector<Scalar>>> out(bs.size_Z());
    for (std::size_t z = 0; z < bs.size_Z(); ++z) {
        for (std::size_t y : bs.deliveries()[z]) {
            const auto row = messages.row(static_cast<Eigen::Index>(y));
            out[z].insert(std::vector<Scalar>(row.begin(), row.end()));
        }
    }
    return out;
}

}  // namespace polyspan
