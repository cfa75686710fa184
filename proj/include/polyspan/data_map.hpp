#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "polyspan/carrier.hpp"
#include "polyspan/error.hpp"

namespace polyspan {

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/**
 * Dense data on a carrier: one row of `width` values per element, rows in
 * canonical enumeration order. Width > 1 models feature channels.
 */
template <typename Scalar>
class DataMap {
public:
    using Matrix = RowMatrix<Scalar>;
    using Row = RowVector<Scalar>;

    DataMap() = default;

    DataMap(Carrier carrier, const GraphContext& g, Matrix values)
        : carrier_(std::move(carrier)), values_(std::move(values)) {
        const auto expected = static_cast<Eigen::Index>(size(carrier_, g));
        if (values_.rows() != expected) {
            throw InputError("data on '" + carrier_.to_string() + "' needs " + std::to_string(expected) +
                             " rows, got " + std::to_string(values_.rows()));
        }
        if (values_.cols() < 1) throw InputError("data width must be at least 1");
    }

    static DataMap constant(const Carrier& c, const GraphContext& g, Eigen::Index width, Scalar value) {
        return DataMap(c, g, Matrix::Constant(static_cast<Eigen::Index>(size(c, g)), width, value));
    }

    /// Stacks one block per summand of `c`, in summand order.
    static DataMap from_blocks(const Carrier& c, const GraphContext& g, const std::vector<Matrix>& blocks) {
        if (blocks.size() != c.term_count()) {
            throw InputError("'" + c.to_string() + "' has " + std::to_string(c.term_count()) + " summands, got " +
                             std::to_string(blocks.size()) + " blocks");
        }
        Eigen::Index rows = 0;
        const Eigen::Index width = blocks.empty() ? 1 : blocks.front().cols();
        for (const auto& b : blocks) {
            if (b.cols() != width) throw InputError("blocks must share one width");
            rows += b.rows();
        }
        Matrix values(rows, width);
        Eigen::Index at = 0;
        for (const auto& b : blocks) {
            values.middleRows(at, b.rows()) = b;
            at += b.rows();
        }
        return DataMap(c, g, std::move(values));
    }

    const Carrier& carrier() const noexcept { return carrier_; }
    const Matrix& values() const noexcept { return values_; }
    Matrix& values() noexcept { return values_; }
    Eigen::Index rows() const noexcept { return values_.rows(); }
    Eigen::Index width() const noexcept { return values_.cols(); }

    auto row(Eigen::Index r) const { return values_.row(r); }
    Scalar operator()(Eigen::Index r, Eigen::Index c) const { return values_(r, c); }

    /// Rows belonging to summand `t`.
    Matrix block(const GraphContext& g, std::size_t t) const {
        const auto offset = static_cast<Eigen::Index>(term_offset(carrier_, g, t));
        const auto n = static_cast<Eigen::Index>(term_size(carrier_.term(t), g));
        return values_.middleRows(offset, n);
    }

    friend bool operator==(const DataMap& a, const DataMap& b) {
        return a.carrier_ == b.carrier_ && a.values_.rows() == b.values_.rows() &&
               a.values_.cols() == b.values_.cols() && a.values_ == b.values_;
    }

private:
    Carrier carrier_;
    Matrix values_;
};

}  // namespace polyspan
