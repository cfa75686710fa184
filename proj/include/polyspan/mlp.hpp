#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "polyspan/error.hpp"

namespace polyspan {

enum class Activation { Identity, Relu };

template <typename Scalar>
struct DenseLayer {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> weight;  // out x in
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bias;
    Activation activation = Activation::Identity;
};

/// Fully connected feed-forward network, y = act(W x + b) per layer.
template <typename Scalar>
class Mlp {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Row = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

    Mlp() = default;

    explicit Mlp(std::vector<DenseLayer<Scalar>> layers) : layers_(std::move(layers)) {
        for (std::size_t k = 0; k < layers_.size(); ++k) {
            const auto& l = layers_[k];
            if (l.bias.size() != l.weight.rows()) throw InputError("layer " + std::to_string(k) + ": bias/weight mismatch");
            if (k && l.weight.cols() != layers_[k - 1].weight.rows()) {
                throw InputError("layer " + std::to_string(k) + ": input width does not match previous output");
            }
            if (!l.weight.allFinite() || !l.bias.allFinite()) throw InputError("non-finite MLP parameter");
        }
    }

    /// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)]; `widths` has one more entry than `activations`.
    template <typename Rng>
    static Mlp random(const std::vector<Eigen::Index>& widths, const std::vector<Activation>& activations, Rng& rng) {
        if (widths.size() != activations.size() + 1) throw InputError("need one activation per layer");
        std::vector<DenseLayer<Scalar>> layers;
        for (std::size_t k = 0; k < activations.size(); ++k) {
            const Eigen::Index in = widths[k];
            const Eigen::Index out = widths[k + 1];
            if (in < 1 || out < 1) throw InputError("MLP widths must be >= 1");
            const double bound = 1.0 / std::sqrt(static_cast<double>(in));
            std::uniform_real_distribution<double> unif(-bound, bound);
            DenseLayer<Scalar> l{Matrix(out, in), Vector(out), activations[k]};
            for (Eigen::Index r = 0; r < out; ++r) {
                for (Eigen::Index c = 0; c < in; ++c) l.weight(r, c) = static_cast<Scalar>(unif(rng));
            }
            for (Eigen::Index r = 0; r < out; ++r) l.bias(r) = static_cast<Scalar>(unif(rng));
            layers.push_back(std::move(l));
        }
        return Mlp(std::move(layers));
    }

    /// One linear layer with identity weights and zero bias.
    static Mlp identity(Eigen::Index width) {
        return Mlp({DenseLayer<Scalar>{Matrix::Identity(width, width), Vector::Zero(width), Activation::Identity}});
    }

    const std::vector<DenseLayer<Scalar>>& layers() const noexcept { return layers_; }
    Eigen::Index input_width() const { return layers_.front().weight.cols(); }
    Eigen::Index output_width() const { return layers_.back().weight.rows(); }

    Vector forward(const Vector& x) const {
        if (x.size() != input_width()) {
            throw InputError("MLP expects input width " + std::to_string(input_width()) + ", got " +
                             std::to_string(x.size()));
        }
        Vector h = x;
        for (const auto& l : layers_) h = activate(l, l.weight * h + l.bias);
        return h;
    }

    Row forward_row(const Row& x) const { return forward(x.transpose()).transpose(); }

    Eigen::Index parameter_count() const {
        Eigen::Index n = 0;
        for (const auto& l : layers_) n += l.weight.size() + l.bias.size();
        return n;
    }

    /// Flattened parameters: per layer, weight row-major then bias.
    Vector parameters() const {
        Vector p(parameter_count());
        Eigen::Index at = 0;
        for (const auto& l : layers_) {
            for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
                for (Eigen::Index c = 0; c < l.weight.cols(); ++c) p(at++) = l.weight(r, c);
            }
            for (Eigen::Index r = 0; r < l.bias.size(); ++r) p(at++) = l.bias(r);
        }
        return p;
    }

    void set_parameters(const Vector& p) {
        if (p.size() != parameter_count()) throw InputError("parameter vector has the wrong length");
        Eigen::Index at = 0;
        for (auto& l : layers_) {
            for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
                for (Eigen::Index c = 0; c < l.weight.cols(); ++c) l.weight(r, c) = p(at++);
            }
            for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias(r) = p(at++);
        }
    }

    /// Gradient of the loss with respect to the flattened parameters, by
    /// backpropagation, given dL/dy at the output. relu'(0) is taken as 0.
    Vector parameter_gradient(const Vector& x, const Vector& dloss_doutput) const {
        std::vector<Vector> inputs;
        std::vector<Vector> pre;
        Vector h = x;
        for (const auto& l : layers_) {
            inputs.push_back(h);
            pre.push_back(l.weight * h + l.bias);
            h = activate(l, pre.back());
        }
        std::vector<Matrix> grad_w(layers_.size());
        std::vector<Vector> grad_b(layers_.size());
        Vector delta = dloss_doutput;
        for (std::size_t k = layers_.size(); k-- > 0;) {
            const auto& l = layers_[k];
            if (l.activation == Activation::Relu) {
                delta = delta.cwiseProduct(pre[k].unaryExpr([](Scalar z) { return z > Scalar(0) ? Scalar(1) : Scalar(0); }));
            }
            grad_w[k] = delta * inputs[k].transpose();
            grad_b[k] = delta;
            delta = l.weight.transpose() * delta;
        }
        Vector g(parameter_count());
        Eigen::Index at = 0;
        for (std::size_t k = 0; k < layers_.size(); ++k) {
            for (Eigen::Index r = 0; r < grad_w[k].rows(); ++r) {
                for (Eigen::Index c = 0; c < grad_w[k].cols(); ++c) g(at++) = grad_w[k](r, c);
            }
            for (Eigen::Index r = 0; r < grad_b[k].size(); ++r) g(at++) = grad_b[k](r);
        }
        return g;
    }

    /// Sign pattern of every relu pre-activation (true = strictly positive).
    std::vector<bool> relu_pattern(const Vector& x) const {
        std::vector<bool> pattern;
        Vector h = x;
        for (const auto& l : layers_) {
            const Vector z = l.weight * h + l.bias;
            if (l.activation == Activation::Relu) {
                for (Eigen::Index r = 0; r < z.size(); ++r) pattern.push_back(z(r) > Scalar(0));
            }
            h = activate(l, z);
        }
        return pattern;
    }

private:
    static Vector activate(const DenseLayer<Scalar>& l, const Vector& z) {
        if (l.activation == Activation::Identity) return z;
        return z.cwiseMax(Scalar(0));
    }

    std::vector<DenseLayer<Scalar>> layers_;
};

/// A scalar loss on the MLP output together with its gradient.
template <typename Scalar>
struct Loss {
    std::function<Scalar(const typename Mlp<Scalar>::Vector&)> value;
    std::function<typename Mlp<Scalar>::Vector(const typename Mlp<Scalar>::Vector&)> gradient;
};

/// ||y - target||^2.
template <typename Scalar>
Loss<Scalar> squared_loss(typename Mlp<Scalar>::Vector target) {
    return {[target](const typename Mlp<Scalar>::Vector& y) { return (y - target).squaredNorm(); },
            [target](const typename Mlp<Scalar>::Vector& y) -> typename Mlp<Scalar>::Vector {
                return Scalar(2) * (y - target);
            }};
}

struct FiniteDiffReport {
    double max_relative_error = 0.0;
    std::size_t checked = 0;
    std::size_t excluded = 0;  // perturbation crossed a relu kink
};

inline constexpr double kFiniteDiffStep = 1e-5;

/**
 * Compares backprop parameter gradients with central differences.
 *
 * A parameter is excluded when perturbing it by +-step flips the sign of any
 * relu pre-activation, since the difference quotient then straddles a kink.
 * Relative error is |analytic - numeric| / max(|analytic|, |numeric|, 1e-6).
 */
template <typename Scalar>
FiniteDiffReport finite_diff_check(const Mlp<Scalar>& mlp, const typename Mlp<Scalar>::Vector& input,
                                   const Loss<Scalar>& loss, double step = kFiniteDiffStep) {
    FiniteDiffReport report;
    const auto analytic = mlp.parameter_gradient(input, loss.gradient(mlp.forward(input)));
    const auto base = mlp.parameters();
    const auto pattern = mlp.relu_pattern(input);
    Mlp<Scalar> probe = mlp;
    for (Eigen::Index k = 0; k < base.size(); ++k) {
        auto plus = base;
        auto minus = base;
        plus(k) += step;
        minus(k) -= step;
        probe.set_parameters(plus);
        const Scalar up = loss.value(probe.forward(input));
        const bool plus_same = probe.relu_pattern(input) == pattern;
        probe.set_parameters(minus);
        const Scalar down = loss.value(probe.forward(input));
        const bool minus_same = probe.relu_pattern(input) == pattern;
        if (!plus_same || !minus_same) {
            ++report.excluded;
            continue;
        }
        const double numeric = static_cast<double>(up - down) / (2.0 * step);
        const double a = static_cast<double>(analytic(k));
        const double denom = std::max({std::abs(a), std::abs(numeric), 1e-6});
        report.max_relative_error = std::max(report.max_relative_error, std::abs(a - numeric) / denom);
        ++report.checked;
    }
    return report;
}

}  // namespace polyspan
