#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "causalnn/errors.hpp"
#include "causalnn/rng.hpp"

namespace causalnn {

enum class Activation { relu, identity };

enum class Mode { train, eval, mc_sample };

struct DenseLayer {
    Eigen::MatrixXd weights;  // fan_out x fan_in
    Eigen::VectorXd biases;   // fan_out
    Activation activation = Activation::identity;

    Eigen::Index fan_in() const { return weights.cols(); }
    Eigen::Index fan_out() const { return weights.rows(); }
};

// Fully connected net: relu hidden layers, identity head, inverted dropout
// after each hidden activation, optional L2 penalty on weights.
struct MlpNet {
    std::vector<DenseLayer> layers;
    double dropout_rate = 0.0;  // in [0,1)
    double l2_penalty = 0.0;

    Eigen::Index fan_in() const { return layers.front().fan_in(); }
    Eigen::Index fan_out() const { return layers.back().fan_out(); }

    std::size_t param_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) {
            n += static_cast<std::size_t>(l.weights.size() + l.biases.size());
        }
        return n;
    }

    // L2 term of the training loss: l2/2 * sum of squared weights (biases excluded).
    double l2_loss() const {
        if (l2_penalty == 0.0) return 0.0;
        double ss = 0.0;
        for (const auto& l : layers) {
            ss += l.weights.squaredNorm();
        }
        return 0.5 * l2_penalty * ss;
    }
};

// Activations recorded by a train-mode forward pass; consumed by backward().
// Dropout masks are stored pre-scaled (entries 0 or 1/(1-p)) and exist only
// for hidden layers of a net with active dropout.
struct ForwardCache {
    Eigen::MatrixXd input;
    std::vector<Eigen::MatrixXd> pre_activations;
    std::vector<Eigen::MatrixXd> post_activations;
    std::vector<Eigen::MatrixXd> dropout_masks;

    bool empty() const { return pre_activations.empty(); }
};

struct ForwardResult {
    Eigen::MatrixXd output;
    ForwardCache cache;  // populated only for Mode::train
};

struct NetGrads {
    std::vector<Eigen::MatrixXd> weight_grads;
    std::vector<Eigen::VectorXd> bias_grads;
};

struct BackwardResult {
    NetGrads grads;
    Eigen::MatrixXd input_grad;
};

// He-normal initialization: W ~ N(0, 2/fan_in), zero biases, relu hidden
// layers and an identity head.
inline MlpNet init_net(const std::vector<int>& layer_sizes, double dropout_rate, double l2,
                       Rng& rng) {
    if (layer_sizes.size() < 2) {
        throw ConfigError("init_net: need at least input and output sizes");
    }
    for (int s : layer_sizes) {
        if (s <= 0) throw ConfigError("init_net: layer sizes must be positive");
    }
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
        throw ConfigError("init_net: dropout_rate must lie in [0,1)");
    }
    if (l2 < 0.0) {
        throw ConfigError("init_net: l2 penalty must be nonnegative");
    }

    MlpNet net;
    net.dropout_rate = dropout_rate;
    net.l2_penalty = l2;
    const std::size_t n_layers = layer_sizes.size() - 1;
    net.layers.reserve(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
        DenseLayer layer;
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        const double sd = std::sqrt(2.0 / static_cast<double>(fan_in));
        layer.weights.resize(fan_out, fan_in);
        for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) {
            for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
                layer.weights(i, j) = sd * rng.normal();
            }
        }
        layer.biases = Eigen::VectorXd::Zero(fan_out);
        layer.activation = (l + 1 == n_layers) ? Activation::identity : Activation::relu;
        net.layers.push_back(std::move(layer));
    }
    return net;
}

// Forward pass over a batch (rows = observations). Train and mc_sample modes
// apply inverted dropout after each hidden activation; eval applies none.
// The cache is populated iff mode == train. rng may be null when no dropout
// noise is needed.
inline ForwardResult forward(const MlpNet& net, const Eigen::MatrixXd& X, Mode mode,
                             Rng* rng = nullptr) {
    if (net.layers.empty()) {
        throw StateError("forward: net has no layers");
    }
    if (X.cols() != net.fan_in()) {
        throw ShapeError("forward: input has " + std::to_string(X.cols()) +
                         " columns, net expects " + std::to_string(net.fan_in()));
    }
    if (!X.allFinite()) {
        throw InputError("forward: non-finite input");
    }

    const bool use_dropout =
        net.dropout_rate > 0.0 && (mode == Mode::train || mode == Mode::mc_sample);
    if (use_dropout && rng == nullptr) {
        throw StateError("forward: dropout is active but no generator was supplied");
    }

    ForwardResult result;
    const bool caching = (mode == Mode::train);
    if (caching) {
        result.cache.input = X;
        result.cache.pre_activations.reserve(net.layers.size());
        result.cache.post_activations.reserve(net.layers.size());
    }

    const double keep = 1.0 - net.dropout_rate;
    Eigen::MatrixXd act = X;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const DenseLayer& layer = net.layers[l];
        Eigen::MatrixXd z = act * layer.weights.transpose();
        z.rowwise() += layer.biases.transpose();
        if (caching) result.cache.pre_activations.push_back(z);

        if (layer.activation == Activation::relu) {
            act = z.cwiseMax(0.0);
        } else {
            act = std::move(z);
        }

        const bool hidden = (l + 1 < net.layers.size());
        if (hidden && use_dropout) {
            Eigen::MatrixXd mask(act.rows(), act.cols());
            for (Eigen::Index j = 0; j < mask.cols(); ++j) {
                for (Eigen::Index i = 0; i < mask.rows(); ++i) {
                    mask(i, j) = rng->bernoulli(net.dropout_rate) ? 0.0 : 1.0 / keep;
                }
            }
            act = act.cwiseProduct(mask);
            if (caching) result.cache.dropout_masks.push_back(std::move(mask));
        }
        if (caching) result.cache.post_activations.push_back(act);
    }
    result.output = std::move(act);
    return result;
}

// Exact gradients of loss + l2*||W||^2/2 given a train-mode cache. Returns
// parameter gradients plus the gradient w.r.t. the input batch.
inline BackwardResult backward(const MlpNet& net, const ForwardCache& cache,
                               const Eigen::MatrixXd& output_grad) {
    const std::size_t n_layers = net.layers.size();
    if (cache.empty() || cache.pre_activations.size() != n_layers ||
        cache.post_activations.size() != n_layers || cache.input.cols() != net.fan_in()) {
        throw StateError("backward: cache missing or does not match net");
    }
    const std::size_t expected_masks =
        (net.dropout_rate > 0.0 && n_layers > 1) ? n_layers - 1 : 0;
    if (cache.dropout_masks.size() != expected_masks) {
        throw StateError("backward: cache dropout masks do not match net configuration");
    }
    if (output_grad.rows() != cache.input.rows() || output_grad.cols() != net.fan_out()) {
        throw ShapeError("backward: output_grad shape mismatch");
    }

    BackwardResult result;
    result.grads.weight_grads.resize(n_layers);
    result.grads.bias_grads.resize(n_layers);

    Eigen::MatrixXd delta = output_grad;  // grad w.r.t. this layer's post-activation
    for (std::size_t li = n_layers; li-- > 0;) {
        const DenseLayer& layer = net.layers[li];
        const bool hidden = (li + 1 < n_layers);
        if (hidden && !cache.dropout_masks.empty()) {
            delta = delta.cwiseProduct(cache.dropout_masks[li]);
        }
        if (layer.activation == Activation::relu) {
            delta = delta.cwiseProduct(
                (cache.pre_activations[li].array() > 0.0).cast<double>().matrix());
        }
        const Eigen::MatrixXd& layer_input =
            (li == 0) ? cache.input : cache.post_activations[li - 1];
        result.grads.weight_grads[li] = delta.transpose() * layer_input;
        if (net.l2_penalty > 0.0) {
            result.grads.weight_grads[li] += net.l2_penalty * layer.weights;
        }
        result.grads.bias_grads[li] = delta.colwise().sum();
        delta = delta * layer.weights;  // becomes grad w.r.t. previous post-activation
    }
    result.input_grad = std::move(delta);
    return result;
}

// Mean squared error over all output entries and its gradient.
struct MseLoss {
    std::pair<double, Eigen::MatrixXd> operator()(const Eigen::MatrixXd& pred,
                                                  const Eigen::MatrixXd& target) const {
        if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
            throw ShapeError("MseLoss: prediction/target shape mismatch");
        }
        if (pred.size() == 0) {
            throw InputError("MseLoss: empty batch");
        }
        Eigen::MatrixXd diff = pred - target;
        const double n = static_cast<double>(diff.size());
        return {diff.squaredNorm() / n, (2.0 / n) * diff};
    }
};

// Max relative error between analytic and central finite-difference gradients
// of loss(f(X), y) + l2 term. Runs with dropout disabled; intended for small
// nets only.
template <typename LossFn>
double grad_check(const MlpNet& net, const Eigen::MatrixXd& X, const Eigen::MatrixXd& y,
                  const LossFn& loss, double h = 1e-6) {
    if (net.param_count() > 10000) {
        throw ConfigError("grad_check: net too large (> 1e4 parameters)");
    }
    MlpNet probe = net;
    probe.dropout_rate = 0.0;  // deterministic check

    const auto total_loss = [&](const MlpNet& n) {
        const Eigen::MatrixXd out = forward(n, X, Mode::eval).output;
        return loss(out, y).first + n.l2_loss();
    };

    ForwardResult fwd = forward(probe, X, Mode::train);
    const Eigen::MatrixXd loss_grad = loss(fwd.output, y).second;
    const NetGrads grads = backward(probe, fwd.cache, loss_grad).grads;

    double max_rel = 0.0;
    const auto check_one = [&](double& value, double analytic) {
        const double saved = value;
        value = saved + h;
        const double up = total_loss(probe);
        value = saved - h;
        const double down = total_loss(probe);
        value = saved;
        const double numeric = (up - down) / (2.0 * h);
        const double rel = std::abs(analytic - numeric) /
                           std::max({std::abs(analytic), std::abs(numeric), 1e-8});
        max_rel = std::max(max_rel, rel);
    };

    for (std::size_t l = 0; l < probe.layers.size(); ++l) {
        auto& W = probe.layers[l].weights;
        for (Eigen::Index j = 0; j < W.cols(); ++j) {
            for (Eigen::Index i = 0; i < W.rows(); ++i) {
                check_one(W(i, j), grads.weight_grads[l](i, j));
            }
        }
        auto& b = probe.layers[l].biases;
        for (Eigen::Index i = 0; i < b.size(); ++i) {
            check_one(b(i), grads.bias_grads[l](i));
        }
    }
    return max_rel;
}

}  // namespace causalnn
