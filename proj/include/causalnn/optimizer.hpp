#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <vector>

#include "causalnn/errors.hpp"
#include "causalnn/net.hpp"

namespace causalnn {

// Bias-corrected adaptive-moment (Adam) accumulators, shaped to one net.
struct OptimizerState {
    std::vector<Eigen::MatrixXd> first_moment_w;
    std::vector<Eigen::MatrixXd> second_moment_w;
    std::vector<Eigen::VectorXd> first_moment_b;
    std::vector<Eigen::VectorXd> second_moment_b;
    std::int64_t step_count = 0;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

inline OptimizerState init_optimizer(const MlpNet& net, double learning_rate = 1e-3,
                                     double beta1 = 0.9, double beta2 = 0.999,
                                     double epsilon = 1e-8) {
    OptimizerState state;
    state.learning_rate = learning_rate;
    state.beta1 = beta1;
    state.beta2 = beta2;
    state.epsilon = epsilon;
    for (const auto& layer : net.layers) {
        state.first_moment_w.push_back(Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()));
        state.second_moment_w.push_back(Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()));
        state.first_moment_b.push_back(Eigen::VectorXd::Zero(layer.biases.size()));
        state.second_moment_b.push_back(Eigen::VectorXd::Zero(layer.biases.size()));
    }
    return state;
}

// One Adam update in place. step_count increments by exactly one.
inline void adam_step(MlpNet& net, const NetGrads& grads, OptimizerState& state) {
    const std::size_t n_layers = net.layers.size();
    if (grads.weight_grads.size() != n_layers || grads.bias_grads.size() != n_layers ||
        state.first_moment_w.size() != n_layers) {
        throw ShapeError("adam_step: gradient/state layer count mismatch");
    }
    for (std::size_t l = 0; l < n_layers; ++l) {
        if (grads.weight_grads[l].rows() != net.layers[l].weights.rows() ||
            grads.weight_grads[l].cols() != net.layers[l].weights.cols() ||
            grads.bias_grads[l].size() != net.layers[l].biases.size()) {
            throw ShapeError("adam_step: gradient shape mismatch at layer " + std::to_string(l));
        }
    }

    state.step_count += 1;
    const double t = static_cast<double>(state.step_count);
    const double bc1 = 1.0 - std::pow(state.beta1, t);
    const double bc2 = 1.0 - std::pow(state.beta2, t);

    for (std::size_t l = 0; l < n_layers; ++l) {
        auto& m_w = state.first_moment_w[l];
        auto& v_w = state.second_moment_w[l];
        const auto& g_w = grads.weight_grads[l];
        m_w = state.beta1 * m_w + (1.0 - state.beta1) * g_w;
        v_w = state.beta2 * v_w.array().matrix() +
              (1.0 - state.beta2) * g_w.array().square().matrix();
        net.layers[l].weights.array() -=
            state.learning_rate * (m_w.array() / bc1) /
            ((v_w.array() / bc2).sqrt() + state.epsilon);

        auto& m_b = state.first_moment_b[l];
        auto& v_b = state.second_moment_b[l];
        const auto& g_b = grads.bias_grads[l];
        m_b = state.beta1 * m_b + (1.0 - state.beta1) * g_b;
        v_b = state.beta2 * v_b.array().matrix() +
              (1.0 - state.beta2) * g_b.array().square().matrix();
        net.layers[l].biases.array() -=
            state.learning_rate * (m_b.array() / bc1) /
            ((v_b.array() / bc2).sqrt() + state.epsilon);
    }
}

// Adam for a single scalar parameter (the global biases of additive models).
struct ScalarAdam {
    double first_moment = 0.0;
    double second_moment = 0.0;
    std::int64_t step_count = 0;

    void step(double& param, double grad, double learning_rate = 1e-3, double beta1 = 0.9,
              double beta2 = 0.999, double epsilon = 1e-8) {
        step_count += 1;
        const double t = static_cast<double>(step_count);
        first_moment = beta1 * first_moment + (1.0 - beta1) * grad;
        second_moment = beta2 * second_moment + (1.0 - beta2) * grad * grad;
        const double m_hat = first_moment / (1.0 - std::pow(beta1, t));
        const double v_hat = second_moment / (1.0 - std::pow(beta2, t));
        param -= learning_rate * m_hat / (std::sqrt(v_hat) + epsilon);
    }
};

}  // namespace causalnn
