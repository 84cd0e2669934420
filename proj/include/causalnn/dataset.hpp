#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "causalnn/errors.hpp"

namespace causalnn {

// Ground-truth surfaces, available for simulated data only.
struct Truth {
    Eigen::VectorXd mu;   // prognostic effect mu(x_i)
    Eigen::VectorXd tau;  // CATE tau(x_i)
    Eigen::VectorXd pi;   // propensity pi(x_i)
};

// Observational tuple (X_i, A_i, Y_i), i = 1..N.
struct Dataset {
    Eigen::MatrixXd x;  // N x P covariates
    Eigen::VectorXd a;  // binary treatment, entries 0 or 1
    Eigen::VectorXd y;  // continuous outcome
    std::optional<Truth> truth;

    Eigen::Index n() const { return x.rows(); }
    Eigen::Index p() const { return x.cols(); }

    Eigen::Index n_treated() const {
        return static_cast<Eigen::Index>(std::lround(a.sum()));
    }

    void validate(bool require_both_arms = true) const {
        if (x.rows() == 0 || x.cols() == 0) {
            throw InputError("Dataset: empty covariate matrix");
        }
        if (a.size() != x.rows() || y.size() != x.rows()) {
            throw ShapeError("Dataset: X, A, Y length mismatch");
        }
        if (!x.allFinite() || !y.allFinite()) {
            throw InputError("Dataset: non-finite covariate or outcome values");
        }
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (a(i) != 0.0 && a(i) != 1.0) {
                throw InputError("Dataset: treatment must be 0 or 1 at row " +
                                 std::to_string(i));
            }
        }
        if (truth) {
            if (truth->mu.size() != x.rows() || truth->tau.size() != x.rows() ||
                truth->pi.size() != x.rows()) {
                throw ShapeError("Dataset: truth column length mismatch");
            }
        }
        if (require_both_arms) {
            const Eigen::Index treated = n_treated();
            if (treated == 0 || treated == x.rows()) {
                throw EstimationError("Dataset: both treatment arms must be nonempty");
            }
        }
    }

    Dataset subset(const std::vector<Eigen::Index>& idx) const {
        Dataset out;
        out.x.resize(static_cast<Eigen::Index>(idx.size()), x.cols());
        out.a.resize(static_cast<Eigen::Index>(idx.size()));
        out.y.resize(static_cast<Eigen::Index>(idx.size()));
        if (truth) {
            out.truth = Truth{Eigen::VectorXd(idx.size()), Eigen::VectorXd(idx.size()),
                              Eigen::VectorXd(idx.size())};
        }
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const Eigen::Index i = idx[k];
            const Eigen::Index row = static_cast<Eigen::Index>(k);
            out.x.row(row) = x.row(i);
            out.a(row) = a(i);
            out.y(row) = y(i);
            if (truth) {
                out.truth->mu(row) = truth->mu(i);
                out.truth->tau(row) = truth->tau(i);
                out.truth->pi(row) = truth->pi(i);
            }
        }
        return out;
    }
};

// Z-scoring of Y and of continuous X columns, learned on training data.
// Binary columns (all values in {0,1}) pass through untouched.
struct Standardization {
    double y_mean = 0.0;
    double y_sd = 1.0;
    Eigen::VectorXd x_mean;
    Eigen::VectorXd x_sd;
    std::vector<bool> binary_col;

    static bool is_binary_column(const Eigen::VectorXd& col) {
        for (Eigen::Index i = 0; i < col.size(); ++i) {
            if (col(i) != 0.0 && col(i) != 1.0) return false;
        }
        return true;
    }

    static Standardization fit(const Dataset& data) {
        Standardization s;
        const Eigen::Index n = data.n();
        const Eigen::Index p = data.p();
        s.y_mean = data.y.mean();
        const double y_var =
            (data.y.array() - s.y_mean).square().sum() / std::max<double>(1.0, double(n - 1));
        s.y_sd = y_var > 0.0 ? std::sqrt(y_var) : 1.0;

        s.x_mean = Eigen::VectorXd::Zero(p);
        s.x_sd = Eigen::VectorXd::Ones(p);
        s.binary_col.resize(static_cast<std::size_t>(p), false);
        for (Eigen::Index j = 0; j < p; ++j) {
            const Eigen::VectorXd col = data.x.col(j);
            if (is_binary_column(col)) {
                s.binary_col[static_cast<std::size_t>(j)] = true;
                continue;
            }
            const double mean = col.mean();
            const double var =
                (col.array() - mean).square().sum() / std::max<double>(1.0, double(n - 1));
            s.x_mean(j) = mean;
            s.x_sd(j) = var > 0.0 ? std::sqrt(var) : 1.0;
        }
        return s;
    }

    Eigen::MatrixXd standardize_x(const Eigen::MatrixXd& x) const {
        if (x.cols() != x_mean.size()) {
            throw ShapeError("Standardization: covariate column count mismatch");
        }
        Eigen::MatrixXd out = x;
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (!binary_col[static_cast<std::size_t>(j)]) {
                out.col(j) = (out.col(j).array() - x_mean(j)) / x_sd(j);
            }
        }
        return out;
    }

    double standardize_feature(double value, Eigen::Index j) const {
        return binary_col[static_cast<std::size_t>(j)] ? value : (value - x_mean(j)) / x_sd(j);
    }

    Eigen::VectorXd standardize_y(const Eigen::VectorXd& y) const {
        return (y.array() - y_mean) / y_sd;
    }

    Eigen::VectorXd destandardize_y(const Eigen::VectorXd& ys) const {
        return (ys.array() * y_sd + y_mean).matrix();
    }
};

}  // namespace causalnn
