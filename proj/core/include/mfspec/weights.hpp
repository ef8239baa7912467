#pragma once

#include <Eigen/Dense>

#include <span>
#include <utility>

namespace mfspec {

/// Nonnegative aggregation weights over the m high-frequency lags of one
/// low-frequency period, summing to one. Element 0 weights the most recent lag.
class WeightVector {
public:
    /// Throws InvalidParameter unless every element is >= 0 and the sum is 1 within 1e-12.
    explicit WeightVector(Eigen::VectorXd weights);

    const Eigen::VectorXd& values() const noexcept { return weights_; }
    Eigen::Index m() const noexcept { return weights_.size(); }
    double operator[](Eigen::Index j) const { return weights_[j]; }

private:
    Eigen::VectorXd weights_;
};

/// Low-frequency response plus the T x m high-frequency regressor block.
///
/// Row t of x_high is (x_t, x_{t-1/m}, ..., x_{t-(m-1)/m}): most recent first.
/// Every consumer relies on this single column convention.
class MixedSample {
public:
    MixedSample(Eigen::VectorXd y, Eigen::MatrixXd x_high);

    const Eigen::VectorXd& y() const noexcept { return y_; }
    const Eigen::MatrixXd& x_high() const noexcept { return x_high_; }
    Eigen::Index T() const noexcept { return y_.size(); }
    Eigen::Index m() const noexcept { return x_high_.cols(); }

    /// Same regressors, different response (used by invariance checks and the CLI).
    MixedSample with_response(Eigen::VectorXd y) const;

private:
    Eigen::VectorXd y_;
    Eigen::MatrixXd x_high_;
};

WeightVector flat_weights(Eigen::Index m);

/// First n = leading.size() elements set to `leading`, the rest exactly zero.
/// Requires 1 <= n < m, positive entries, and a sum of 1 within 1e-10.
WeightVector end_of_period_weights(Eigen::Index m, std::span<const double> leading);

/// pi_j(theta) = (2 - j/m)^(4 theta) / sum_i (2 - i/m)^(4 theta), j = 1..m.
WeightVector midas_weights(double theta, Eigen::Index m);

/// The exponentially and linearly decaying instrument weights (Upsilon_1, Upsilon_2):
/// f1(j) proportional to 0.9^(j-1), f2(j) proportional to m + 1 - j.
std::pair<WeightVector, WeightVector> instrument_weights(Eigen::Index m);

/// Element t = row t of x_high dotted with w.
Eigen::VectorXd aggregate(const MixedSample& sample, const WeightVector& w);

/// T x 2 matrix [X Upsilon_1, X Upsilon_2]. DegenerateInstruments when m = 1.
Eigen::MatrixXd build_instruments(const MixedSample& sample);

}  // namespace mfspec
