#include "mfspec/weights.hpp"

#include "mfspec/errors.hpp"

#include <cmath>
#include <string>

namespace mfspec {

namespace {

void require_positive_m(Eigen::Index m) {
    if (m < 1) throw InvalidParameter("frequency ratio m must be >= 1, got " + std::to_string(m));
}

Eigen::VectorXd normalized(Eigen::VectorXd v) {
    v /= v.sum();
    return v;
}

}  // namespace

WeightVector::WeightVector(Eigen::VectorXd weights) : weights_(std::move(weights)) {
    if (weights_.size() < 1) throw InvalidParameter("weight vector is empty");
    for (Eigen::Index j = 0; j < weights_.size(); ++j) {
        if (!std::isfinite(weights_[j]) || weights_[j] < 0.0) {
            throw InvalidParameter("weight " + std::to_string(j + 1) + " is negative or not finite");
        }
    }
    if (std::abs(weights_.sum() - 1.0) > 1e-12) {
        throw InvalidParameter("weights sum to " + std::to_string(weights_.sum()) + ", not 1");
    }
}

MixedSample::MixedSample(Eigen::VectorXd y, Eigen::MatrixXd x_high)
    : y_(std::move(y)), x_high_(std::move(x_high)) {
    if (x_high_.rows() != y_.size()) {
        throw DimensionMismatch("x_high has " + std::to_string(x_high_.rows()) +
                                " rows but y has length " + std::to_string(y_.size()));
    }
    if (x_high_.cols() < 1) throw DimensionMismatch("x_high needs at least one column");
}

MixedSample MixedSample::with_response(Eigen::VectorXd y) const {
    return MixedSample(std::move(y), x_high_);
}

WeightVector flat_weights(Eigen::Index m) {
    require_positive_m(m);
    return WeightVector(Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m)));
}

WeightVector end_of_period_weights(Eigen::Index m, std::span<const double> leading) {
    require_positive_m(m);
    const auto n = static_cast<Eigen::Index>(leading.size());
    if (n < 1 || n >= m) {
        throw InvalidParameter("end-of-period weights need 1 <= n < m (n=" + std::to_string(n) +
                               ", m=" + std::to_string(m) + ")");
    }
    double sum = 0.0;
    for (double v : leading) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidParameter("end-of-period leading weights must be positive");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw InvalidParameter("end-of-period leading weights sum to " + std::to_string(sum));
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    for (Eigen::Index j = 0; j < n; ++j) w[j] = leading[static_cast<std::size_t>(j)] / sum;
    return WeightVector(std::move(w));
}

WeightVector midas_weights(double theta, Eigen::Index m) {
    require_positive_m(m);
    if (!std::isfinite(theta)) throw InvalidParameter("theta must be finite");
    const double md = static_cast<double>(m);
    Eigen::VectorXd w(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        w[j] = std::pow(2.0 - static_cast<double>(j + 1) / md, 4.0 * theta);
    }
    return WeightVector(normalized(std::move(w)));
}

std::pair<WeightVector, WeightVector> instrument_weights(Eigen::Index m) {
    require_positive_m(m);
    Eigen::VectorXd geometric(m);
    Eigen::VectorXd linear(m);
    double g = 1.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        geometric[j] = g;
        g *= 0.9;
        linear[j] = static_cast<double>(m - j);
    }
    return {WeightVector(normalized(std::move(geometric))),
            WeightVector(normalized(std::move(linear)))};
}

Eigen::VectorXd aggregate(const MixedSample& sample, const WeightVector& w) {
    if (w.m() != sample.m()) {
        throw DimensionMismatch("weight vector has m=" + std::to_string(w.m()) +
                                " but sample has m=" + std::to_string(sample.m()));
    }
    return sample.x_high() * w.values();
}

Eigen::MatrixXd build_instruments(const MixedSample& sample) {
    if (sample.m() < 2) {
        throw DegenerateInstruments("instruments coincide when m = 1");
    }
    const auto [upsilon1, upsilon2] = instrument_weights(sample.m());
    Eigen::MatrixXd z(sample.T(), 2);
    z.col(0) = aggregate(sample, upsilon1);
    z.col(1) = aggregate(sample, upsilon2);
    return z;
}

}  // namespace mfspec
