#include "mfspec/covariance.hpp"

#include "mfspec/errors.hpp"
#include "mfspec/regression.hpp"

#include <cmath>
#include <string>

namespace mfspec {

std::size_t newey_west_bandwidth(std::size_t T) {
    if (T < 1) throw InvalidParameter("sample size must be >= 1");
    return static_cast<std::size_t>(
        std::floor(4.0 * std::pow(static_cast<double>(T) / 100.0, 2.0 / 9.0)));
}

std::size_t HacOptions::resolve(std::size_t T) const {
    return bandwidth ? *bandwidth : newey_west_bandwidth(T);
}

Eigen::MatrixXd hac_long_run_cov(const Eigen::MatrixXd& scores, std::size_t bandwidth) {
    const auto T = static_cast<std::size_t>(scores.rows());
    if (bandwidth >= T) {
        throw BandwidthTooLarge("bandwidth " + std::to_string(bandwidth) +
                                " must be smaller than the series length " + std::to_string(T));
    }
    const double inv_t = 1.0 / static_cast<double>(T);
    Eigen::MatrixXd s = scores.transpose() * scores * inv_t;
    const auto rows = static_cast<Eigen::Index>(T);
    for (std::size_t lag = 1; lag <= bandwidth; ++lag) {
        const auto l = static_cast<Eigen::Index>(lag);
        const double weight = 1.0 - static_cast<double>(lag) / static_cast<double>(bandwidth + 1);
        // Gamma_l = sum_t s_t s_{t-l}' / T
        const Eigen::MatrixXd gamma =
            scores.bottomRows(rows - l).transpose() * scores.topRows(rows - l) * inv_t;
        s += weight * (gamma + gamma.transpose());
    }
    return 0.5 * (s + s.transpose());
}

Eigen::MatrixXd hac_long_run_cov(const Eigen::MatrixXd& scores, const HacOptions& opts) {
    return hac_long_run_cov(scores, opts.resolve(static_cast<std::size_t>(scores.rows())));
}

namespace {

Eigen::MatrixXd score_rows(const Eigen::MatrixXd& regressors, const Eigen::VectorXd& residuals) {
    if (regressors.rows() != residuals.size()) {
        throw DimensionMismatch("regressors and residuals differ in length");
    }
    return regressors.array().colwise() * residuals.array();
}

}  // namespace

MomentEstimates estimate_moments(const Eigen::MatrixXd& regressors,
                                 const Eigen::MatrixXd& instruments,
                                 const Eigen::VectorXd& residuals, const HacOptions& opts) {
    if (regressors.rows() != instruments.rows()) {
        throw DimensionMismatch("regressors and instruments differ in length");
    }
    const double inv_t = 1.0 / static_cast<double>(regressors.rows());
    MomentEstimates m;
    m.q_xx = regressors.transpose() * regressors * inv_t;
    m.q_zz = instruments.transpose() * instruments * inv_t;
    m.q_xz = regressors.transpose() * instruments * inv_t;
    m.omega_hat = hac_long_run_cov(score_rows(regressors, residuals), opts);
    m.sigma_zu_hat = hac_long_run_cov(score_rows(instruments, residuals), opts);
    return m;
}

Eigen::MatrixXd null_ls_cov(const Eigen::MatrixXd& regressors, const Eigen::VectorXd& residuals,
                            const HacOptions& opts) {
    const double inv_t = 1.0 / static_cast<double>(regressors.rows());
    const Eigen::MatrixXd q_inv = spd_inverse(regressors.transpose() * regressors * inv_t, "Q_XX");
    const Eigen::MatrixXd omega = hac_long_run_cov(score_rows(regressors, residuals), opts);
    const Eigen::MatrixXd v = q_inv * omega * q_inv;
    return 0.5 * (v + v.transpose());
}

Eigen::MatrixXd tsls_cov(const MomentEstimates& moments) {
    const Eigen::MatrixXd q_zz_inv = spd_inverse(moments.q_zz, "Q_ZZ");
    const Eigen::MatrixXd a = moments.q_xz * q_zz_inv;  // Q_XZ Q_ZZ^-1
    const Eigen::MatrixXd bread_inv = spd_inverse(a * moments.q_xz.transpose(), "Q_XZ Q_ZZ^-1 Q_XZ'");
    const Eigen::MatrixXd meat = a * moments.sigma_zu_hat * a.transpose();
    const Eigen::MatrixXd v = bread_inv * meat * bread_inv;
    return 0.5 * (v + v.transpose());
}

Eigen::MatrixXd hac_coefficient_cov(const Eigen::MatrixXd& regressors,
                                    const Eigen::VectorXd& residuals, const HacOptions& opts) {
    return null_ls_cov(regressors, residuals, opts) / static_cast<double>(regressors.rows());
}

}  // namespace mfspec
