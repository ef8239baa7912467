#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>

namespace mfspec {

enum class HacKernel { Bartlett };

/// Long-run covariance settings. An unset bandwidth resolves to
/// newey_west_bandwidth(T) at the point of use.
struct HacOptions {
    HacKernel kernel = HacKernel::Bartlett;
    std::optional<std::size_t> bandwidth;

    std::size_t resolve(std::size_t T) const;
};

/// floor(4 (T/100)^(2/9)).
std::size_t newey_west_bandwidth(std::size_t T);

/// Gamma_0 + sum_{l=1..L} (1 - l/(L+1)) (Gamma_l + Gamma_l'), where Gamma_l is
/// the lag-l autocovariance of the rows of `scores` taken about zero and divided by T.
/// Throws BandwidthTooLarge when L >= T.
Eigen::MatrixXd hac_long_run_cov(const Eigen::MatrixXd& scores, std::size_t bandwidth);
Eigen::MatrixXd hac_long_run_cov(const Eigen::MatrixXd& scores, const HacOptions& opts);

/// Sample moments entering the two sandwich covariances, all in 1/T normalization.
struct MomentEstimates {
    Eigen::MatrixXd q_xx;          ///< X'X / T
    Eigen::MatrixXd q_zz;          ///< Z'Z / T
    Eigen::MatrixXd q_xz;          ///< X'Z / T
    Eigen::MatrixXd omega_hat;     ///< HAC over rows x_t u_t
    Eigen::MatrixXd sigma_zu_hat;  ///< HAC over rows z_t u_t
};

/// Builds every moment from the regressors, instruments, and null residuals.
MomentEstimates estimate_moments(const Eigen::MatrixXd& regressors,
                                 const Eigen::MatrixXd& instruments,
                                 const Eigen::VectorXd& residuals, const HacOptions& opts);

/// V^A = Q_XX^-1 Omega Q_XX^-1 with Omega from the scores x_t u_t.
Eigen::MatrixXd null_ls_cov(const Eigen::MatrixXd& regressors, const Eigen::VectorXd& residuals,
                            const HacOptions& opts);

/// V = B^-1 (Q_XZ Q_ZZ^-1 Sigma_Zu Q_ZZ^-1 Q_XZ') B^-1 with B = Q_XZ Q_ZZ^-1 Q_XZ'.
Eigen::MatrixXd tsls_cov(const MomentEstimates& moments);

/// Finite-sample HAC covariance of OLS coefficients: (X'X)^-1 (T Omega) (X'X)^-1.
/// This is null_ls_cov / T for an arbitrary design; the t and Wald tests use it.
Eigen::MatrixXd hac_coefficient_cov(const Eigen::MatrixXd& regressors,
                                    const Eigen::VectorXd& residuals, const HacOptions& opts);

}  // namespace mfspec
