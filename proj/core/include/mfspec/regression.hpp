#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace mfspec {

/// Dense T x p regressor matrix with column labels.
///
/// Construction enforces T >= p >= 1. Full column rank is checked lazily by
/// the solve operations, which throw RankDeficient instead of regularizing.
class DesignMatrix {
public:
    explicit DesignMatrix(Eigen::MatrixXd values);
    DesignMatrix(Eigen::MatrixXd values, std::vector<std::string> labels);

    const Eigen::MatrixXd& values() const noexcept { return values_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    Eigen::Index rows() const noexcept { return values_.rows(); }
    Eigen::Index cols() const noexcept { return values_.cols(); }

    /// Prepends a column of ones labelled "const".
    static DesignMatrix with_intercept(const Eigen::MatrixXd& regressors,
                                       std::vector<std::string> labels = {});

private:
    Eigen::MatrixXd values_;
    std::vector<std::string> labels_;
};

struct FitResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
};

/// Relative tolerance on squared pivots: a pivot r_kk^2 below
/// kRankTolerance * max_j (D'D)_jj marks the design rank deficient.
inline constexpr double kRankTolerance = 1e-10;

FitResult ols_fit(const DesignMatrix& design, const Eigen::VectorXd& response);

/// P_D v, computed through a least-squares solve (no T x T matrices).
Eigen::VectorXd project(const DesignMatrix& design, const Eigen::VectorXd& target);

/// M_D v = v - P_D v.
Eigen::VectorXd annihilate(const DesignMatrix& design, const Eigen::VectorXd& target);

/// Column-wise projection / annihilation of a T x k block.
Eigen::MatrixXd project_columns(const DesignMatrix& design, const Eigen::MatrixXd& targets);
Eigen::MatrixXd annihilate_columns(const DesignMatrix& design, const Eigen::MatrixXd& targets);

/// Coefficient on column `focus` of `full_design`, by double residualization
/// on the remaining columns (Frisch-Waugh-Lovell).
double fwl_coefficient(const DesignMatrix& full_design, Eigen::Index focus,
                       const Eigen::VectorXd& response);

/// Inverse of a small symmetric positive definite matrix, RankDeficient when
/// the smallest pivot falls below kRankTolerance relative to the largest diagonal.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& gram, const char* what = "matrix");

}  // namespace mfspec
