#include "mfspec/regression.hpp"

#include "mfspec/errors.hpp"

#include <string>
#include <utility>

namespace mfspec {

namespace {

std::vector<std::string> default_labels(Eigen::Index p) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) labels.push_back("x" + std::to_string(j + 1));
    return labels;
}

// Column-pivoted Householder QR of the design with the Gram-pivot rank test.
class QrSolver {
public:
    explicit QrSolver(const Eigen::MatrixXd& a) : qr_(a) {
        const double max_diag = a.colwise().squaredNorm().maxCoeff();
        const Eigen::Index p = a.cols();
        const double last = qr_.matrixQR()(p - 1, p - 1);
        if (!(max_diag > 0.0) || !(last * last > kRankTolerance * max_diag)) {
            throw RankDeficient("design is rank deficient: pivot " + std::to_string(last * last) +
                                " vs largest Gram diagonal " + std::to_string(max_diag));
        }
    }

    template <typename Rhs>
    auto solve(const Rhs& rhs) const {
        return qr_.solve(rhs);
    }

private:
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

void check_rows(const DesignMatrix& design, Eigen::Index rows) {
    if (design.rows() != rows) {
        throw DimensionMismatch("design has " + std::to_string(design.rows()) +
                                " rows but target has " + std::to_string(rows));
    }
}

}  // namespace

DesignMatrix::DesignMatrix(Eigen::MatrixXd values)
    : DesignMatrix(std::move(values), {}) {}

DesignMatrix::DesignMatrix(Eigen::MatrixXd values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
    if (values_.cols() < 1) throw DimensionMismatch("design needs at least one column");
    if (values_.rows() < values_.cols()) {
        throw DimensionMismatch("design has fewer rows (" + std::to_string(values_.rows()) +
                                ") than columns (" + std::to_string(values_.cols()) + ")");
    }
    if (labels_.empty()) labels_ = default_labels(values_.cols());
    if (static_cast<Eigen::Index>(labels_.size()) != values_.cols()) {
        throw DimensionMismatch("label count does not match column count");
    }
}

DesignMatrix DesignMatrix::with_intercept(const Eigen::MatrixXd& regressors,
                                          std::vector<std::string> labels) {
    Eigen::MatrixXd values(regressors.rows(), regressors.cols() + 1);
    values.col(0).setOnes();
    values.rightCols(regressors.cols()) = regressors;
    if (labels.empty()) labels = default_labels(regressors.cols());
    labels.insert(labels.begin(), "const");
    return DesignMatrix(std::move(values), std::move(labels));
}

FitResult ols_fit(const DesignMatrix& design, const Eigen::VectorXd& response) {
    check_rows(design, response.size());
    const QrSolver solver(design.values());
    FitResult fit;
    fit.coefficients = solver.solve(response);
    fit.fitted = design.values() * fit.coefficients;
    fit.residuals = response - fit.fitted;
    return fit;
}

Eigen::MatrixXd project_columns(const DesignMatrix& design, const Eigen::MatrixXd& targets) {
    check_rows(design, targets.rows());
    const QrSolver solver(design.values());
    return design.values() * solver.solve(targets);
}

Eigen::MatrixXd annihilate_columns(const DesignMatrix& design, const Eigen::MatrixXd& targets) {
    return targets - project_columns(design, targets);
}

Eigen::VectorXd project(const DesignMatrix& design, const Eigen::VectorXd& target) {
    return project_columns(design, target);
}

Eigen::VectorXd annihilate(const DesignMatrix& design, const Eigen::VectorXd& target) {
    return target - project(design, target);
}

double fwl_coefficient(const DesignMatrix& full_design, Eigen::Index focus,
                       const Eigen::VectorXd& response) {
    const Eigen::Index p = full_design.cols();
    if (focus < 0 || focus >= p) throw InvalidParameter("focus column index out of range");
    check_rows(full_design, response.size());
    // Full-rank check on the whole design first, so collinearity surfaces the same way
    // regardless of which column is in focus.
    { const QrSolver full(full_design.values()); }

    const Eigen::VectorXd x = full_design.values().col(focus);
    if (p == 1) return x.dot(response) / x.squaredNorm();

    Eigen::MatrixXd controls(full_design.rows(), p - 1);
    for (Eigen::Index j = 0, k = 0; j < p; ++j) {
        if (j != focus) controls.col(k++) = full_design.values().col(j);
    }
    const DesignMatrix control_design(std::move(controls));
    const Eigen::VectorXd x_tilde = annihilate(control_design, x);
    const Eigen::VectorXd y_tilde = annihilate(control_design, response);
    const double denom = x_tilde.squaredNorm();
    if (!(denom > kRankTolerance * x.squaredNorm())) {
        throw RankDeficient("focus column is collinear with the controls");
    }
    return x_tilde.dot(y_tilde) / denom;
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& gram, const char* what) {
    if (gram.rows() != gram.cols()) throw DimensionMismatch(std::string(what) + " is not square");
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    const double max_diag = gram.diagonal().cwiseAbs().maxCoeff();
    const double min_pivot = ldlt.vectorD().minCoeff();
    if (ldlt.info() != Eigen::Success || !(max_diag > 0.0) ||
        !(min_pivot > kRankTolerance * max_diag)) {
        throw RankDeficient(std::string(what) + " is singular or not positive definite");
    }
    return ldlt.solve(Eigen::MatrixXd::Identity(gram.rows(), gram.cols()));
}

}  // namespace mfspec
