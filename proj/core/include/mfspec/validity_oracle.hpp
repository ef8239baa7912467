#pragma once

#include "mfspec/dgp.hpp"
#include "mfspec/weights.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace mfspec {

/// Covariance of one period's high-frequency regressor vector for a zero-mean
/// AR(1) (d = 0 gives the i.i.d. case).
struct RegressorCovariance {
    double d = 0.0;
    double sigma_x_sq = 1.0;
    Eigen::Index m = 1;

    void validate() const;
    /// Stationary AR(1) variance 1 / (1 - d^2) for unit-variance innovations.
    static RegressorCovariance stationary_ar1(double d, Eigen::Index m);
};

/// phi_ij = d^|i-j| sigma_x^2 (with 0^0 = 1).
Eigen::MatrixXd phi_matrix(const RegressorCovariance& cov);

/// E(z_{r,t} u^A_t) = beta1 Upsilon_r' (Phi pi(theta) - (pi0'Phi pi(theta) / pi0'Phi pi0) Phi pi0)
/// for a zero-mean regressor. DegenerateNull when pi0'Phi pi0 is not positive.
double expected_instrument_score(double beta1, double theta, const WeightVector& pi0,
                                 const WeightVector& upsilon_r, const RegressorCovariance& cov);

/// The i.i.d. specialization beta1 sigma^2 (Upsilon'pi(theta) - (pi0'pi(theta) / pi0'pi0) Upsilon'pi0),
/// evaluated from inner products only.
double expected_instrument_score_iid(double beta1, double theta, const WeightVector& pi0,
                                     const WeightVector& upsilon_r, double sigma_x_sq);

/// Population NULL-LS coefficients {E(x^A x^A')}^-1 E(x^A x(theta)') (beta0, beta1)'.
Eigen::Vector2d population_null_coefficients(double beta0, double beta1, double theta,
                                             const WeightVector& pi0,
                                             const RegressorCovariance& cov);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t replications = 0;
};

/// Brute-force average of z_{r,t} u^A_t over simulated samples, with u^A built
/// from the population NULL-LS coefficients. The standard error comes from the
/// spread of per-replication means. Replication r uses
/// derive_replication_seed(spec.seed, 0, r), so results do not depend on `workers`.
McEstimate monte_carlo_instrument_score(const DgpSpec& spec, const WeightVector& pi0,
                                        const WeightVector& upsilon_r, std::size_t replications,
                                        unsigned workers = 1);

}  // namespace mfspec
