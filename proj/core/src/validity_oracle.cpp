#include "mfspec/validity_oracle.hpp"

#include "mfspec/errors.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

namespace mfspec {

namespace {

constexpr double kDegenerateTolerance = 1e-300;

void check_dims(Eigen::Index m, const WeightVector& a, const char* what) {
    if (a.m() != m) {
        throw DimensionMismatch(std::string(what) + " has m=" + std::to_string(a.m()) +
                                ", expected " + std::to_string(m));
    }
}

}  // namespace

void RegressorCovariance::validate() const {
    if (!(std::abs(d) < 1.0)) throw InvalidParameter("AR parameter d must satisfy |d| < 1");
    if (!(sigma_x_sq > 0.0)) throw InvalidParameter("sigma_x_sq must be positive");
    if (m < 1) throw InvalidParameter("m must be >= 1");
}

RegressorCovariance RegressorCovariance::stationary_ar1(double d, Eigen::Index m) {
    RegressorCovariance cov{d, 1.0 / (1.0 - d * d), m};
    cov.validate();
    return cov;
}

Eigen::MatrixXd phi_matrix(const RegressorCovariance& cov) {
    cov.validate();
    Eigen::VectorXd powers(cov.m);
    powers[0] = 1.0;
    for (Eigen::Index k = 1; k < cov.m; ++k) powers[k] = powers[k - 1] * cov.d;
    Eigen::MatrixXd phi(cov.m, cov.m);
    for (Eigen::Index i = 0; i < cov.m; ++i) {
        for (Eigen::Index j = 0; j < cov.m; ++j) {
            phi(i, j) = powers[std::abs(i - j)] * cov.sigma_x_sq;
        }
    }
    return phi;
}

double expected_instrument_score(double beta1, double theta, const WeightVector& pi0,
                                 const WeightVector& upsilon_r, const RegressorCovariance& cov) {
    cov.validate();
    check_dims(cov.m, pi0, "pi0");
    check_dims(cov.m, upsilon_r, "upsilon");
    const Eigen::MatrixXd phi = phi_matrix(cov);
    const Eigen::VectorXd pi_theta = midas_weights(theta, cov.m).values();
    const Eigen::VectorXd phi_pi0 = phi * pi0.values();
    const Eigen::VectorXd phi_pit = phi * pi_theta;
    const double null_var = pi0.values().dot(phi_pi0);
    if (!(null_var > kDegenerateTolerance)) throw DegenerateNull("pi0' Phi pi0 is not positive");
    const double ratio = pi0.values().dot(phi_pit) / null_var;
    return beta1 * upsilon_r.values().dot(phi_pit - ratio * phi_pi0);
}

double expected_instrument_score_iid(double beta1, double theta, const WeightVector& pi0,
                                     const WeightVector& upsilon_r, double sigma_x_sq) {
    const Eigen::Index m = pi0.m();
    check_dims(m, upsilon_r, "upsilon");
    if (!(sigma_x_sq > 0.0)) throw InvalidParameter("sigma_x_sq must be positive");
    const Eigen::VectorXd pi_theta = midas_weights(theta, m).values();
    const double p0p0 = pi0.values().squaredNorm();
    if (!(p0p0 > kDegenerateTolerance)) throw DegenerateNull("pi0' pi0 is not positive");
    const double ratio = pi0.values().dot(pi_theta) / p0p0;
    return beta1 * sigma_x_sq *
           (upsilon_r.values().dot(pi_theta) - ratio * upsilon_r.values().dot(pi0.values()));
}

Eigen::Vector2d population_null_coefficients(double beta0, double beta1, double theta,
                                             const WeightVector& pi0,
                                             const RegressorCovariance& cov) {
    cov.validate();
    check_dims(cov.m, pi0, "pi0");
    const Eigen::MatrixXd phi = phi_matrix(cov);
    const Eigen::VectorXd pi_theta = midas_weights(theta, cov.m).values();
    // Zero-mean regressor: E(x^A x^A') = diag(1, pi0'Phi pi0), E(x^A x(theta)') = diag(1, pi0'Phi pi(theta)).
    Eigen::Matrix2d exx;
    exx << 1.0, 0.0, 0.0, pi0.values().dot(phi * pi0.values());
    Eigen::Matrix2d ext;
    ext << 1.0, 0.0, 0.0, pi0.values().dot(phi * pi_theta);
    if (!(exx(1, 1) > kDegenerateTolerance)) throw DegenerateNull("E(x^A x^A') is singular");
    return exx.inverse() * ext * Eigen::Vector2d(beta0, beta1);
}

McEstimate monte_carlo_instrument_score(const DgpSpec& spec, const WeightVector& pi0,
                                        const WeightVector& upsilon_r, std::size_t replications,
                                        unsigned workers) {
    spec.validate();
    check_dims(spec.m, pi0, "pi0");
    check_dims(spec.m, upsilon_r, "upsilon");
    if (replications < 2) throw InvalidParameter("need at least two replications");

    const Eigen::Vector2d beta_a = population_null_coefficients(
        0.0, spec.beta, spec.theta, pi0, RegressorCovariance::stationary_ar1(spec.d, spec.m));

    std::vector<double> rep_means(replications);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t r = next.fetch_add(1); r < replications; r = next.fetch_add(1)) {
            DgpSpec s = spec;
            s.seed = derive_replication_seed(spec.seed, 0, r);
            const MixedSample sample = simulate(s);
            const Eigen::VectorXd xa = aggregate(sample, pi0);
            const Eigen::VectorXd z = aggregate(sample, upsilon_r);
            const Eigen::VectorXd u_a =
                (sample.y().array() - beta_a[0] - beta_a[1] * xa.array()).matrix();
            rep_means[r] = z.dot(u_a) / static_cast<double>(sample.T());
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work);
        for (auto& th : threads) th.join();
    }

    McEstimate est;
    est.replications = replications;
    double sum = 0.0;
    for (double v : rep_means) sum += v;
    est.mean = sum / static_cast<double>(replications);
    double ss = 0.0;
    for (double v : rep_means) ss += (v - est.mean) * (v - est.mean);
    est.std_error = std::sqrt(ss / static_cast<double>(replications - 1) /
                              static_cast<double>(replications));
    return est;
}

}  // namespace mfspec
