#pragma once

#include "mfspec/weights.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace mfspec {

/// Monte Carlo design: high-frequency AR(1) regressor (parameter d) and AR(1)
/// error (parameter c) with i.i.d. N(0,1) innovations, y = beta x + u at high
/// frequency, and low-frequency y_t, u_t aggregated with midas_weights(theta, m).
struct DgpSpec {
    Eigen::Index T = 125;
    Eigen::Index m = 4;
    double c = 0.0;
    double d = 0.0;
    double beta = 10.0;
    double theta = 0.0;
    std::uint64_t seed = 0;
    Eigen::Index burn_in = 1000;

    /// Throws InvalidParameter on |c| >= 1, |d| >= 1, T < 1, m < 1, or burn_in < 0.
    void validate() const;
};

/// A simulated sample together with the unobserved error process.
struct SimulatedSample {
    MixedSample sample;
    Eigen::MatrixXd u_high;  ///< T x m, same most-recent-first layout as x_high
    Eigen::VectorXd u_low;   ///< u_t = u_high row t dotted with pi(theta)
};

/// One contiguous high-frequency chain of length burn_in + T m (started at
/// zero, burn-in discarded) reshaped into T periods. Per step the error
/// innovation is drawn before the regressor innovation.
MixedSample simulate(const DgpSpec& spec);
SimulatedSample simulate_with_errors(const DgpSpec& spec);

/// Deterministic 64-bit seed for replication `replication` of grid cell `cell`.
std::uint64_t derive_replication_seed(std::uint64_t base_seed, std::uint64_t cell,
                                      std::uint64_t replication) noexcept;

}  // namespace mfspec
