#include "mfspec/dgp.hpp"

#include "mfspec/errors.hpp"
#include "mfspec/rng.hpp"

#include <cmath>
#include <string>

namespace mfspec {

void DgpSpec::validate() const {
    if (!(std::abs(c) < 1.0)) throw InvalidParameter("error AR parameter c must satisfy |c| < 1");
    if (!(std::abs(d) < 1.0)) throw InvalidParameter("regressor AR parameter d must satisfy |d| < 1");
    if (T < 1) throw InvalidParameter("T must be >= 1");
    if (m < 1) throw InvalidParameter("m must be >= 1");
    if (burn_in < 0) throw InvalidParameter("burn_in must be >= 0");
    if (!std::isfinite(beta) || !std::isfinite(theta)) {
        throw InvalidParameter("beta and theta must be finite");
    }
}

namespace {

SimulatedSample generate(const DgpSpec& spec, bool keep_errors) {
    spec.validate();
    const Eigen::Index T = spec.T;
    const Eigen::Index m = spec.m;
    const WeightVector pi = midas_weights(spec.theta, m);

    Xoshiro256pp rng(spec.seed);
    StandardNormal normal;
    double u = 0.0;
    double x = 0.0;
    for (Eigen::Index s = 0; s < spec.burn_in; ++s) {
        u = spec.c * u + normal(rng);
        x = spec.d * x + normal(rng);
    }

    Eigen::MatrixXd x_high(T, m);
    Eigen::MatrixXd u_high = keep_errors ? Eigen::MatrixXd(T, m) : Eigen::MatrixXd();
    Eigen::VectorXd u_low = Eigen::VectorXd::Zero(T);
    for (Eigen::Index t = 0; t < T; ++t) {
        // Time runs forward through the block: oldest lag (column m-1) first.
        for (Eigen::Index j = m - 1; j >= 0; --j) {
            u = spec.c * u + normal(rng);
            x = spec.d * x + normal(rng);
            x_high(t, j) = x;
            u_low[t] += pi[j] * u;
            if (keep_errors) u_high(t, j) = u;
        }
    }
    Eigen::VectorXd y = spec.beta * (x_high * pi.values()) + u_low;
    return SimulatedSample{MixedSample(std::move(y), std::move(x_high)), std::move(u_high),
                           std::move(u_low)};
}

}  // namespace

MixedSample simulate(const DgpSpec& spec) {
    return std::move(generate(spec, false).sample);
}

SimulatedSample simulate_with_errors(const DgpSpec& spec) {
    return generate(spec, true);
}

std::uint64_t derive_replication_seed(std::uint64_t base_seed, std::uint64_t cell,
                                      std::uint64_t replication) noexcept {
    std::uint64_t h = mix64(base_seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (cell + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ (replication + 0x85157af5d2f9a64bULL));
    return h;
}

}  // namespace mfspec
