#pragma once

#include "mfspec/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace fixtures {

inline Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    mfspec::Xoshiro256pp rng(seed);
    mfspec::StandardNormal normal;
    Eigen::MatrixXd out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
    return out;
}

inline Eigen::VectorXd normal_vector(Eigen::Index n, std::uint64_t seed) {
    return normal_matrix(n, 1, seed).col(0);
}

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace fixtures
