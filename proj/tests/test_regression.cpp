#include "mfspec/errors.hpp"
#include "mfspec/regression.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace mfspec;

TEST(DesignMatrix, RejectsMoreColumnsThanRows) {
    EXPECT_THROW(DesignMatrix(Eigen::MatrixXd::Ones(2, 3)), DimensionMismatch);
    EXPECT_THROW(DesignMatrix(Eigen::MatrixXd(4, 0)), DimensionMismatch);
}

TEST(DesignMatrix, InterceptColumnIsPrependedAndLabelled) {
    Eigen::MatrixXd x(3, 1);
    x << 0, 1, 2;
    const auto d = DesignMatrix::with_intercept(x, {"xA"});
    ASSERT_EQ(d.cols(), 2);
    EXPECT_EQ(d.labels(), (std::vector<std::string>{"const", "xA"}));
    EXPECT_EQ(d.values().col(0), Eigen::VectorXd::Ones(3));
    EXPECT_EQ(d.values().col(1), x.col(0));
}

TEST(OlsFit, ThreePointLineMatchesNormalEquations) {
    // X'X = [[3,3],[3,5]], X'y = (8,11)  =>  beta = (7/6, 3/2)
    Eigen::MatrixXd x(3, 1);
    x << 0, 1, 2;
    Eigen::VectorXd y(3);
    y << 1, 3, 4;
    const auto fit = ols_fit(DesignMatrix::with_intercept(x), y);
    EXPECT_NEAR(fit.coefficients[0], 7.0 / 6.0, 1e-12);
    EXPECT_NEAR(fit.coefficients[1], 1.5, 1e-12);
    EXPECT_NEAR((fit.fitted + fit.residuals - y).norm(), 0.0, 1e-14);
}

TEST(OlsFit, RankDeficientDesignThrows) {
    Eigen::MatrixXd x(5, 2);
    x.col(0) << 1, 2, 3, 4, 5;
    x.col(1) = 2.0 * x.col(0);
    EXPECT_THROW(ols_fit(DesignMatrix::with_intercept(x), Eigen::VectorXd::Ones(5)), RankDeficient);
}

TEST(OlsFit, LengthMismatchThrows) {
    EXPECT_THROW(ols_fit(DesignMatrix(Eigen::MatrixXd::Ones(4, 1)), Eigen::VectorXd::Ones(3)),
                 DimensionMismatch);
}

TEST(Projection, ResidualsAreOrthogonalAndComplementary) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const DesignMatrix d(fixtures::normal_matrix(40, 4, seed));
        const Eigen::VectorXd v = fixtures::normal_vector(40, seed + 1000);
        const Eigen::VectorXd p = project(d, v);
        const Eigen::VectorXd r = annihilate(d, v);
        EXPECT_LT((p + r - v).norm(), 1e-12 * v.norm());
        EXPECT_LT((d.values().transpose() * r).norm(), 1e-10 * v.norm());
        EXPECT_LT((project(d, p) - p).norm(), 1e-10 * v.norm());  // idempotent
    }
}

TEST(Projection, ColumnwiseMatchesVectorForm) {
    const DesignMatrix d(fixtures::normal_matrix(30, 3, 7));
    const Eigen::MatrixXd block = fixtures::normal_matrix(30, 2, 8);
    const Eigen::MatrixXd pc = project_columns(d, block);
    const Eigen::MatrixXd rc = annihilate_columns(d, block);
    for (int j = 0; j < 2; ++j) {
        EXPECT_LT((pc.col(j) - project(d, block.col(j))).norm(), 1e-12);
        EXPECT_LT((rc.col(j) - annihilate(d, block.col(j))).norm(), 1e-12);
    }
}

TEST(Fwl, CoefficientEqualsFullRegressionOnRandomFixtures) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Eigen::Index p = 1 + static_cast<Eigen::Index>(seed % 4);
        const DesignMatrix d(fixtures::normal_matrix(25, p, seed));
        const Eigen::VectorXd y = fixtures::normal_vector(25, seed * 31);
        const auto full = ols_fit(d, y);
        for (Eigen::Index k = 0; k < p; ++k) {
            EXPECT_LT(fixtures::rel_diff(fwl_coefficient(d, k, y), full.coefficients[k]), 1e-10)
                << "seed " << seed << " column " << k;
        }
    }
}

TEST(Fwl, FocusOutOfRangeThrows) {
    const DesignMatrix d(fixtures::normal_matrix(10, 2, 3));
    EXPECT_THROW(fwl_coefficient(d, 2, Eigen::VectorXd::Ones(10)), InvalidParameter);
}

TEST(SpdInverse, KnownTwoByTwo) {
    Eigen::Matrix2d a;
    a << 4, 2, 2, 3;  // det 8
    Eigen::Matrix2d expected;
    expected << 3.0 / 8, -2.0 / 8, -2.0 / 8, 4.0 / 8;
    EXPECT_LT((spd_inverse(a) - expected).norm(), 1e-14);
}

TEST(SpdInverse, SingularThrows) {
    Eigen::Matrix2d a;
    a << 1, 1, 1, 1;
    EXPECT_THROW(spd_inverse(a), RankDeficient);
}

TEST(OlsFit, ExactProportionalResponse) {
    Eigen::MatrixXd x(3, 1);
    x << 1, 2, 3;
    const auto fit = ols_fit(DesignMatrix(x), Eigen::Vector3d(2, 4, 6));
    EXPECT_NEAR(fit.coefficients[0], 2.0, 1e-14);
    EXPECT_LT(fit.residuals.norm(), 1e-14);
}

TEST(OlsFit, InterceptOnlyIsTheMean) {
    const auto fit = ols_fit(DesignMatrix(Eigen::MatrixXd::Ones(3, 1)), Eigen::Vector3d(1, 2, 6));
    EXPECT_NEAR(fit.coefficients[0], 3.0, 1e-14);
    EXPECT_LT((fit.residuals - Eigen::Vector3d(-2, -1, 3)).norm(), 1e-14);
}

TEST(OlsFit, NormalEquationsHoldOnRandomDesigns) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Eigen::Index T = 20 + static_cast<Eigen::Index>((seed * 97) % 980);
        const Eigen::Index p = 1 + static_cast<Eigen::Index>(seed % 10);
        const DesignMatrix d(fixtures::normal_matrix(T, p, seed));
        const Eigen::VectorXd y = 50.0 * fixtures::normal_vector(T, seed + 77);
        const auto fit = ols_fit(d, y);
        EXPECT_LE((d.values().transpose() * fit.residuals).lpNorm<Eigen::Infinity>(),
                  1e-8 * y.lpNorm<Eigen::Infinity>());
    }
}

TEST(Projection, OntoConstantsIsTheMean) {
    const DesignMatrix ones(Eigen::MatrixXd::Ones(3, 1));
    EXPECT_LT((project(ones, Eigen::Vector3d(1, 2, 3)) - Eigen::Vector3d(2, 2, 2)).norm(), 1e-14);
}

TEST(Projection, DesignColumnsAreFixedAndAnnihilated) {
    const Eigen::MatrixXd z = fixtures::normal_matrix(30, 3, 5);
    const DesignMatrix d(z);
    for (int j = 0; j < 3; ++j) {
        EXPECT_LT((project(d, z.col(j)) - z.col(j)).norm(), 1e-12);
        EXPECT_LT(annihilate(d, z.col(j)).norm(), 1e-12);
    }
}

TEST(Projection, ResidualsOnInterceptDesignSumToZero) {
    const auto d = DesignMatrix::with_intercept(fixtures::normal_matrix(50, 1, 9));
    const Eigen::VectorXd y = fixtures::normal_vector(50, 10).array() + 4.0;
    EXPECT_NEAR(annihilate(d, y).sum(), 0.0, 1e-12);
}

TEST(Fwl, OrthogonalFocusMatchesSimpleRegression) {
    Eigen::MatrixXd x(4, 2);
    x << 1, 1, 1, -1, 1, 1, 1, -1;  // columns orthogonal
    const Eigen::Vector4d y(3, 1, 4, 1);
    const double simple = x.col(1).dot(y) / x.col(1).squaredNorm();
    EXPECT_NEAR(fwl_coefficient(DesignMatrix(x), 1, y), simple, 1e-14);
}

TEST(Fwl, FocusEqualToControlThrows) {
    Eigen::MatrixXd x = fixtures::normal_matrix(10, 2, 4);
    x.col(1) = x.col(0);
    EXPECT_THROW(fwl_coefficient(DesignMatrix(x), 1, Eigen::VectorXd::Ones(10)), RankDeficient);
}
