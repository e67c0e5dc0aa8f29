#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rhtunnel/errors.hpp"
#include "rhtunnel/numerics.hpp"
#include "rhtunnel/series.hpp"

using namespace rhtunnel;

TEST(SolveDense, SmallExamples) {
    const DenseVector x = solve_dense(DenseMatrix::Identity(3, 3), DenseVector::LinSpaced(3, 1.0, 3.0));
    EXPECT_DOUBLE_EQ(x(0), 1.0);
    EXPECT_DOUBLE_EQ(x(2), 3.0);
    DenseMatrix D(2, 2);
    D << 2.0, 0.0, 0.0, 4.0;
    DenseVector b(2);
    b << 2.0, 8.0;
    const DenseVector y = solve_dense(D, b);
    EXPECT_DOUBLE_EQ(y(0), 1.0);
    EXPECT_DOUBLE_EQ(y(1), 2.0);
}

TEST(SolveDense, ToeplitzKernelSystemMatchesBackSubstitution) {
    const int n = 49;
    const auto alpha = compute_alpha(2 * n, std::log(1.8) / (2.0 * oracle::pi), 1.42745);
    DenseMatrix A = DenseMatrix::Zero(n, n);
    std::vector<std::vector<double>> U(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A(i, j) = U[i][j] = alpha[j - i];
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseVector b(n);
    std::vector<double> bv(n);
    for (int i = 0; i < n; ++i) b(i) = bv[i] = u(rng);
    const DenseVector x = solve_dense(A, b);
    const auto ref = oracle::back_substitute(U, bv);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(x(i), ref[i], 1e-10);
}

TEST(SolveDense, RoundTripOnRandomMatrices) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + 4 * trial;
        DenseMatrix A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = u(rng) + (i == j ? n : 0.0);
        DenseVector x(n);
        for (int i = 0; i < n; ++i) x(i) = u(rng);
        const DenseVector y = solve_dense(A, A * x);
        EXPECT_LT((y - x).lpNorm<Eigen::Infinity>(), 1e-10);
    }
}

TEST(SolveDense, RejectsSingularAndMismatchedSystems) {
    DenseMatrix S(2, 2);
    S << 1.0, 2.0, 2.0, 4.0;
    EXPECT_THROW(LinearSystem{S}, SolverError);
    try {
        LinearSystem sys(S);
    } catch (const SolverError& e) {
        EXPECT_GT(e.condition(), kMaxCondition);
    }
    EXPECT_THROW(LinearSystem(DenseMatrix::Zero(2, 3)), std::invalid_argument);
    LinearSystem ok(DenseMatrix::Identity(2, 2));
    EXPECT_THROW(ok.solve(DenseVector::Ones(3)), std::invalid_argument);
}

TEST(Condition, Examples) {
    EXPECT_DOUBLE_EQ(condition_number_2norm(DenseMatrix::Identity(4, 4)), 1.0);
    DenseMatrix D(2, 2);
    D << 10.0, 0.0, 0.0, 0.1;
    EXPECT_NEAR(condition_number_2norm(D), 100.0, 1e-12);
    EXPECT_TRUE(std::isinf(condition_number_2norm(DenseMatrix::Zero(3, 3))));
}

TEST(Condition, ScaleInvariantAndAtLeastOne) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        DenseMatrix A(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) A(i, j) = u(rng);
        const double c = condition_number_2norm(A);
        EXPECT_GE(c, 1.0);
        EXPECT_NEAR(condition_number_2norm(-3.7 * A), c, 1e-9 * c);
    }
}
