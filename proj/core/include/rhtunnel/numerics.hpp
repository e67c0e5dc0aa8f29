#pragma once

#include <Eigen/Dense>

namespace rhtunnel {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DenseVector = Eigen::VectorXd;

/// Systems with a 2-norm condition number above this are rejected.
inline constexpr double kMaxCondition = 1e12;

/// Ratio of extreme singular values; +infinity when the smallest one is zero.
double condition_number_2norm(const DenseMatrix& A);

/// A square system factored once (partial pivoting) and solved for many right-hand sides.
class LinearSystem {
public:
    explicit LinearSystem(const DenseMatrix& A);

    double condition() const noexcept { return condition_; }
    Eigen::Index size() const noexcept { return lu_.rows(); }
    DenseVector solve(const DenseVector& b) const;

private:
    DenseMatrix A_;
    Eigen::PartialPivLU<DenseMatrix> lu_;
    double condition_ = 0.0;
};

DenseVector solve_dense(const DenseMatrix& A, const DenseVector& b);

}  // namespace rhtunnel
