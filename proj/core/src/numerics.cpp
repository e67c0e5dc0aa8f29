#include "rhtunnel/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rhtunnel/errors.hpp"

namespace rhtunnel {

double condition_number_2norm(const DenseMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("condition number requires a square matrix");
    if (A.rows() == 0) return 1.0;
    Eigen::JacobiSVD<DenseMatrix> svd(A);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

LinearSystem::LinearSystem(const DenseMatrix& A) : A_(A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("linear system requires a square matrix");
    condition_ = condition_number_2norm(A);
    if (!(condition_ <= kMaxCondition))
        throw SolverError("matrix is singular or ill-conditioned (cond = " + std::to_string(condition_) + ")",
                          condition_);
    lu_.compute(A_);
}

DenseVector LinearSystem::solve(const DenseVector& b) const {
    if (b.size() != A_.rows()) throw std::invalid_argument("right-hand side has the wrong length");
    DenseVector x = lu_.solve(b);
    const double residual = (A_ * x - b).norm();
    if (!(residual <= 1e-10 * std::max(1.0, b.norm())))
        throw SolverError("linear solve residual " + std::to_string(residual) + " exceeds tolerance", condition_);
    return x;
}

DenseVector solve_dense(const DenseMatrix& A, const DenseVector& b) { return LinearSystem(A).solve(b); }

}  // namespace rhtunnel
