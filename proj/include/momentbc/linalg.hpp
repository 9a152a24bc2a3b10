#ifndef MOMENTBC_LINALG_HPP
#define MOMENTBC_LINALG_HPP

#include <Eigen/Dense>
#include <cmath>

namespace momentbc {

// Symmetric Cholesky factorization A = L L^T with an explicit pivot
// threshold.  Positive definiteness is decided by the pivots, not by
// determinant signs: a pivot below tol * n * max|A_ij| stops the
// factorization.  The partial factor (all completed columns) is kept so
// callers can still use leading blocks.
template <typename Scalar>
struct ThresholdedCholesky {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> L;
  int failed_at = -1;      // 0-based pivot index of the failure, -1 if none
  bool indefinite = false; // pivot < -threshold (as opposed to |pivot| <= threshold)
  Scalar threshold = 0;

  bool ok() const { return failed_at < 0; }
  // number of fully factorized leading rows/columns
  int rank_completed() const { return failed_at < 0 ? int(L.rows()) : failed_at; }
};

template <typename Scalar>
ThresholdedCholesky<Scalar> cholesky_thresholded(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A, double tol) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = int(A.rows());
  ThresholdedCholesky<Scalar> out;
  out.L = Mat::Zero(n, n);
  Scalar maxabs = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) maxabs = std::max<Scalar>(maxabs, std::abs(A(i, j)));
  out.threshold = Scalar(tol) * Scalar(n) * maxabs;
  for (int k = 0; k < n; ++k) {
    Scalar d = A(k, k);
    for (int j = 0; j < k; ++j) d -= out.L(k, j) * out.L(k, j);
    if (d <= out.threshold) {
      out.failed_at = k;
      out.indefinite = d < -out.threshold;
      return out;
    }
    const Scalar lkk = std::sqrt(d);
    out.L(k, k) = lkk;
    for (int i = k + 1; i < n; ++i) {
      Scalar v = A(i, k);
      for (int j = 0; j < k; ++j) v -= out.L(i, j) * out.L(k, j);
      out.L(i, k) = v / lkk;
    }
  }
  return out;
}

// Solve (L L^T) x = rhs using the leading m x m block of the factor.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> cholesky_block_solve(
    const ThresholdedCholesky<Scalar>& chol,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs, int m) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x = rhs;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) x(i) -= chol.L(i, j) * x(j);
    x(i) /= chol.L(i, i);
  }
  for (int i = m - 1; i >= 0; --i) {
    for (int j = i + 1; j < m; ++j) x(i) -= chol.L(j, i) * x(j);
    x(i) /= chol.L(i, i);
  }
  return x;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> cholesky_solve(
    const ThresholdedCholesky<Scalar>& chol,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs) {
  return cholesky_block_solve(chol, rhs, int(chol.L.rows()));
}

}  // namespace momentbc

#endif
