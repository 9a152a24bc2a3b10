#ifndef MOMENTBC_MOMENTS_HPP
#define MOMENTBC_MOMENTS_HPP

#include <Eigen/Dense>
#include <vector>

#include "momentbc/chebyshev.hpp"

namespace momentbc {

inline constexpr double kDefaultTol = 1e-10;

// Hankel matrix S^N_m: entry(p,q) = s_{2N-p-q+m} for p,q = 1..N
// (top-left s_{2N-2+m}, bottom-right s_m).  Needs 2N-1+m moments.
Eigen::MatrixXd hankel(const MomentSequence& s, int N, int m);

// (Delta^k s)_n = sum_{i=0}^{k} (-1)^i C(k,i) s_{n+k-i}.
double difference(const MomentSequence& s, int k, int n);

struct MonotonicityReport {
  bool monotone;
  // first violating pair when monotone is false
  int k = -1;
  int n = -1;
  double value = 0.0;  // the offending (-1)^k (Delta^k s)_n
};

// Hausdorff's characterization on the finite window:
// (-1)^k (Delta^k s)_n >= -tol for all k, n with k + n < length(s).
MonotonicityReport is_completely_monotone(const MomentSequence& s,
                                          double tol = kDefaultTol);

// c~_n = sum_{k<=n} (-1)^k C(n,k) s_k; an involution.
MomentSequence signed_binomial_transform(const MomentSequence& s);

struct Classification {
  int order = 0;
  bool hamburger = false;
  bool stieltjes = false;
  bool hausdorff = false;
  // smallest eigenvalues of S^N_0, S^N_1 and S^N_0 - S^N_1 (diagnostics;
  // NaN where the moments did not reach)
  double min_eig_s0 = 0.0;
  double min_eig_s1 = 0.0;
  double min_eig_diff = 0.0;
};

// Existence classification of the order-N truncated problem:
//   hamburger:  S^N_0 positive definite,
//   stieltjes:  additionally S^N_1 positive definite,
//   hausdorff:  additionally S^N_0 - S^N_1 positive semidefinite.
// Definiteness is decided by factorization pivots against
// tol * N * max|entry|; the semidefinite test accepts smallest
// eigenvalue >= -tol * scale.  Needs 2N-1 moments; s_{2N-1} is required
// exactly when S^N_1 has to be evaluated (i.e. when hamburger holds).
Classification classify(const MomentSequence& s, int N, double tol = kDefaultTol);

// Largest N with S^N_0 positive definite at the given tolerance; 0 if none.
int max_feasible_order(const MomentSequence& s, double tol = kDefaultTol);

}  // namespace momentbc

#endif
