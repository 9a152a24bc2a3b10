#ifndef MOMENTBC_CHEBYSHEV_HPP
#define MOMENTBC_CHEBYSHEV_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace momentbc {

using MomentSequence = std::vector<double>;
using ResponseVector = std::vector<double>;

// The polynomial family used throughout: T_0 = 0, T_1 = 1,
// T_{t+1} = lambda T_t - T_{t-1}  (Chebyshev of the second kind in the
// variable lambda/2).  Evaluation always goes through the recurrence;
// expanded monomial coefficients cancel badly for |lambda| near 2.
double cheb_eval(int t, double lambda);

// Derivative T_t'(lambda) via the differentiated recurrence
// T'_{t+1} = T_t + lambda T'_t - T'_{t-1}, T'_0 = T'_1 = 0.
double cheb_eval_deriv(int t, double lambda);

// Gamma_T = (T_T(0), ..., T_1(0)) and Omega_T = (T_T'(0), ..., T_1'(0)),
// from the closed forms T_{2n-1}(0) = (-1)^{n-1}, T_{2n}(0) = 0,
// T'_{2n-1}(0) = 0, T'_{2n}(0) = (-1)^{n-1} n.
std::pair<std::vector<double>, std::vector<double>> gamma_omega_vectors(int T);

// Unit lower-triangular n x n matrix whose row i holds the monomial
// coefficients of T_i: entry(i,j) = (-1)^{(i-j)/2} C((i+j)/2 - 1, j - 1)
// for i >= j with i + j even, zero otherwise.
Eigen::MatrixXd lambda_matrix(int n);

// r_{t-1} = sum_j (Lambda_n)_{t,j} s_{j-1}; the response entries induced
// by the first n moments.
ResponseVector moments_to_response(const MomentSequence& s, int n);

// Exact inverse of moments_to_response (unit-triangular back substitution).
MomentSequence response_to_moments(const ResponseVector& r, int n);

// kappa_t = T_{T-t}(lambda) for t = 0..T-1; satisfies the backward
// recurrence kappa_{t+1} + kappa_{t-1} = lambda kappa_t with
// kappa_T = 0, kappa_{T-1} = 1.
std::vector<double> kappa_vector(int T, double lambda);

}  // namespace momentbc

#endif
