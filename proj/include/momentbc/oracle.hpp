#ifndef MOMENTBC_ORACLE_HPP
#define MOMENTBC_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "momentbc/bc_solver.hpp"
#include "momentbc/dynsys.hpp"

// Independent brute-force references used by the tests and by solver
// self-verification.  Nothing here shares a linear solve or recurrence
// implementation with the solver modules it validates: the eigensolver
// is a hand-rolled cyclic Jacobi rotation sweep, the Vandermonde solve
// is plain Gaussian elimination, and the polynomial coefficients come
// from an exact integer expansion.  Slow and dense by design.

namespace momentbc::oracle {

// Eigenvalues of A^N with Dirichlet termination plus norming constants
// rho_k = sum_n phi_n(lambda_k)^2 of the recurrence eigenvectors.
struct DirichletSpectralData {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> norming;      // rho_k > 0
};

DirichletSpectralData dense_spectral_data(const JacobiMatrix& J);

// The atomic spectral measure of A^N: jumps 1/rho_k at lambda_k.
AtomicMeasure spectral_measure(const DirichletSpectralData& data);

// s_j = sum_k w_k lambda_k^j by direct summation, j = 0..k_max.
MomentSequence moments_from_measure(const AtomicMeasure& mu, int k_max);

// Solve sum_k w_k lambda_k^j = s_j, j = 0..K-1, by Gaussian elimination
// on the Vandermonde system.  Throws IllConditioned when the positions
// nearly coincide.
std::vector<double> vandermonde_weights(const std::vector<double>& positions,
                                        const MomentSequence& s);

// Exact integer monomial coefficients of T_1..T_n from the recurrence
// T_{t+1} = lambda T_t - T_{t-1}; row i holds the coefficients of T_i
// (length n, zero padded).  Requires n <= 64 to stay inside int64.
std::vector<std::vector<std::int64_t>> symbolic_cheb_coefficients(int n);

}  // namespace momentbc::oracle

#endif
