#ifndef MOMENTBC_BC_SOLVER_HPP
#define MOMENTBC_BC_SOLVER_HPP

#include <Eigen/Dense>
#include <vector>

#include "momentbc/dynsys.hpp"
#include "momentbc/moments.hpp"

namespace momentbc {

// Finite atomic measure: positions strictly increasing, weights positive.
struct AtomicMeasure {
  struct Atom {
    double position;
    double weight;
  };
  std::vector<Atom> atoms;

  double total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight;
    return m;
  }
};

// Eigenpairs of the generalized problem S^N_1 g = lambda S^N_0 g together
// with the boundary controls f = (Lambda~_N^T)^{-1} g, normalized so that
// (C^N f, f) = 1.
struct GeneralizedEigenSolution {
  int order = 0;
  Eigen::VectorXd eigenvalues;     // ascending
  Eigen::MatrixXd hankel_vectors;  // columns g_k
  Eigen::MatrixXd controls;        // columns f_k
};

// B^N = Lambda~_N S^N_1 Lambda~_N^T with Lambda~_N = J_N Lambda_N J_N.
// Needs 2N moments.
Eigen::MatrixXd build_BN(const MomentSequence& s, int N);

// The same matrix assembled from connecting operators:
// B_{ij} = C^{N+1}_{i+1,j} + C^N_{i,j+1} (shift-and-embed form).
// Needs response entries r_0..r_{2N-1}.
Eigen::MatrixXd build_BN_from_response(const ResponseVector& r, int N);

// Generalized spectral problem on the Hankel pair, solved by symmetric
// Cholesky reduction of S^N_0 (with diagonal equilibration, which leaves
// the pencil invariant).  Throws NotPositiveDefinite when S^N_0 has a
// negative pivot and DegenerateProblem when it is numerically singular.
GeneralizedEigenSolution solve_generalized(const MomentSequence& s, int N,
                                           double tol = kDefaultTol);

// Same spectrum through the dynamic pair B^N f = lambda C^N f.
GeneralizedEigenSolution solve_generalized_connecting(const MomentSequence& s, int N,
                                                      double tol = kDefaultTol);

// Atomic measure solving the order-N truncated problem: atoms at the
// generalized eigenvalues, weight_k = alpha_k^2 with
// alpha_k = (R f_k)_N = sum_s r_{N-1-s} (f_k)_s.  The result is checked
// against the input moments; residuals above tol * max(1, max|s|) raise
// ResidualTooLarge.
AtomicMeasure solve_truncated(const MomentSequence& s, int N,
                              double tol = kDefaultTol);

// Spectrum and controls of the (N-1)-block by successive minimization of
// (C^N Df, f) over {f : f_0 = 0, (C^N f, f) = 1} with C-orthogonality to
// the earlier minimizers; agrees with solve_generalized at order N-1.
GeneralizedEigenSolution variational_solve(const MomentSequence& s, int N,
                                           double tol = kDefaultTol);

// Jacobi matrix entries from the determinant chain of the reversed
// connecting matrices: a_k as pivot ratios of one Cholesky factorization,
// b_k through modified-last-column solves.  Needs 2N moments.
JacobiMatrix recover_jacobi(const MomentSequence& s, int N,
                            double tol = kDefaultTol);

// Solve C f = beta kappa - alpha R~* kappa with kappa_t = T_{T-t}(lambda);
// the resulting control drives the system to (y_1(lambda),...,y_T(lambda))
// where y has Cauchy data y_0 = alpha, y_1 = beta.  R~* is the adjoint of
// the response sampled on times 0..T-1.
Control krein_solve(const Eigen::MatrixXd& C, const ResponseVector& r,
                    double lambda, double alpha, double beta);

// h = C^{-1} (leading, 0, ..., 0)^T with leading = prod_{k<T} a_k; drives
// the system to the state (0, ..., 0, 1).
Control krein_special_state(const Eigen::MatrixXd& C, double leading, int T);

struct ResidualReport {
  std::vector<double> per_moment;  // |sum_k w_k lambda_k^j - s_j|
  double max_residual = 0.0;
};

ResidualReport verify_measure(const AtomicMeasure& mu, const MomentSequence& s);

}  // namespace momentbc

#endif
