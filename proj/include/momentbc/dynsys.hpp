#ifndef MOMENTBC_DYNSYS_HPP
#define MOMENTBC_DYNSYS_HPP

#include <Eigen/Dense>
#include <vector>

#include "momentbc/chebyshev.hpp"

namespace momentbc {

using Control = std::vector<double>;

// Symmetric tridiagonal matrix with positive off-diagonal a_1..a_{N-1}
// and diagonal b_1..b_N.  The boundary coefficient a_0 is fixed to 1.
struct JacobiMatrix {
  std::vector<double> a;
  std::vector<double> b;

  JacobiMatrix(std::vector<double> offdiag, std::vector<double> diag);
  int size() const { return int(b.size()); }
  // a_k with the a_0 = 1 convention; k = 0..N-1
  double a_at(int k) const { return k == 0 ? 1.0 : a[size_t(k) - 1]; }
};

// Solution grid v_{n,t} of the discrete-time system, n = 0..N+1,
// t = -1..T.  Row 0 carries the control, row N+1 the Dirichlet cap.
struct Wavefield {
  int N = 0;
  int T = 0;
  Eigen::MatrixXd grid;  // (N+2) x (T+2); column t+1 holds time t

  double at(int n, int t) const { return grid(n, t + 1); }
  // interior state (v_1, ..., v_N) at time t
  Eigen::VectorXd state(int t) const {
    return grid.col(t + 1).segment(1, N);
  }
};

// v_{n,t+1} = a_n v_{n+1,t} + a_{n-1} v_{n-1,t} + b_n v_{n,t} - v_{n,t-1}
// with zero initial state, v_{0,t} = f_t and Dirichlet v_{N+1,t} = 0.
// Controls shorter than T are extended by zeros (f_{-1} = f_T = 0).
Wavefield simulate_finite(const JacobiMatrix& J, const Control& f, int T);

// Half-line dynamics truncated at n = T+1 with a Dirichlet cap; finite
// propagation speed makes the cap invisible, so the field agrees with
// the untruncated system everywhere it is nonzero.  Requires J to carry
// at least T rows.
Wavefield simulate_semi_infinite(const JacobiMatrix& J, const Control& f, int T);

// r_{t-1} = v^delta_{1,t}, t = 1..T, for the Dirichlet-terminated system.
// Entries past index 2N-2 reflect the termination at n = N+1.
ResponseVector response_vector(const JacobiMatrix& J, int T);

// (Rf)_t = sum_{s<t} r_{t-1-s} f_s for t = 1..T (convolution with the
// response kernel); output component i is the response at time i+1.
std::vector<double> response_apply(const ResponseVector& r, const Control& f);

// Multiplication by the transpose of response_apply's convolution matrix.
std::vector<double> response_adjoint_apply(const ResponseVector& r,
                                           const std::vector<double>& g);

// Control operator W^T: column j is the interior state at time T reached
// from the basis control e_j.  Anti-diagonal entry (n, T-n+1) equals
// prod_{k<n} a_k.  Requires T <= N.
Eigen::MatrixXd control_matrix(const JacobiMatrix& J, int T);

// Connecting operator from the response vector:
// C_{ij} = sum_{k=0}^{T-max(i,j)} r_{|i-j|+2k}.  Needs 2T-1 entries.
Eigen::MatrixXd connecting_from_response(const ResponseVector& r, int T);

// Connecting operator as the Gram matrix W^T^* W^T; equals
// connecting_from_response(response_vector(J, 2T-1), T) for T <= N.
Eigen::MatrixXd connecting_from_gram(const JacobiMatrix& J, int T);

}  // namespace momentbc

#endif
