#include "momentbc/bc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "momentbc/errors.hpp"
#include "momentbc/linalg.hpp"

namespace momentbc {

namespace {

Eigen::MatrixXd lambda_tilde(int N) {
  // Lambda~_N = J_N Lambda_N J_N (flip rows and columns)
  return lambda_matrix(N).reverse();
}

// connecting-operator entry C^T_{ij} straight from the response kernel
double connecting_entry(const ResponseVector& r, int T, int i, int j) {
  if (i > T || j > T || i < 1 || j < 1) return 0.0;
  double acc = 0.0;
  for (int k = 0; k <= T - std::max(i, j); ++k) acc += r[std::abs(i - j) + 2 * k];
  return acc;
}

struct Reduction {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;  // columns v_k with (M0 v_k, v_k) = 1
};

// Symmetric-definite reduction of M1 v = lambda M0 v: equilibrate both
// matrices by D = diag(M0)^{-1/2} (a congruence, so the pencil is
// unchanged), factor the scaled M0 and solve the ordinary symmetric
// problem L^{-1} M1' L^{-T}.
Reduction reduce_definite_pencil(const Eigen::MatrixXd& M1, const Eigen::MatrixXd& M0,
                                 double tol, const char* who) {
  const int n = int(M0.rows());
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = M0(i, i) > 0.0 ? 1.0 / std::sqrt(M0(i, i)) : 1.0;
  const Eigen::MatrixXd A0 = d.asDiagonal() * M0 * d.asDiagonal();
  const Eigen::MatrixXd A1 = d.asDiagonal() * M1 * d.asDiagonal();

  const auto chol = cholesky_thresholded<double>(A0, tol);
  if (!chol.ok()) {
    const int usable = chol.rank_completed();
    if (chol.indefinite)
      throw NotPositiveDefinite(std::string(who) + ": matrix not positive definite "
                                "(pivot " + std::to_string(chol.failed_at + 1) + ")",
                                chol.failed_at + 1);
    throw DegenerateProblem(std::string(who) + ": matrix numerically singular; "
                            "largest usable order is " + std::to_string(usable),
                            usable);
  }
  const auto L = chol.L.triangularView<Eigen::Lower>();
  const Eigen::MatrixXd Y = L.solve(A1);
  Eigen::MatrixXd M = L.solve(Y.transpose()).transpose();
  M = 0.5 * (M + M.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success)
    throw Error(std::string(who) + ": eigensolver failed");

  Reduction red;
  red.eigenvalues = es.eigenvalues();
  red.vectors = chol.L.transpose().triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd(es.eigenvectors()));
  red.vectors = d.asDiagonal() * red.vectors;
  return red;
}

}  // namespace

Eigen::MatrixXd build_BN(const MomentSequence& s, int N) {
  if (int(s.size()) < 2 * N)
    throw InsufficientMoments("build_BN: order " + std::to_string(N) + " needs " +
                              std::to_string(2 * N) + " moments");
  const Eigen::MatrixXd Lt = lambda_tilde(N);
  const Eigen::MatrixXd S1 = hankel(s, N, 1);
  return Lt * S1 * Lt.transpose();
}

Eigen::MatrixXd build_BN_from_response(const ResponseVector& r, int N) {
  if (int(r.size()) < 2 * N)
    throw InsufficientResponse("build_BN_from_response: order " + std::to_string(N) +
                               " needs " + std::to_string(2 * N) + " response entries");
  Eigen::MatrixXd B(N, N);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      B(i - 1, j - 1) = connecting_entry(r, N + 1, i + 1, j) +
                        connecting_entry(r, N, i, j + 1);
  return B;
}

GeneralizedEigenSolution solve_generalized(const MomentSequence& s, int N, double tol) {
  if (int(s.size()) < 2 * N)
    throw InsufficientMoments("solve_generalized: order " + std::to_string(N) +
                              " needs " + std::to_string(2 * N) + " moments");
  const Eigen::MatrixXd S0 = hankel(s, N, 0);
  const Eigen::MatrixXd S1 = hankel(s, N, 1);
  Reduction red;
  try {
    red = reduce_definite_pencil(S1, S0, tol, "solve_generalized");
  } catch (const DegenerateProblem&) {
    throw DegenerateProblem("solve_generalized: S0 numerically singular at order " +
                            std::to_string(N) + "; max feasible order is " +
                            std::to_string(max_feasible_order(s, tol)),
                            max_feasible_order(s, tol));
  }

  GeneralizedEigenSolution sol;
  sol.order = N;
  sol.eigenvalues = red.eigenvalues;
  sol.hankel_vectors = red.vectors;  // (S0 g, g) = 1 by construction
  const Eigen::MatrixXd Lt = lambda_tilde(N);
  sol.controls = Lt.transpose().triangularView<Eigen::Lower>().solve(sol.hankel_vectors);
  return sol;
}

GeneralizedEigenSolution solve_generalized_connecting(const MomentSequence& s, int N,
                                                      double tol) {
  if (int(s.size()) < 2 * N)
    throw InsufficientMoments("solve_generalized_connecting: order " + std::to_string(N) +
                              " needs " + std::to_string(2 * N) + " moments");
  const ResponseVector r = moments_to_response(s, 2 * N);
  const Eigen::MatrixXd C = connecting_from_response(r, N);
  const Eigen::MatrixXd B = build_BN_from_response(r, N);
  const Reduction red =
      reduce_definite_pencil(0.5 * (B + B.transpose()), C, tol, "solve_generalized_connecting");

  GeneralizedEigenSolution sol;
  sol.order = N;
  sol.eigenvalues = red.eigenvalues;
  sol.controls = red.vectors;  // (C f, f) = 1
  sol.hankel_vectors = lambda_tilde(N).transpose() * sol.controls;
  return sol;
}

AtomicMeasure solve_truncated(const MomentSequence& s, int N, double tol) {
  const GeneralizedEigenSolution sol = solve_generalized(s, N, tol);
  const ResponseVector r = moments_to_response(s, N);

  AtomicMeasure mu;
  mu.atoms.reserve(N);
  for (int k = 0; k < N; ++k) {
    double alpha = 0.0;
    for (int t = 0; t < N; ++t) alpha += r[N - 1 - t] * sol.controls(t, k);
    mu.atoms.push_back({sol.eigenvalues(k), alpha * alpha});
  }

  // the measure has to reproduce the moments it was built from
  const int checked = std::min<int>(int(s.size()), 2 * N - 1);
  const MomentSequence window(s.begin(), s.begin() + checked);
  const ResidualReport rep = verify_measure(mu, window);
  double scale = 1.0;
  for (double v : window) scale = std::max(scale, std::abs(v));
  if (rep.max_residual > tol * scale)
    throw ResidualTooLarge("solve_truncated: moment residual " +
                               std::to_string(rep.max_residual) + " exceeds " +
                               std::to_string(tol * scale),
                           rep.max_residual);
  return mu;
}

GeneralizedEigenSolution variational_solve(const MomentSequence& s, int N, double tol) {
  if (N < 2) throw Error("variational_solve: order must be >= 2");
  if (int(s.size()) < 2 * N - 1)
    throw InsufficientMoments("variational_solve: order " + std::to_string(N) +
                              " needs " + std::to_string(2 * N - 1) + " moments");
  const Eigen::MatrixXd Lt = lambda_tilde(N);
  const Eigen::MatrixXd C = Lt * hankel(s, N, 0) * Lt.transpose();

  // (Df)_t = f_{t+1} + f_{t-1} on F^N
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  for (int t = 0; t < N; ++t) {
    if (t + 1 < N) D(t, t + 1) = 1.0;
    if (t - 1 >= 0) D(t, t - 1) = 1.0;
  }
  // restriction to F^N_0 = {f_0 = 0}, coordinates f_1..f_{N-1}
  const int n = N - 1;
  const Eigen::MatrixXd Q0 = C.bottomRightCorner(n, n);
  const Eigen::MatrixXd CD = C * D;
  const Eigen::MatrixXd Q1full = 0.5 * (CD + CD.transpose());
  const Eigen::MatrixXd Q1 = Q1full.bottomRightCorner(n, n);

  const auto chol = cholesky_thresholded<double>(Q0, tol);
  if (!chol.ok())
    throw NotPositiveDefinite("variational_solve: restricted connecting form not "
                              "positive definite", chol.failed_at + 1);
  const auto L = chol.L.triangularView<Eigen::Lower>();
  const Eigen::MatrixXd Y = L.solve(Q1);
  Eigen::MatrixXd M = L.solve(Y.transpose()).transpose();
  M = 0.5 * (M + M.transpose()).eval();

  // Successive Rayleigh-quotient minimization with deflation: power steps
  // toward the smallest eigenvalue in the deflated subspace, then shifted
  // inverse-iteration polish.
  const double shift_c = M.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  Eigen::MatrixXd Z(n, n);
  Eigen::VectorXd vals(n);
  std::mt19937_64 gen(0x5eedULL);
  auto unit_random = [&gen](int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i)
      v(i) = 2.0 * (double(gen() >> 11) * 0x1.0p-53) - 1.0;
    return v.normalized();
  };
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd z = unit_random(n);
    auto deflate = [&](Eigen::VectorXd& v) {
      for (int j = 0; j < k; ++j) v -= Z.col(j).dot(v) * Z.col(j);
    };
    deflate(z);
    z.normalize();
    for (int it = 0; it < 60; ++it) {  // minimization phase
      z = shift_c * z - M * z;
      deflate(z);
      const double nz = z.norm();
      if (nz < 1e-280) { z = unit_random(n); deflate(z); z.normalize(); continue; }
      z /= nz;
    }
    double sigma = z.dot(M * z);
    for (int it = 0; it < 60; ++it) {  // polish
      Eigen::MatrixXd Ms = M - (sigma - 1e-14 * std::max(1.0, std::abs(sigma))) *
                                   Eigen::MatrixXd::Identity(n, n);
      Eigen::VectorXd y = Ms.partialPivLu().solve(z);
      deflate(y);
      const double ny = y.norm();
      if (!(ny > 0.0) || !std::isfinite(ny)) break;
      y /= ny;
      const double next = y.dot(M * y);
      z = y;
      if (std::abs(next - sigma) <= 1e-15 * std::max(1.0, std::abs(next))) {
        sigma = next;
        break;
      }
      sigma = next;
    }
    deflate(z);
    z.normalize();
    Z.col(k) = z;
    vals(k) = z.dot(M * z);
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return vals(i) < vals(j); });

  GeneralizedEigenSolution sol;
  sol.order = n;
  sol.eigenvalues.resize(n);
  sol.controls.resize(n, n);
  for (int c = 0; c < n; ++c) {
    sol.eigenvalues(c) = vals(idx[c]);
    // back to F^N_0 coordinates; f_1..f_{N-1} are the order-(N-1) control
    // delayed by one time step
    sol.controls.col(c) =
        chol.L.transpose().triangularView<Eigen::Upper>().solve(Z.col(idx[c]));
  }
  sol.hankel_vectors = lambda_tilde(n).transpose() * sol.controls;
  return sol;
}

JacobiMatrix recover_jacobi(const MomentSequence& s, int N, double tol) {
  if (N < 1) throw Error("recover_jacobi: order must be >= 1");
  if (int(s.size()) < 2 * N)
    throw InsufficientMoments("recover_jacobi: order " + std::to_string(N) +
                              " needs " + std::to_string(2 * N) + " moments");
  const ResponseVector r = moments_to_response(s, 2 * N);

  // reversed connecting matrix: cbar_{ij} = sum_{m<min(i,j)} r_{|i-j|+2m};
  // its leading blocks are the J_K C^K J_K for every K at once
  auto cbar = [&r](int i, int j) {
    double acc = 0.0;
    for (int m = 0; m < std::min(i, j); ++m) acc += r[std::abs(i - j) + 2 * m];
    return acc;
  };
  Eigen::MatrixXd Cb(N, N);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) Cb(i - 1, j - 1) = cbar(i, j);

  const auto chol = cholesky_thresholded<double>(Cb, tol);
  if (!chol.ok()) {
    if (chol.indefinite)
      throw NotPositiveDefinite("recover_jacobi: reversed connecting matrix not positive "
                                "definite at order " + std::to_string(chol.failed_at + 1),
                                chol.failed_at + 1);
    throw DegenerateProblem("recover_jacobi: reversed connecting matrix singular; "
                            "largest usable order is " + std::to_string(chol.rank_completed()),
                            chol.rank_completed());
  }

  // a_k = sqrt(det Cb^{k+1} det Cb^{k-1}) / det Cb^k collapses to a pivot ratio
  std::vector<double> a(N - 1);
  for (int k = 1; k < N; ++k) a[k - 1] = chol.L(k, k) / chol.L(k - 1, k - 1);

  // b_k = (Cb^k)^{-1} v^{(k)} last component, differenced; v^{(k)}_i = cbar_{i,k+1}.
  // Cramer turns the modified-last-column determinant into one block solve.
  std::vector<double> b(N);
  double prev = 0.0;
  for (int k = 1; k <= N; ++k) {
    Eigen::VectorXd v(k);
    for (int i = 1; i <= k; ++i) v(i - 1) = cbar(i, k + 1);
    const Eigen::VectorXd xi = cholesky_block_solve(chol, v, k);
    b[k - 1] = xi(k - 1) - prev;
    prev = xi(k - 1);
  }
  return JacobiMatrix(std::move(a), std::move(b));
}

Control krein_solve(const Eigen::MatrixXd& C, const ResponseVector& r, double lambda,
                    double alpha, double beta) {
  const int T = int(C.rows());
  if (T < 1 || C.cols() != T) throw Error("krein_solve: connecting matrix must be square");
  if (int(r.size()) < T - 1)
    throw InsufficientResponse("krein_solve: response kernel too short");
  const std::vector<double> kappa = kappa_vector(T, lambda);

  Eigen::VectorXd rhs(T);
  for (int t = 0; t < T; ++t) rhs(t) = beta * kappa[t];
  // (R~* kappa)_s = sum_{t>s} r_{t-1-s} kappa_t: adjoint of the response
  // sampled on times 0..T-1
  for (int sdx = 0; sdx < T; ++sdx) {
    double acc = 0.0;
    for (int t = sdx + 1; t < T; ++t) acc += r[t - 1 - sdx] * kappa[t];
    rhs(sdx) -= alpha * acc;
  }

  const auto chol = cholesky_thresholded<double>(C, kDefaultTol);
  if (!chol.ok()) throw SingularSystem("krein_solve: connecting matrix is singular");
  const Eigen::VectorXd f = cholesky_solve(chol, rhs);
  return Control(f.data(), f.data() + T);
}

Control krein_special_state(const Eigen::MatrixXd& C, double leading, int T) {
  if (int(C.rows()) != T || int(C.cols()) != T)
    throw Error("krein_special_state: connecting matrix must be T x T");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(T);
  rhs(0) = leading;
  const auto chol = cholesky_thresholded<double>(C, kDefaultTol);
  if (!chol.ok()) throw SingularSystem("krein_special_state: connecting matrix is singular");
  const Eigen::VectorXd h = cholesky_solve(chol, rhs);
  return Control(h.data(), h.data() + T);
}

ResidualReport verify_measure(const AtomicMeasure& mu, const MomentSequence& s) {
  ResidualReport rep;
  rep.per_moment.resize(s.size(), 0.0);
  std::vector<double> powers(mu.atoms.size(), 1.0);
  for (size_t j = 0; j < s.size(); ++j) {
    double acc = 0.0;
    for (size_t k = 0; k < mu.atoms.size(); ++k) {
      acc += mu.atoms[k].weight * powers[k];
      powers[k] *= mu.atoms[k].position;
    }
    rep.per_moment[j] = std::abs(acc - s[j]);
    rep.max_residual = std::max(rep.max_residual, rep.per_moment[j]);
  }
  return rep;
}

}  // namespace momentbc
