#include "momentbc/dynsys.hpp"

#include <cmath>

#include "momentbc/errors.hpp"

namespace momentbc {

JacobiMatrix::JacobiMatrix(std::vector<double> offdiag, std::vector<double> diag)
    : a(std::move(offdiag)), b(std::move(diag)) {
  if (b.empty()) throw Error("JacobiMatrix: empty diagonal");
  if (a.size() + 1 != b.size())
    throw Error("JacobiMatrix: off-diagonal must have size N-1");
  for (double ak : a)
    if (!(ak > 0.0)) throw Error("JacobiMatrix: off-diagonal entries must be positive");
  for (double bk : b)
    if (!std::isfinite(bk)) throw Error("JacobiMatrix: diagonal entries must be finite");
}

namespace {

Wavefield run_simulation(const std::vector<double>& a_ext,
                         const std::vector<double>& b_ext, int N,
                         const Control& f, int T) {
  // a_ext[k] = a_k for k = 0..N-1 (a_ext[0] = 1); b_ext[n-1] = b_n.
  Wavefield w;
  w.N = N;
  w.T = T;
  w.grid = Eigen::MatrixXd::Zero(N + 2, T + 2);
  for (int t = 0; t < T && t < int(f.size()); ++t) w.grid(0, t + 1) = f[t];
  for (int t = 0; t < T; ++t) {
    const auto cur = w.grid.col(t + 1);
    const auto prev = w.grid.col(t);
    auto next = w.grid.col(t + 2);
    for (int n = 1; n <= N; ++n) {
      const double up = (n < N) ? a_ext[n] * cur(n + 1) : 0.0;  // Dirichlet cap
      next(n) = up + a_ext[n - 1] * cur(n - 1) + b_ext[n - 1] * cur(n) - prev(n);
    }
  }
  return w;
}

}  // namespace

Wavefield simulate_finite(const JacobiMatrix& J, const Control& f, int T) {
  if (T < 1) throw Error("simulate_finite: horizon must be >= 1");
  if (int(f.size()) > T) throw Error("simulate_finite: control longer than horizon");
  const int N = J.size();
  std::vector<double> a_ext(N);
  a_ext[0] = 1.0;
  for (int k = 1; k < N; ++k) a_ext[k] = J.a[k - 1];
  return run_simulation(a_ext, J.b, N, f, T);
}

Wavefield simulate_semi_infinite(const JacobiMatrix& J, const Control& f, int T) {
  if (T < 1) throw Error("simulate_semi_infinite: horizon must be >= 1");
  if (int(f.size()) > T) throw Error("simulate_semi_infinite: control longer than horizon");
  if (J.size() < T)
    throw SizeTooSmall("simulate_semi_infinite: need " + std::to_string(T) +
                       " rows, matrix has " + std::to_string(J.size()));
  std::vector<double> a_ext(T);
  a_ext[0] = 1.0;
  for (int k = 1; k < T; ++k) a_ext[k] = J.a[k - 1];
  std::vector<double> b_trunc(J.b.begin(), J.b.begin() + T);
  return run_simulation(a_ext, b_trunc, T, f, T);
}

ResponseVector response_vector(const JacobiMatrix& J, int T) {
  if (T < 1) throw Error("response_vector: horizon must be >= 1");
  const Wavefield w = simulate_finite(J, Control{1.0}, T);
  ResponseVector r(T);
  for (int t = 1; t <= T; ++t) r[t - 1] = w.at(1, t);
  return r;
}

std::vector<double> response_apply(const ResponseVector& r, const Control& f) {
  const int T = int(f.size());
  if (int(r.size()) < T)
    throw InsufficientResponse("response_apply: kernel shorter than control");
  std::vector<double> out(T, 0.0);
  for (int t = 1; t <= T; ++t) {
    double acc = 0.0;
    for (int s = 0; s <= t - 1; ++s) acc += r[t - 1 - s] * f[s];
    out[t - 1] = acc;
  }
  return out;
}

std::vector<double> response_adjoint_apply(const ResponseVector& r,
                                           const std::vector<double>& g) {
  const int T = int(g.size());
  if (int(r.size()) < T)
    throw InsufficientResponse("response_adjoint_apply: kernel shorter than input");
  std::vector<double> out(T, 0.0);
  for (int s = 0; s < T; ++s) {
    double acc = 0.0;
    for (int u = s; u < T; ++u) acc += r[u - s] * g[u];
    out[s] = acc;
  }
  return out;
}

Eigen::MatrixXd control_matrix(const JacobiMatrix& J, int T) {
  if (J.size() < T)
    throw SizeTooSmall("control_matrix: need T <= N, got T = " + std::to_string(T) +
                       ", N = " + std::to_string(J.size()));
  Eigen::MatrixXd W(T, T);
  for (int j = 0; j < T; ++j) {
    Control f(T, 0.0);
    f[j] = 1.0;
    const Wavefield w = simulate_semi_infinite(J, f, T);
    W.col(j) = w.state(T);
  }
  return W;
}

Eigen::MatrixXd connecting_from_response(const ResponseVector& r, int T) {
  if (T < 1) throw Error("connecting_from_response: order must be >= 1");
  if (int(r.size()) < 2 * T - 1)
    throw InsufficientResponse("connecting_from_response: order " + std::to_string(T) +
                               " needs " + std::to_string(2 * T - 1) + " entries");
  Eigen::MatrixXd C(T, T);
  for (int i = 1; i <= T; ++i) {
    for (int j = i; j <= T; ++j) {
      double acc = 0.0;
      for (int k = 0; k <= T - j; ++k) acc += r[j - i + 2 * k];
      C(i - 1, j - 1) = acc;
      C(j - 1, i - 1) = acc;
    }
  }
  return C;
}

Eigen::MatrixXd connecting_from_gram(const JacobiMatrix& J, int T) {
  const Eigen::MatrixXd W = control_matrix(J, T);
  return W.transpose() * W;
}

}  // namespace momentbc
