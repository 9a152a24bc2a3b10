#include "momentbc/chebyshev.hpp"

#include <cmath>

#include "momentbc/errors.hpp"

namespace momentbc {

double cheb_eval(int t, double lambda) {
  if (t < 0) throw Error("cheb_eval: negative index");
  double prev = 0.0;  // T_0
  double cur = 1.0;   // T_1
  if (t == 0) return prev;
  for (int k = 1; k < t; ++k) {
    const double next = lambda * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double cheb_eval_deriv(int t, double lambda) {
  if (t < 0) throw Error("cheb_eval_deriv: negative index");
  if (t <= 1) return 0.0;
  double p = 0.0, c = 1.0;    // T_{k-1}, T_k
  double dp = 0.0, dc = 0.0;  // T'_{k-1}, T'_k
  for (int k = 1; k < t; ++k) {
    const double n = lambda * c - p;
    const double dn = c + lambda * dc - dp;
    p = c;
    c = n;
    dp = dc;
    dc = dn;
  }
  return dc;
}

std::pair<std::vector<double>, std::vector<double>> gamma_omega_vectors(int T) {
  if (T < 1) throw Error("gamma_omega_vectors: T must be >= 1");
  std::vector<double> gamma(T), omega(T);
  for (int i = 0; i < T; ++i) {
    const int t = T - i;  // component i holds T_t(0), T_t'(0)
    if (t % 2 == 1) {
      const int n = (t + 1) / 2;
      gamma[i] = (n % 2 == 1) ? 1.0 : -1.0;
      omega[i] = 0.0;
    } else {
      const int n = t / 2;
      gamma[i] = 0.0;
      omega[i] = ((n % 2 == 1) ? 1.0 : -1.0) * double(n);
    }
  }
  return {gamma, omega};
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  // exact in double for every coefficient this library needs
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * double(n - k + i) / double(i);
  return std::round(v);
}

}  // namespace

Eigen::MatrixXd lambda_matrix(int n) {
  if (n < 1) throw Error("lambda_matrix: n must be >= 1");
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= i; ++j) {
      if ((i + j) % 2 != 0) continue;
      const int half = (i - j) / 2;
      const double sign = (half % 2 == 0) ? 1.0 : -1.0;
      L(i - 1, j - 1) = sign * binomial((i + j) / 2 - 1, j - 1);
    }
  }
  return L;
}

ResponseVector moments_to_response(const MomentSequence& s, int n) {
  if (int(s.size()) < n)
    throw InsufficientMoments("moments_to_response: need at least " +
                              std::to_string(n) + " moments");
  const Eigen::MatrixXd L = lambda_matrix(n);
  ResponseVector r(n, 0.0);
  for (int t = 1; t <= n; ++t) {
    double acc = 0.0;
    for (int j = t % 2 == 0 ? 2 : 1; j <= t; j += 2) acc += L(t - 1, j - 1) * s[j - 1];
    r[t - 1] = acc;
  }
  return r;
}

MomentSequence response_to_moments(const ResponseVector& r, int n) {
  if (int(r.size()) < n)
    throw InsufficientResponse("response_to_moments: need at least " +
                               std::to_string(n) + " response entries");
  const Eigen::MatrixXd L = lambda_matrix(n);
  MomentSequence s(n, 0.0);
  for (int t = 1; t <= n; ++t) {
    double acc = r[t - 1];
    for (int j = 1; j < t; ++j) acc -= L(t - 1, j - 1) * s[j - 1];
    s[t - 1] = acc;  // L(t,t) = 1
  }
  return s;
}

std::vector<double> kappa_vector(int T, double lambda) {
  if (T < 1) throw Error("kappa_vector: T must be >= 1");
  std::vector<double> kappa(T);
  for (int t = 0; t < T; ++t) kappa[t] = cheb_eval(T - t, lambda);
  return kappa;
}

}  // namespace momentbc
