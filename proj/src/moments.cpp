#include "momentbc/moments.hpp"

#include <cmath>
#include <limits>

#include "momentbc/errors.hpp"
#include "momentbc/linalg.hpp"

namespace momentbc {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * double(n - k + i) / double(i);
  return std::round(v);
}

}  // namespace

Eigen::MatrixXd hankel(const MomentSequence& s, int N, int m) {
  if (N < 1) throw Error("hankel: order must be >= 1");
  if (m < 0) throw Error("hankel: shift must be >= 0");
  if (int(s.size()) < 2 * N - 1 + m)
    throw InsufficientMoments("hankel: order " + std::to_string(N) + " shift " +
                              std::to_string(m) + " needs " +
                              std::to_string(2 * N - 1 + m) + " moments, got " +
                              std::to_string(s.size()));
  Eigen::MatrixXd A(N, N);
  for (int p = 1; p <= N; ++p)
    for (int q = 1; q <= N; ++q) A(p - 1, q - 1) = s[2 * N - p - q + m];
  return A;
}

double difference(const MomentSequence& s, int k, int n) {
  if (k < 0 || n < 0) throw Error("difference: negative order or offset");
  if (k + n >= int(s.size()))
    throw InsufficientMoments("difference: (k,n)=(" + std::to_string(k) + "," +
                              std::to_string(n) + ") needs s_" +
                              std::to_string(k + n));
  double acc = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double term = binomial(k, i) * s[n + k - i];
    acc += (i % 2 == 0) ? term : -term;
  }
  return acc;
}

MonotonicityReport is_completely_monotone(const MomentSequence& s, double tol) {
  MonotonicityReport rep{true};
  const int len = int(s.size());
  for (int k = 0; k < len; ++k) {
    for (int n = 0; k + n < len; ++n) {
      double v = difference(s, k, n);
      if (k % 2 == 1) v = -v;
      if (v < -tol) {
        rep.monotone = false;
        rep.k = k;
        rep.n = n;
        rep.value = v;
        return rep;
      }
    }
  }
  return rep;
}

MomentSequence signed_binomial_transform(const MomentSequence& s) {
  const int len = int(s.size());
  MomentSequence c(len, 0.0);
  for (int n = 0; n < len; ++n) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double term = binomial(n, k) * s[k];
      acc += (k % 2 == 0) ? term : -term;
    }
    c[n] = acc;
  }
  return c;
}

Classification classify(const MomentSequence& s, int N, double tol) {
  if (N < 1) throw Error("classify: order must be >= 1");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Classification c;
  c.order = N;
  c.min_eig_s1 = nan;
  c.min_eig_diff = nan;

  const Eigen::MatrixXd S0 = hankel(s, N, 0);  // throws if < 2N-1 moments
  c.min_eig_s0 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S0)
                     .eigenvalues()
                     .minCoeff();
  c.hamburger = cholesky_thresholded<double>(S0, tol).ok();

  const bool have_s1 = int(s.size()) >= 2 * N;
  if (!have_s1) {
    if (c.hamburger)
      throw InsufficientMoments("classify: order " + std::to_string(N) +
                                " needs s_" + std::to_string(2 * N - 1) +
                                " to evaluate the Stieltjes/Hausdorff criteria");
    return c;  // nested criteria are all false with hamburger
  }

  const Eigen::MatrixXd S1 = hankel(s, N, 1);
  c.min_eig_s1 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S1)
                     .eigenvalues()
                     .minCoeff();
  const Eigen::MatrixXd D = S0 - S1;
  c.min_eig_diff = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(D)
                       .eigenvalues()
                       .minCoeff();
  if (!c.hamburger) return c;

  c.stieltjes = cholesky_thresholded<double>(S1, tol).ok();
  if (!c.stieltjes) return c;

  const double scale = double(N) * D.cwiseAbs().maxCoeff();
  c.hausdorff = c.min_eig_diff >= -tol * std::max(scale, 1e-300);
  return c;
}

int max_feasible_order(const MomentSequence& s, double tol) {
  int best = 0;
  for (int N = 1; 2 * N - 1 <= int(s.size()); ++N) {
    const Eigen::MatrixXd S0 = hankel(s, N, 0);
    if (!cholesky_thresholded<double>(S0, tol).ok()) break;
    best = N;
  }
  return best;
}

}  // namespace momentbc
