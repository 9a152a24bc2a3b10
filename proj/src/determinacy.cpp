#include "momentbc/determinacy.hpp"

#include <cmath>

#include "momentbc/chebyshev.hpp"
#include "momentbc/errors.hpp"
#include "momentbc/linalg.hpp"

namespace momentbc {

namespace {

using LongMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LongVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

// The indicator quadratic forms run through (C^T)^{-1} whose conditioning
// deteriorates exponentially in T for growing response kernels; extended
// precision pushes the usable horizon out a few steps.
LongMat connecting_long(const ResponseVector& r, int T) {
  LongMat C(T, T);
  for (int i = 1; i <= T; ++i) {
    for (int j = i; j <= T; ++j) {
      long double acc = 0.0L;
      for (int k = 0; k <= T - j; ++k) acc += (long double)r[j - i + 2 * k];
      C(i - 1, j - 1) = acc;
      C(j - 1, i - 1) = acc;
    }
  }
  return C;
}

LongVec gamma_long(int T) {
  const auto go = gamma_omega_vectors(T);
  LongVec g(T);
  for (int i = 0; i < T; ++i) g(i) = (long double)go.first[i];
  return g;
}

LongVec omega_long(int T) {
  const auto go = gamma_omega_vectors(T);
  LongVec w(T);
  for (int i = 0; i < T; ++i) w(i) = (long double)go.second[i];
  return w;
}

// adjoint of the delayed response operator applied to a vector
LongVec delayed_adjoint(const ResponseVector& r, const LongVec& v) {
  const int T = int(v.size());
  LongVec out = LongVec::Zero(T);
  for (int s = 0; s < T; ++s) {
    long double acc = 0.0L;
    for (int t = s + 1; t < T; ++t) acc += (long double)r[t - 1 - s] * v(t);
    out(s) = acc;
  }
  return out;
}

}  // namespace

PhiXi phi_xi_at(const JacobiMatrix& J, double lambda) {
  const int N = J.size();
  PhiXi out;
  out.phi.assign(N + 2, 0.0);
  out.xi.assign(N + 2, 0.0);
  out.phi[0] = 0.0;
  out.phi[1] = 1.0;
  out.xi[0] = -1.0;
  out.xi[1] = 0.0;
  for (int k = 1; k <= N; ++k) {
    const double ak = (k < N) ? J.a[k - 1] : 1.0;  // terminal convention
    const double akm1 = J.a_at(k - 1);
    const double c = lambda - J.b[k - 1];
    out.phi[k + 1] = (c * out.phi[k] - akm1 * out.phi[k - 1]) / ak;
    out.xi[k + 1] = (c * out.xi[k] - akm1 * out.xi[k - 1]) / ak;
  }
  return out;
}

HamburgerIndicators hamburger_indicators_from_response(const ResponseVector& r, int T_max) {
  if (T_max < 1) throw Error("hamburger_indicators: T_max must be >= 1");
  if (int(r.size()) < 2 * T_max - 1)
    throw InsufficientResponse("hamburger_indicators: horizon " + std::to_string(T_max) +
                               " needs " + std::to_string(2 * T_max - 1) +
                               " response entries");
  HamburgerIndicators out;
  out.gamma_form.truncated_at = T_max + 1;
  out.omega_form.truncated_at = T_max + 1;
  for (int T = 1; T <= T_max; ++T) {
    const LongMat C = connecting_long(r, T);
    const auto chol = cholesky_thresholded<long double>(C, kDefaultTol);
    if (!chol.ok()) {
      out.gamma_form.truncated_at = T;
      out.omega_form.truncated_at = T;
      break;
    }
    const LongVec g = gamma_long(T);
    const LongVec w = omega_long(T);
    out.gamma_form.values.push_back(double(g.dot(cholesky_solve(chol, g))));
    out.omega_form.values.push_back(double(w.dot(cholesky_solve(chol, w))));
  }
  return out;
}

HamburgerIndicators hamburger_indicators(const MomentSequence& s, int T_max) {
  if (T_max < 1) throw Error("hamburger_indicators: T_max must be >= 1");
  if (int(s.size()) < 2 * T_max - 1)
    throw InsufficientMoments("hamburger_indicators: horizon " + std::to_string(T_max) +
                              " needs " + std::to_string(2 * T_max - 1) + " moments");
  return hamburger_indicators_from_response(moments_to_response(s, 2 * T_max - 1), T_max);
}

StringParameters string_from_jacobi(const JacobiMatrix& J) {
  const int N = J.size();
  const PhiXi v = phi_xi_at(J, 0.0);
  StringParameters sp;
  sp.mass.resize(N);
  sp.length.resize(N);
  double L_prev = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double phin = v.phi[n];
    if (phin == 0.0)
      throw DegenerateString("string_from_jacobi: phi_" + std::to_string(n) +
                             "(0) vanishes (zero is an eigenvalue of a principal block)");
    sp.mass[n - 1] = phin * phin;
    const double phin1 = v.phi[n + 1];
    if (phin1 == 0.0)
      throw DegenerateString("string_from_jacobi: phi_" + std::to_string(n + 1) +
                             "(0) vanishes");
    const double L_n = -v.xi[n + 1] / phin1;
    const double l_n = L_n - L_prev;
    if (!(l_n > 0.0))
      throw DegenerateString("string_from_jacobi: nonpositive length l_" +
                             std::to_string(n));
    sp.length[n - 1] = l_n;
    L_prev = L_n;
  }
  return sp;
}

JacobiMatrix jacobi_from_string(const StringParameters& sp) {
  const int K = int(sp.mass.size());
  if (K < 1 || int(sp.length.size()) != K)
    throw Error("jacobi_from_string: need equally many masses and lengths");
  for (int i = 0; i < K; ++i)
    if (!(sp.mass[i] > 0.0) || !(sp.length[i] > 0.0))
      throw DegenerateString("jacobi_from_string: masses and lengths must be positive");
  if (std::abs(sp.mass[0] - 1.0) > 1e-12)
    throw Error("jacobi_from_string: m_1 must be 1 under the a_0 = 1 convention");
  std::vector<double> b(K), a(K - 1);
  b[0] = 1.0 / (sp.mass[0] * sp.length[0]);
  for (int i = 2; i <= K; ++i)
    b[i - 1] =
        (1.0 / sp.mass[i - 1]) * (1.0 / sp.length[i - 2] + 1.0 / sp.length[i - 1]);
  for (int i = 1; i < K; ++i)
    a[i - 1] = 1.0 / (sp.length[i - 1] *
                              std::sqrt(sp.mass[i - 1] * sp.mass[i]));
  return JacobiMatrix(std::move(a), std::move(b));
}

StieltjesIndicators stieltjes_indicators_from_response(const ResponseVector& r, int T_max) {
  if (T_max < 1) throw Error("stieltjes_indicators: T_max must be >= 1");
  if (int(r.size()) < 2 * T_max - 1)
    throw InsufficientResponse("stieltjes_indicators: horizon " + std::to_string(T_max) +
                               " needs at least " + std::to_string(2 * T_max - 1) +
                               " response entries");
  StieltjesIndicators out;
  out.mass.truncated_at = T_max + 1;
  out.length.truncated_at = T_max + 1;
  for (int T = 1; T <= T_max; ++T) {
    const LongMat C = connecting_long(r, T);
    const auto chol = cholesky_thresholded<long double>(C, kDefaultTol);
    if (!chol.ok()) {
      out.mass.truncated_at = std::min(out.mass.truncated_at, T);
      out.length.truncated_at = std::min(out.length.truncated_at, T);
      break;
    }
    const LongVec g = gamma_long(T);
    out.mass.values.push_back(double(g.dot(cholesky_solve(chol, g))));

    // cumulative length L_T through the order-(T+1) Krein formula
    if (int(r.size()) >= 2 * (T + 1) - 1) {
      const LongMat C1 = connecting_long(r, T + 1);
      const auto chol1 = cholesky_thresholded<long double>(C1, kDefaultTol);
      if (chol1.ok()) {
        const LongVec g1 = gamma_long(T + 1);
        const LongVec x = cholesky_solve(chol1, g1);
        const LongVec y = cholesky_solve(chol1, delayed_adjoint(r, g1));
        if (x(0) != 0.0L)
          out.length.values.push_back(double(-y(0) / x(0)));
        else if (out.length.truncated_at > T)
          out.length.truncated_at = T;
      } else if (out.length.truncated_at > T) {
        out.length.truncated_at = T;
      }
    } else if (out.length.truncated_at > T) {
      out.length.truncated_at = T;
    }
  }
  return out;
}

StieltjesIndicators stieltjes_indicators(const MomentSequence& s, int T_max) {
  if (T_max < 1) throw Error("stieltjes_indicators: T_max must be >= 1");
  if (int(s.size()) < 2 * T_max - 1)
    throw InsufficientMoments("stieltjes_indicators: horizon " + std::to_string(T_max) +
                              " needs at least " + std::to_string(2 * T_max - 1) +
                              " moments");
  const int n = std::min<int>(int(s.size()), 2 * T_max + 1);
  return stieltjes_indicators_from_response(moments_to_response(s, n), T_max);
}

HausdorffVerdict hausdorff_determinacy(const MomentSequence& s, int N, double tol) {
  if (N < 1) throw Error("hausdorff_determinacy: order must be >= 1");
  if (int(s.size()) < 2 * N)
    throw InsufficientMoments("hausdorff_determinacy: order " + std::to_string(N) +
                              " needs " + std::to_string(2 * N) + " moments");
  HausdorffVerdict verdict;
  for (int K = 1; K <= N; ++K) {
    const Classification c = classify(s, K, tol);
    if (!c.hausdorff) {
      verdict.determinate = false;
      verdict.failing_order = K;
      return verdict;
    }
    verdict.eigenvalue_sums.push_back(solve_generalized(s, K, tol).eigenvalues.sum());
  }
  verdict.determinate = true;
  return verdict;
}

double fitted_slope(const std::vector<double>& values, int T_lo, int T_hi) {
  T_lo = std::max(T_lo, 1);
  T_hi = std::min<int>(T_hi, int(values.size()));
  if (T_hi <= T_lo) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = T_hi - T_lo + 1;
  for (int T = T_lo; T <= T_hi; ++T) {
    sx += T;
    sy += values[T - 1];
    sxx += double(T) * T;
    sxy += double(T) * values[T - 1];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GrowthTrend fit_growth(const IndicatorTrace& trace, double slope_threshold) {
  GrowthTrend g;
  const int T_hi = trace.usable();
  const int T_lo = std::max(1, T_hi / 2);
  g.slope = fitted_slope(trace.values, T_lo, T_hi);
  g.bounded = std::abs(g.slope) < slope_threshold;
  return g;
}

}  // namespace momentbc
