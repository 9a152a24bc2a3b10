#ifndef MOMENTBC_DETERMINACY_HPP
#define MOMENTBC_DETERMINACY_HPP

#include <vector>

#include "momentbc/bc_solver.hpp"
#include "momentbc/dynsys.hpp"

namespace momentbc {

// Solutions of a_k y_{k+1} + a_{k-1} y_{k-1} + b_k y_k = lambda y_k with
// Cauchy data phi: (0,1), xi: (-1,0); indices 0..N+1.  The terminal step
// uses a_N = 1; only ratios and zeros of index N+1 are meaningful, and
// those do not depend on that convention.
struct PhiXi {
  std::vector<double> phi;
  std::vector<double> xi;
};

PhiXi phi_xi_at(const JacobiMatrix& J, double lambda);

// One monitored quadratic form per horizon T = 1..T_max.  values[T-1] is
// present for T < truncated_at; truncated_at is T_max+1 when the whole
// trace was computed, otherwise the first horizon whose connecting matrix
// failed to factor.
struct IndicatorTrace {
  std::vector<double> values;
  int truncated_at = 0;

  int usable() const { return int(values.size()); }
};

struct HamburgerIndicators {
  IndicatorTrace gamma_form;  // ((C^T)^{-1} Gamma_T, Gamma_T) = sum phi_k(0)^2
  IndicatorTrace omega_form;  // ((C^T)^{-1} Omega_T, Omega_T) = sum phi_k'(0)^2
};

// Bounded traces indicate indeterminacy, growth indicates determinacy.
// Finite-horizon indicators only; never a proof.
HamburgerIndicators hamburger_indicators_from_response(const ResponseVector& r, int T_max);
// Moment-based entry point; needs 2 T_max - 1 moments.  Converting huge
// moments to the response kernel cancels catastrophically, so prefer the
// response-based routine when the dynamic data is available.
HamburgerIndicators hamburger_indicators(const MomentSequence& s, int T_max);

// Krein string masses and interval lengths hiding inside a Stieltjes-class
// Jacobi matrix: m_n = phi_n(0)^2, cumulative length L_K = -xi_{K+1}(0)/phi_{K+1}(0).
struct StringParameters {
  std::vector<double> mass;
  std::vector<double> length;
};

StringParameters string_from_jacobi(const JacobiMatrix& J);

// Inverse assembly: b_1 = 1/(m_1 l_1), b_i = (1/m_i)(1/l_{i-1} + 1/l_i),
// a_i = 1/(l_i sqrt(m_i m_{i+1})).  Requires m_1 = 1 (the a_0 = 1 gauge).
JacobiMatrix jacobi_from_string(const StringParameters& sp);

struct StieltjesIndicators {
  IndicatorTrace mass;    // M_T = ((C^T)^{-1} Gamma_T, Gamma_T)
  IndicatorTrace length;  // L_T = -((C^{T+1})^{-1} R~* Gamma_{T+1}, e_1)
                          //       / ((C^{T+1})^{-1} Gamma_{T+1}, e_1)
};

StieltjesIndicators stieltjes_indicators_from_response(const ResponseVector& r, int T_max);
// Needs 2 T_max + 1 moments for the full length trace.
StieltjesIndicators stieltjes_indicators(const MomentSequence& s, int T_max);

struct HausdorffVerdict {
  bool determinate = false;
  int failing_order = 0;                  // first K with hausdorff false; 0 if none
  std::vector<double> eigenvalue_sums;    // tr A^K = sum lambda_k^K per checked K
};

// Determinate when the Hausdorff criterion holds at every order K = 1..N;
// the eigenvalue sums support the trace argument (tr A^K <= K when all
// eigenvalues sit in (0,1)).
HausdorffVerdict hausdorff_determinacy(const MomentSequence& s, int N,
                                       double tol = kDefaultTol);

// Least-squares slope of values[T-1] against T over T in [T_lo, T_hi].
double fitted_slope(const std::vector<double>& values, int T_lo, int T_hi);

// Trend label per the finite-horizon heuristic: slope below the threshold
// over the upper half-window flags a bounded (indeterminate-type) trace.
struct GrowthTrend {
  double slope = 0.0;
  bool bounded = false;
};

GrowthTrend fit_growth(const IndicatorTrace& trace, double slope_threshold = 0.05);

}  // namespace momentbc

#endif
