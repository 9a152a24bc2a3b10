#include "momentbc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "momentbc/errors.hpp"

namespace momentbc::oracle {

namespace {

// Cyclic Jacobi rotation eigensolver on a dense symmetric matrix.
// Returns ascending eigenvalues and the matching orthonormal columns.
void jacobi_eigen(std::vector<std::vector<double>>& A,
                  std::vector<std::vector<double>>& V,
                  std::vector<double>& eig) {
  const int n = int(A.size());
  V.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) V[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A[p][q] * A[p][q];
    if (off < 1e-300) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A[p][q];
        if (apq == 0.0) continue;
        const double theta = (A[q][q] - A[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = A[k][p];
          const double akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A[p][k];
          const double aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = V[k][p];
          const double vkq = V[k][q];
          V[k][p] = c * vkp - s * vkq;
          V[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  eig.resize(n);
  for (int i = 0; i < n; ++i) eig[i] = A[i][i];
  // sort ascending, permuting eigenvector columns along
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return eig[i] < eig[j]; });
  std::vector<double> eig_s(n);
  std::vector<std::vector<double>> V_s(n, std::vector<double>(n));
  for (int c = 0; c < n; ++c) {
    eig_s[c] = eig[idx[c]];
    for (int rrow = 0; rrow < n; ++rrow)
      V_s[rrow][c] = V[rrow][idx[c]];
  }
  eig = std::move(eig_s);
  V = std::move(V_s);
}

// phi recurrence values phi_1..phi_N at lambda (own implementation,
// not shared with the solver modules)
std::vector<double> phi_values(const JacobiMatrix& J, double lambda, int count) {
  std::vector<double> phi(count + 2, 0.0);  // phi[0] = phi_0, ...
  phi[1] = 1.0;
  for (int k = 1; k <= count; ++k) {
    const double ak = (k < J.size()) ? J.a[k - 1] : 1.0;
    const double akm1 = (k == 1) ? 1.0 : J.a[k - 2];
    phi[k + 1] = ((lambda - J.b[k - 1]) * phi[k] - akm1 * phi[k - 1]) / ak;
  }
  return phi;
}

}  // namespace

DirichletSpectralData dense_spectral_data(const JacobiMatrix& J) {
  const int n = J.size();
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    A[i][i] = J.b[i];
    if (i + 1 < n) {
      A[i][i + 1] = J.a[i];
      A[i + 1][i] = J.a[i];
    }
  }
  std::vector<std::vector<double>> V;
  std::vector<double> eig;
  jacobi_eigen(A, V, eig);

  DirichletSpectralData data;
  data.eigenvalues = eig;
  data.norming.resize(n);
  for (int k = 0; k < n; ++k) {
    const auto phi = phi_values(J, eig[k], n - 1);
    double rho = 0.0;
    for (int i = 1; i <= n; ++i) rho += phi[i] * phi[i];
    data.norming[k] = rho;
    // cross-check against the first component of the unit eigenvector
    const double first2 = V[0][k] * V[0][k];
    if (std::abs(first2 - 1.0 / rho) > 1e-6 * std::max(1.0, 1.0 / rho))
      throw Error("dense_spectral_data: norming constant cross-check failed");
  }
  return data;
}

AtomicMeasure spectral_measure(const DirichletSpectralData& data) {
  AtomicMeasure mu;
  mu.atoms.reserve(data.eigenvalues.size());
  for (size_t k = 0; k < data.eigenvalues.size(); ++k)
    mu.atoms.push_back({data.eigenvalues[k], 1.0 / data.norming[k]});
  return mu;
}

MomentSequence moments_from_measure(const AtomicMeasure& mu, int k_max) {
  MomentSequence s(k_max + 1, 0.0);
  for (const auto& atom : mu.atoms) {
    double power = 1.0;
    for (int j = 0; j <= k_max; ++j) {
      s[j] += atom.weight * power;
      power *= atom.position;
    }
  }
  return s;
}

std::vector<double> vandermonde_weights(const std::vector<double>& positions,
                                        const MomentSequence& s) {
  const int K = int(positions.size());
  if (K == 0) return {};
  if (int(s.size()) < K)
    throw InsufficientMoments("vandermonde_weights: need as many moments as positions");

  // V[j][k] = positions[k]^j, augmented with the rhs
  std::vector<std::vector<double>> M(K, std::vector<double>(K + 1, 0.0));
  for (int k = 0; k < K; ++k) {
    double p = 1.0;
    for (int j = 0; j < K; ++j) {
      M[j][k] = p;
      p *= positions[k];
    }
  }
  for (int j = 0; j < K; ++j) M[j][K] = s[j];

  double norm_inf = 0.0;
  for (int i = 0; i < K; ++i) {
    double row = 0.0;
    for (int j = 0; j < K; ++j) row += std::abs(M[i][j]);
    norm_inf = std::max(norm_inf, row);
  }

  // Gaussian elimination with partial pivoting
  double min_pivot = std::numeric_limits<double>::infinity();
  for (int col = 0; col < K; ++col) {
    int piv = col;
    for (int i = col + 1; i < K; ++i)
      if (std::abs(M[i][col]) > std::abs(M[piv][col])) piv = i;
    std::swap(M[col], M[piv]);
    const double d = M[col][col];
    min_pivot = std::min(min_pivot, std::abs(d));
    if (std::abs(d) < 1e-300)
      throw IllConditioned("vandermonde_weights: singular system (coincident positions)",
                           std::numeric_limits<double>::infinity());
    for (int i = col + 1; i < K; ++i) {
      const double m = M[i][col] / d;
      for (int j = col; j <= K; ++j) M[i][j] -= m * M[col][j];
    }
  }
  const double cond_estimate = norm_inf / min_pivot;
  if (cond_estimate > 1e12)
    throw IllConditioned("vandermonde_weights: condition estimate " +
                             std::to_string(cond_estimate) + " (positions nearly coincide)",
                         cond_estimate);

  std::vector<double> w(K, 0.0);
  for (int i = K - 1; i >= 0; --i) {
    double acc = M[i][K];
    for (int j = i + 1; j < K; ++j) acc -= M[i][j] * w[j];
    w[i] = acc / M[i][i];
  }
  return w;
}

std::vector<std::vector<std::int64_t>> symbolic_cheb_coefficients(int n) {
  if (n < 1 || n > 64)
    throw Error("symbolic_cheb_coefficients: n must be in 1..64");
  std::vector<std::vector<std::int64_t>> rows(n,
                                              std::vector<std::int64_t>(n, 0));
  rows[0][0] = 1;  // T_1 = 1
  if (n >= 2) rows[1][1] = 1;  // T_2 = lambda
  for (int t = 3; t <= n; ++t) {
    auto& row = rows[t - 1];
    const auto& tm1 = rows[t - 2];
    const auto& tm2 = rows[t - 3];
    for (int j = 1; j < n; ++j) row[j] = tm1[j - 1];  // lambda * T_{t-1}
    for (int j = 0; j < n; ++j) row[j] -= tm2[j];
  }
  return rows;
}

}  // namespace momentbc::oracle
