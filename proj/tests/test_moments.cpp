#include <cmath>
#include <random>

#include "doctest.h"
#include "momentbc/errors.hpp"
#include "momentbc/moments.hpp"
#include "momentbc/oracle.hpp"

using namespace momentbc;

namespace {

// standard Hankel (s_{i+j-2})_{1<=i,j<=n}, the flipped layout used by the
// binomial-transform identity
Eigen::MatrixXd standard_hankel(const MomentSequence& s, int n) {
  Eigen::MatrixXd H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = s[i + j];
  return H;
}

}  // namespace

TEST_CASE("hankel layout") {
  const MomentSequence s{1.0, 0.5, 1.0 / 3.0, 0.25};
  const Eigen::MatrixXd S0 = hankel(s, 2, 0);
  CHECK(S0(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(S0(0, 1) == doctest::Approx(0.5));
  CHECK(S0(1, 0) == doctest::Approx(0.5));
  CHECK(S0(1, 1) == doctest::Approx(1.0));

  const Eigen::MatrixXd S1 = hankel(s, 2, 1);
  CHECK(S1(0, 0) == doctest::Approx(0.25));
  CHECK(S1(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(S1(1, 1) == doctest::Approx(0.5));

  CHECK_THROWS_AS(hankel(s, 3, 0), InsufficientMoments);
}

TEST_CASE("hankel determinant of the perturbed point-mass sequence") {
  const MomentSequence s{1.0, 0.5, 0.25 - 0.01, 0.125};
  CHECK(hankel(s, 2, 0).determinant() == doctest::Approx(-0.01).epsilon(1e-12));
}

TEST_CASE("difference operator") {
  MomentSequence geo(8);
  for (int k = 0; k < 8; ++k) geo[k] = std::pow(0.5, k);
  // (Delta^k s)_n = (-1)^k (1/2)^{k+n} for the point mass at 1/2
  CHECK(difference(geo, 2, 1) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(difference(geo, 3, 0) == doctest::Approx(-0.125).epsilon(1e-12));

  const MomentSequence s{0.3, -0.7, 1.1};
  CHECK(difference(s, 0, 1) == -0.7);

  MomentSequence harmonic(4);
  for (int k = 0; k < 4; ++k) harmonic[k] = 1.0 / (k + 1);
  CHECK(difference(harmonic, 1, 0) == doctest::Approx(-0.5));

  CHECK_THROWS_AS(difference(s, 2, 1), InsufficientMoments);
}

TEST_CASE("complete monotonicity") {
  MomentSequence geo(8);
  for (int k = 0; k < 8; ++k) geo[k] = std::pow(0.5, k);
  CHECK(is_completely_monotone(geo, 1e-10).monotone);

  const auto rep = is_completely_monotone({1.0, 0.5, 0.25 - 0.3, 0.125}, 1e-10);
  CHECK_FALSE(rep.monotone);
  CHECK(rep.k == 2);
  CHECK(rep.n == 0);

  CHECK(is_completely_monotone({1.0}, 1e-10).monotone);
}

TEST_CASE("signed binomial transform") {
  const MomentSequence ones(6, 1.0);
  const MomentSequence t = signed_binomial_transform(ones);
  CHECK(t[0] == 1.0);
  for (int i = 1; i < 6; ++i) CHECK(t[i] == doctest::Approx(0.0));

  MomentSequence geo(7);
  for (int k = 0; k < 7; ++k) geo[k] = std::pow(0.5, k);
  const MomentSequence tg = signed_binomial_transform(geo);
  for (int n = 0; n < 7; ++n) CHECK(tg[n] == doctest::Approx(std::pow(0.5, n)).epsilon(1e-12));

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    MomentSequence s(1 + gen() % 12);
    for (auto& v : s) v = U(gen);
    const MomentSequence twice = signed_binomial_transform(signed_binomial_transform(s));
    for (size_t i = 0; i < s.size(); ++i) CHECK(std::abs(twice[i] - s[i]) <= 1e-9);
  }
}

TEST_CASE("classify nesting and examples") {
  MomentSequence harmonic(6);
  for (int k = 0; k < 6; ++k) harmonic[k] = 1.0 / (k + 1);  // Lebesgue on (0,1)
  const Classification lc = classify(harmonic, 2);
  CHECK(lc.hamburger);
  CHECK(lc.stieltjes);
  CHECK(lc.hausdorff);

  const Classification cx = classify({1.0, 0.5, 0.24, 0.125}, 2);
  CHECK_FALSE(cx.hamburger);
  CHECK_FALSE(cx.stieltjes);
  CHECK_FALSE(cx.hausdorff);
  CHECK(cx.min_eig_s0 < 0.0);

  // atoms at -1 and 1, weight 1/2 each: S^2_0 = I, S^2_1 indefinite
  const Classification pm = classify({1.0, 0.0, 1.0, 0.0}, 2);
  CHECK(pm.hamburger);
  CHECK_FALSE(pm.stieltjes);
  CHECK_FALSE(pm.hausdorff);
}

TEST_CASE("classify requires the extra moment only when it matters") {
  // 2N-1 moments, hamburger false: no S^N_1 needed
  const Classification c = classify({1.0, 0.5, 0.24}, 2);
  CHECK_FALSE(c.hamburger);
  CHECK(std::isnan(c.min_eig_s1));
  // hamburger true with s_{2N-1} missing: the Stieltjes question is open
  CHECK_THROWS_AS(classify({1.0, 0.0, 1.0}, 2), InsufficientMoments);
}

TEST_CASE("max_feasible_order") {
  // point mass at 1/2: rank-1 Hankel
  CHECK(max_feasible_order({1.0, 0.5, 0.25, 0.125}) == 1);
  CHECK(max_feasible_order({0.0, 0.0, 0.0}) == 0);

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int K = 1 + int(gen() % 5);
    AtomicMeasure mu;
    double pos = -1.5;
    for (int k = 0; k < K; ++k) {
      pos += 0.3 + U(gen);
      mu.atoms.push_back({pos, 0.2 + U(gen)});
    }
    const MomentSequence s = oracle::moments_from_measure(mu, 2 * K + 3);
    CHECK(max_feasible_order(s) == K);
  }
}

TEST_CASE("hankel determinant invariance under the signed binomial transform") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int len = 3 + int(gen() % 11);  // up to 13
    MomentSequence s(len);
    for (auto& v : s) v = U(gen);
    const MomentSequence c = signed_binomial_transform(s);
    for (int n = 0; n + 1 <= 6 && 2 * n + 1 <= len; ++n) {
      const double d1 = standard_hankel(s, n + 1).determinant();
      const double d2 = standard_hankel(c, n + 1).determinant();
      CHECK(std::abs(d1 - d2) <= 1e-9 * std::max(1.0, std::abs(d1)));
    }
  }
}

TEST_CASE("hausdorff feasibility implies monotone differences on the window") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int K = 1 + int(gen() % 4);
    AtomicMeasure mu;
    double pos = 0.05;
    for (int k = 0; k < K; ++k) {
      pos += 0.02 + 0.8 * U(gen) / K;
      mu.atoms.push_back({std::min(pos, 0.95), 0.1 + U(gen)});
    }
    const int N = K;
    const MomentSequence s = oracle::moments_from_measure(mu, 2 * N - 1);
    const Classification c = classify(s, N);
    if (!c.hausdorff) continue;  // coincident positions can demote the order
    for (int k = 0; k + 1 <= 2 * N - 1; ++k) {
      for (int n = 0; k + n <= 2 * N - 1 && k + n < int(s.size()); ++n) {
        double v = difference(s, k, n);
        if (k % 2 == 1) v = -v;
        CHECK(v >= -1e-10);
      }
    }
  }
}

TEST_CASE("measures inside (0,1) classify as hausdorff up to the atom count") {
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int K = 1 + int(gen() % 4);
    AtomicMeasure mu;
    for (int k = 0; k < K; ++k)
      mu.atoms.push_back({0.08 + 0.2 * k + 0.1 * U(gen), 0.1 + U(gen)});
    const MomentSequence s = oracle::moments_from_measure(mu, 2 * K);
    for (int N = 1; N <= K; ++N) CHECK(classify(s, N).hausdorff);
  }
}
