#include <cmath>
#include <random>

#include "doctest.h"
#include "momentbc/bc_solver.hpp"
#include "momentbc/errors.hpp"
#include "momentbc/oracle.hpp"

using namespace momentbc;

TEST_CASE("dense spectral data of small blocks") {
  const JacobiMatrix J({1.0}, {0.0, 0.0});
  const auto data = oracle::dense_spectral_data(J);
  CHECK(data.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(data.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(data.norming[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(data.norming[1] == doctest::Approx(2.0).epsilon(1e-12));

  const auto one = oracle::dense_spectral_data(JacobiMatrix({}, {0.7}));
  CHECK(one.eigenvalues[0] == doctest::Approx(0.7));
  CHECK(one.norming[0] == doctest::Approx(1.0));
}

TEST_CASE("oracle eigenvalues are roots of phi_{N+1}") {
  std::mt19937_64 gen(16);
  std::uniform_real_distribution<double> Ua(0.5, 2.0), Ub(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int N = 2 + int(gen() % 7);
    std::vector<double> a(N - 1), b(N);
    for (auto& v : a) v = Ua(gen);
    for (auto& v : b) v = Ub(gen);
    const JacobiMatrix J(a, b);
    const auto data = oracle::dense_spectral_data(J);
    for (double lam : data.eigenvalues) {
      // run the recurrence independently of the oracle internals
      double prev = 0.0, cur = 1.0;
      for (int k = 1; k <= N; ++k) {
        const double ak = (k < N) ? a[k - 1] : 1.0;
        const double akm1 = (k == 1) ? 1.0 : a[k - 2];
        const double next = ((lam - b[k - 1]) * cur - akm1 * prev) / ak;
        prev = cur;
        cur = next;
      }
      CHECK(std::abs(cur) <= 1e-9);
    }
  }
}

TEST_CASE("moments_from_measure") {
  AtomicMeasure half;
  half.atoms = {{0.5, 1.0}};
  const MomentSequence s = oracle::moments_from_measure(half, 5);
  for (int k = 0; k <= 5; ++k) CHECK(s[k] == doctest::Approx(std::pow(0.5, k)));

  AtomicMeasure two;
  two.atoms = {{0.0, 0.5}, {1.0, 0.5}};
  const MomentSequence s2 = oracle::moments_from_measure(two, 4);
  CHECK(s2[0] == doctest::Approx(1.0));
  for (int k = 1; k <= 4; ++k) CHECK(s2[k] == doctest::Approx(0.5));

  const MomentSequence z = oracle::moments_from_measure(AtomicMeasure{}, 3);
  for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("vandermonde weights") {
  CHECK(oracle::vandermonde_weights({0.0, 1.0}, {1.0, 0.5}) ==
        std::vector<double>{0.5, 0.5});
  CHECK(oracle::vandermonde_weights({0.3}, {0.9})[0] == doctest::Approx(0.9));
  const auto w = oracle::vandermonde_weights({-1.0, 1.0}, {1.0, 0.0});
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(oracle::vandermonde_weights({0.5, 0.5 + 1e-14}, {1.0, 0.5}),
                  IllConditioned);
}

TEST_CASE("symbolic coefficients") {
  const auto rows = oracle::symbolic_cheb_coefficients(4);
  CHECK(rows[2] == std::vector<std::int64_t>{-1, 0, 1, 0});
  CHECK(rows[3] == std::vector<std::int64_t>{0, -2, 0, 1});
  for (int i = 0; i < 4; ++i) CHECK(rows[i][i] == 1);
  CHECK_THROWS_AS(oracle::symbolic_cheb_coefficients(65), Error);
}

TEST_CASE("full pipeline reproduces the oracle spectral data") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> Ua(0.5, 2.0), Ub(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int N = 1 + int(gen() % 8);
    std::vector<double> a(N - 1), b(N);
    for (auto& v : a) v = Ua(gen);
    for (auto& v : b) v = Ub(gen);
    const JacobiMatrix J(a, b);
    const auto data = oracle::dense_spectral_data(J);
    const AtomicMeasure mu = oracle::spectral_measure(data);
    const MomentSequence s = oracle::moments_from_measure(mu, 2 * N - 1);
    const AtomicMeasure rec = solve_truncated(s, N);
    for (int k = 0; k < N; ++k) {
      CHECK(std::abs(rec.atoms[k].position - data.eigenvalues[k]) <= 1e-7);
      CHECK(std::abs(rec.atoms[k].weight - 1.0 / data.norming[k]) <= 1e-7);
    }
  }
}

TEST_CASE("vandermonde weights agree with the solver weights") {
  std::mt19937_64 gen(18);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int K = 1 + int(gen() % 5);
    AtomicMeasure mu;
    double pos = -2.0;
    for (int k = 0; k < K; ++k) {
      pos += 0.4 + U(gen);
      mu.atoms.push_back({pos, 0.1 + U(gen)});
    }
    const MomentSequence s = oracle::moments_from_measure(mu, 2 * K - 1);
    const AtomicMeasure rec = solve_truncated(s, K);
    std::vector<double> positions;
    for (const auto& atom : rec.atoms) positions.push_back(atom.position);
    const auto w = oracle::vandermonde_weights(positions, s);
    for (int k = 0; k < K; ++k)
      CHECK(std::abs(w[k] - rec.atoms[k].weight) <= 1e-8 * std::max(1.0, w[k]));
  }
}
