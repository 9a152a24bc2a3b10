#include <cmath>
#include <random>

#include "doctest.h"
#include "momentbc/determinacy.hpp"
#include "momentbc/errors.hpp"
#include "momentbc/oracle.hpp"

using namespace momentbc;

TEST_CASE("phi and xi Cauchy data") {
  const JacobiMatrix J({1.0, 1.0}, {0.5, -0.2, 0.1});
  const PhiXi v = phi_xi_at(J, 0.37);
  CHECK(v.phi[0] == 0.0);
  CHECK(v.phi[1] == 1.0);
  CHECK(v.xi[0] == -1.0);
  CHECK(v.xi[1] == 0.0);

  // free matrix at zero: phi_n = T_n(0) = (1, 0, -1, 0, 1, ...)
  const JacobiMatrix Jfree({1.0, 1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0, 0.0});
  const PhiXi f = phi_xi_at(Jfree, 0.0);
  const std::vector<double> expect{1.0, 0.0, -1.0, 0.0, 1.0, 0.0};
  for (int n = 1; n <= 6; ++n) CHECK(f.phi[n] == expect[n - 1]);

  // string m = (1,1), l = (1,1): phi_2(0) = -b_1/a_1 = -1
  const JacobiMatrix Js({1.0}, {1.0, 2.0});
  CHECK(phi_xi_at(Js, 0.0).phi[2] == doctest::Approx(-1.0));
}

TEST_CASE("hamburger indicators of the free matrix") {
  const int T_max = 10;
  const int N = 2 * T_max;
  const JacobiMatrix Jfree(std::vector<double>(N - 1, 1.0), std::vector<double>(N, 0.0));
  const ResponseVector r = response_vector(Jfree, 2 * T_max - 1);
  const HamburgerIndicators ind = hamburger_indicators_from_response(r, T_max);
  REQUIRE(ind.gamma_form.usable() == T_max);
  for (int T = 1; T <= T_max; ++T)
    CHECK(ind.gamma_form.values[T - 1] == doctest::Approx((T + 1) / 2).epsilon(1e-9));
  CHECK(ind.gamma_form.values[0] == doctest::Approx(1.0));  // T=1 base case
  // growing trace
  CHECK_FALSE(fit_growth(ind.gamma_form).bounded);
}

TEST_CASE("gamma form equals the phi sum on the recovered matrix") {
  std::mt19937_64 gen(33);
  std::uniform_real_distribution<double> Ua(0.6, 1.6), Ub(-0.6, 0.6);
  for (int trial = 0; trial < 8; ++trial) {
    const int N = 9;
    std::vector<double> a(N - 1), b(N);
    for (auto& v : a) v = Ua(gen);
    for (auto& v : b) v = Ub(gen);
    const JacobiMatrix J(a, b);
    const int T_max = 5;
    const ResponseVector r = response_vector(J, 2 * T_max - 1);
    const HamburgerIndicators ind = hamburger_indicators_from_response(r, T_max);
    const PhiXi v = phi_xi_at(J, 0.0);
    double acc = 0.0;
    for (int T = 1; T <= ind.gamma_form.usable(); ++T) {
      acc += v.phi[T] * v.phi[T];
      CHECK(std::abs(ind.gamma_form.values[T - 1] - acc) <=
            1e-8 * std::max(1.0, acc));
    }
  }
}

TEST_CASE("moment-based indicators match the response-based ones at desk scale") {
  const JacobiMatrix J({0.9, 1.1, 0.8, 1.0}, {0.4, -0.1, 0.3, 0.0, 0.2});
  const int T_max = 4;
  const ResponseVector r = response_vector(J, 2 * T_max - 1);
  const MomentSequence s = response_to_moments(r, 2 * T_max - 1);
  const auto im = hamburger_indicators(s, T_max);
  const auto ir = hamburger_indicators_from_response(r, T_max);
  REQUIRE(im.gamma_form.usable() == ir.gamma_form.usable());
  for (int i = 0; i < im.gamma_form.usable(); ++i) {
    CHECK(im.gamma_form.values[i] == doctest::Approx(ir.gamma_form.values[i]).epsilon(1e-9));
    CHECK(im.omega_form.values[i] == doctest::Approx(ir.omega_form.values[i]).epsilon(1e-9));
  }
}

TEST_CASE("string extraction on the hand example") {
  const JacobiMatrix J({1.0}, {1.0, 2.0});
  const StringParameters sp = string_from_jacobi(J);
  CHECK(sp.mass[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.mass[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.length[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.length[1] == doctest::Approx(1.0).epsilon(1e-12));

  const JacobiMatrix J1({}, {0.25});
  const StringParameters sp1 = string_from_jacobi(J1);  // b_1 = 1/l_1
  CHECK(sp1.mass[0] == 1.0);
  CHECK(sp1.length[0] == doctest::Approx(4.0));
}

TEST_CASE("string round trip") {
  std::mt19937_64 gen(34);
  std::uniform_real_distribution<double> U(0.2, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int K = 1 + int(gen() % 8);
    StringParameters sp;
    sp.mass.push_back(1.0);
    for (int k = 1; k < K; ++k) sp.mass.push_back(U(gen));
    for (int k = 0; k < K; ++k) sp.length.push_back(U(gen));
    const JacobiMatrix J = jacobi_from_string(sp);
    const StringParameters rec = string_from_jacobi(J);
    for (int k = 0; k < K; ++k) {
      CHECK(rec.mass[k] == doctest::Approx(sp.mass[k]).epsilon(1e-9));
      CHECK(rec.length[k] == doctest::Approx(sp.length[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("degenerate strings are reported") {
  // b_1 = 0 makes phi_2(0) = 0
  CHECK_THROWS_AS(string_from_jacobi(JacobiMatrix({1.0}, {0.0, 1.0})), DegenerateString);
  // negative diagonal breaks length positivity
  CHECK_THROWS_AS(string_from_jacobi(JacobiMatrix({1.0}, {-1.0, 2.0})), DegenerateString);
}

TEST_CASE("stieltjes indicators on the two reference strings") {
  // unit string: masses and lengths all 1, M_T = T exactly
  {
    const int K = 18, T_max = 8;
    StringParameters sp;
    sp.mass.assign(K, 1.0);
    sp.length.assign(K, 1.0);
    const JacobiMatrix J = jacobi_from_string(sp);
    const ResponseVector r = response_vector(J, 2 * T_max + 1);
    const StieltjesIndicators ind = stieltjes_indicators_from_response(r, T_max);
    REQUIRE(ind.mass.usable() >= T_max);
    for (int T = 1; T <= T_max; ++T)
      CHECK(std::abs(ind.mass.values[T - 1] - T) <= 1e-8);
    // cumulative length L_T = T
    for (int T = 1; T <= ind.length.usable(); ++T)
      CHECK(ind.length.values[T - 1] == doctest::Approx(double(T)).epsilon(1e-7));
  }
  // geometric string: both traces bounded
  {
    const int K = 18, T_max = 12;
    StringParameters sp;
    for (int k = 0; k < K; ++k) {
      sp.mass.push_back(std::pow(2.0, -k));
      sp.length.push_back(std::pow(2.0, -(k + 1)));
    }
    const JacobiMatrix J = jacobi_from_string(sp);
    const ResponseVector r = response_vector(J, 2 * T_max + 1);
    const StieltjesIndicators ind = stieltjes_indicators_from_response(r, T_max);
    REQUIRE(ind.mass.usable() >= T_max);
    REQUIRE(ind.length.usable() >= T_max);
    double m_acc = 0.0, l_acc = 0.0;
    for (int T = 1; T <= T_max; ++T) {
      m_acc += sp.mass[T - 1];
      l_acc += sp.length[T - 1];
      CHECK(ind.mass.values[T - 1] == doctest::Approx(m_acc).epsilon(1e-6));
      CHECK(ind.length.values[T - 1] == doctest::Approx(l_acc).epsilon(1e-6));
    }
    CHECK(fit_growth(ind.mass).bounded);
    CHECK(fit_growth(ind.length).bounded);
  }
}

TEST_CASE("both length routes agree") {
  std::mt19937_64 gen(35);
  std::uniform_real_distribution<double> U(0.4, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int K = 14;
    StringParameters sp;
    sp.mass.push_back(1.0);
    for (int k = 1; k < K; ++k) sp.mass.push_back(U(gen));
    for (int k = 0; k < K; ++k) sp.length.push_back(U(gen));
    const JacobiMatrix J = jacobi_from_string(sp);
    const int T_max = 6;
    const ResponseVector r = response_vector(J, 2 * T_max + 1);
    const StieltjesIndicators ind = stieltjes_indicators_from_response(r, T_max);
    const PhiXi v = phi_xi_at(J, 0.0);
    for (int T = 1; T <= ind.length.usable(); ++T) {
      const double ref = -v.xi[T + 1] / v.phi[T + 1];
      CHECK(std::abs(ind.length.values[T - 1] - ref) <= 1e-6 * std::max(1.0, ref));
    }
  }
}

TEST_CASE("hausdorff determinacy verdicts") {
  MomentSequence harmonic(8);
  for (int k = 0; k < 8; ++k) harmonic[k] = 1.0 / (k + 1);
  const HausdorffVerdict lebesgue = hausdorff_determinacy(harmonic, 3);
  CHECK(lebesgue.determinate);
  CHECK(lebesgue.eigenvalue_sums.size() == 3);
  for (size_t K = 1; K <= 3; ++K)
    CHECK(lebesgue.eigenvalue_sums[K - 1] <= double(K) + 1e-10);

  MomentSequence geo(4);
  for (int k = 0; k < 4; ++k) geo[k] = std::pow(0.5, k);
  const HausdorffVerdict point = hausdorff_determinacy(geo, 1);
  CHECK(point.determinate);

  const HausdorffVerdict bad = hausdorff_determinacy({1.0, 0.5, 0.24, 0.125}, 2);
  CHECK_FALSE(bad.determinate);
  CHECK(bad.failing_order == 2);

  CHECK_THROWS_AS(hausdorff_determinacy({1.0, 0.5}, 2), InsufficientMoments);
}

TEST_CASE("mass trace is nondecreasing") {
  const JacobiMatrix J({0.8, 1.2, 0.9, 1.1, 1.0}, {1.5, 2.0, 1.8, 2.2, 1.9, 2.1});
  const int T_max = 5;
  const ResponseVector r = response_vector(J, 2 * T_max + 1);
  const StieltjesIndicators ind = stieltjes_indicators_from_response(r, T_max);
  for (int i = 1; i < ind.mass.usable(); ++i)
    CHECK(ind.mass.values[i] >= ind.mass.values[i - 1] - 1e-12);
}

TEST_CASE("fitted slope") {
  std::vector<double> linear{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(fitted_slope(linear, 4, 8) == doctest::Approx(1.0));
  std::vector<double> flat(8, 2.0);
  CHECK(fitted_slope(flat, 4, 8) == doctest::Approx(0.0));
}
