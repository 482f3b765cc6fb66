#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "tripdc/specfun.hpp"

using namespace tripdc;

TEST_SUITE("test_specfun") {

TEST_CASE("gamma ratio identity g(n-1) g(n) = n") {
  for (int n = 1; n <= 200; ++n) {
    const double lhs = gamma_ratio_g(n - 1.0) * gamma_ratio_g(n);
    CHECK(std::abs(lhs / n - 1.0) < 1e-12);
  }
}

TEST_CASE("gamma ratio endpoints") {
  CHECK(gamma_ratio_g(0.0) ==
        doctest::Approx(std::numbers::sqrt2 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  // large-argument behavior g(n) ~ sqrt(n+1)
  const double n = 1e6;
  CHECK(std::abs(gamma_ratio_g(n) / std::sqrt(n + 1.0) - 1.0) < 1e-6);
  CHECK_THROWS_AS(gamma_ratio_g(-0.5), std::invalid_argument);
}

TEST_CASE("gamma ratio identity holds to 1e4") {
  double worst = 0;
  for (int n = 1; n <= 10000; ++n)
    worst = std::max(worst, std::abs(gamma_ratio_g(n - 1.0) * gamma_ratio_g(n) / n - 1.0));
  CHECK(worst < 1e-12);
}

TEST_CASE("jacobi special values") {
  for (double m : {0.0, 0.3, 0.77, 0.999})
    CHECK(jacobi_cn(0.0, EllipticModulus::from_parameter(m)) == 1.0);
  const auto k1 = EllipticModulus::from_parameter(1.0);
  for (double u : {0.5, 1.0, 2.0})
    CHECK(std::abs(jacobi_cn(u, k1) - 1.0 / std::cosh(u)) < 1e-10);
}

TEST_CASE("jacobi identities on random inputs") {
  auto rng = testing::test_rng();
  std::uniform_real_distribution<double> du(-10.0, 10.0), dm(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double u = du(rng), m = dm(rng);
    const auto k = EllipticModulus::from_parameter(m);
    const auto v = jacobi_elliptic(u, k);
    CHECK(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) < 1e-12);
    CHECK(std::abs(v.dn * v.dn + m * v.sn * v.sn - 1.0) < 1e-12);
  }
}

TEST_CASE("jacobi against the defining quadrature") {
  // u = F(phi | m) by quadrature, then sn(u|m) must return sin(phi)
  auto rng = testing::test_rng(17);
  std::uniform_real_distribution<double> dphi(0.0, 1.4), dm(0.0, 0.95);
  for (int i = 0; i < 25; ++i) {
    const double phi = dphi(rng), m = dm(rng);
    const double u = testing::simpson_adaptive(
        [m](double t) {
          const double s = std::sin(t);
          return 1.0 / std::sqrt(1.0 - m * s * s);
        },
        0.0, phi, 1e-13);
    CHECK(std::abs(jacobi_sn(u, EllipticModulus::from_parameter(m)) - std::sin(phi)) <
          1e-10);
  }
}

TEST_CASE("complete elliptic integral") {
  CHECK(complete_elliptic_k(EllipticModulus::from_parameter(0.0)) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(complete_elliptic_k(EllipticModulus::from_parameter(0.5)) ==
        doctest::Approx(1.8540746773013719).epsilon(1e-14));
  CHECK_THROWS_AS(complete_elliptic_k(EllipticModulus::from_parameter(1.0)),
                  std::domain_error);
}

TEST_CASE("elliptic modulus construction") {
  CHECK(EllipticModulus::single_pair(255, 0).parameter() == doctest::Approx(255.0 / 256));
  CHECK(EllipticModulus::two_pair(255, 0, 0).parameter() == doctest::Approx(255.0 / 257));
  CHECK(EllipticModulus::single_pair(1000000, 0).parameter() < 1.0);
  CHECK_THROWS_AS(EllipticModulus::from_parameter(1.5), std::invalid_argument);
  CHECK_THROWS_AS(EllipticModulus::single_pair(0, 0), std::invalid_argument);
}

TEST_CASE("u(theta): anchors and round trip") {
  CHECK(elliptic_u_of_theta(0.0, 255, 0) == 0.0);
  for (double th : {0.3, 0.8, 1.4}) {
    const double u = elliptic_u_of_theta(th, 255, 0);
    CHECK(std::abs(theta_of_u(u, 255, 0) - th) < 1e-8);
  }
  CHECK_THROWS_AS(elliptic_u_of_theta(2.0, 255, 0), std::invalid_argument);
}

TEST_CASE("u(pi/2) matches the exact quarter period") {
  for (int np0 : {12, 255, 4096}) {
    const double u = elliptic_u_of_theta(std::numbers::pi / 2, np0, 0);
    const double scale = std::sqrt(np0 + 1.0);
    const double K = complete_elliptic_k(EllipticModulus::single_pair(np0, 0));
    CHECK(std::abs(u * scale - K) < 1e-6);
  }
}

TEST_CASE("u(theta) strictly increasing") {
  double prev = -1;
  for (int i = 0; i <= 40; ++i) {
    const double th = i * (std::numbers::pi / 2) / 40.0;
    const double u = elliptic_u_of_theta(th, 64, 2);
    CHECK(u > prev);
    prev = u;
  }
}

TEST_CASE("u(theta) against an independent quadrature") {
  for (double th : {0.4, 1.0, 1.5}) {
    const double ref = testing::simpson_adaptive(
        [](double t) {
          const double s = std::sin(t);
          return 1.0 / std::sqrt(255.0 * s * s + 1.0);
        },
        0.0, th, 1e-13);
    CHECK(std::abs(elliptic_u_of_theta(th, 255, 0) - ref) < 1e-9);
  }
}

TEST_CASE("entropy basics") {
  CHECK(shannon_entropy_bits(ProbDist({1.0})) == 0.0);
  CHECK(shannon_entropy_bits(ProbDist({0.0, 1.0, 0.0})) == 0.0);
  CHECK(shannon_entropy_bits(ProbDist({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  // geometric with z = 1/2: S = -log2(1-z) - z/(1-z) log2 z = 2 bits
  std::vector<double> g(80);
  double mass = 0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    g[n] = 0.5 * std::pow(0.5, static_cast<double>(n));
    mass += g[n];
  }
  CHECK(std::abs(mass - 1.0) < 1e-9);
  CHECK(shannon_entropy_bits(ProbDist(g)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(ProbDist({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(ProbDist({-0.1, 1.1}), std::invalid_argument);
}

TEST_CASE("entropy: permutation invariance and uniform maximum") {
  auto rng = testing::test_rng(3);
  std::uniform_real_distribution<double> dx(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> w(16);
    double sum = 0;
    for (double& v : w) {
      v = dx(rng);
      sum += v;
    }
    for (double& v : w) v /= sum;
    const double h = shannon_entropy_bits(ProbDist(w));
    std::shuffle(w.begin(), w.end(), rng);
    CHECK(shannon_entropy_bits(ProbDist(w)) == doctest::Approx(h).epsilon(1e-12));
    CHECK(h <= 4.0 + 1e-12);  // log2(16)
  }
}

TEST_CASE("bhattacharyya fidelity") {
  ProbDist p({0.25, 0.75});
  CHECK(bhattacharyya_fidelity(p, p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bhattacharyya_fidelity(ProbDist({1.0, 0.0}), ProbDist({0.0, 1.0})) == 0.0);
  CHECK_THROWS_AS(bhattacharyya_fidelity(p, ProbDist({1.0})), std::invalid_argument);
}

TEST_CASE("digamma") {
  constexpr double gamma_e = 0.5772156649015329;
  CHECK(digamma(1.0) == doctest::Approx(-gamma_e).epsilon(1e-13));
  CHECK(digamma(2.0) == doctest::Approx(1.0 - gamma_e).epsilon(1e-13));
  CHECK(digamma(0.5) == doctest::Approx(-gamma_e - 2 * std::numbers::ln2).epsilon(1e-13));
}

TEST_CASE("gauss-kronrod sanity") {
  CHECK(integrate_gk([](double x) { return x * x; }, 0, 1, 1e-12) ==
        doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK(integrate_gk([](double x) { return std::sin(x); }, 0, std::numbers::pi, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

}  // TEST_SUITE
