#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "unpoly/iz.hpp"
#include "unpoly/moments.hpp"

using namespace unpoly;

TEST_SUITE("iz") {

TEST_CASE("one by one") {
  const cplx v = iz_determinant({{1.5}, {0.4}, 0.9});
  CHECK(std::abs(v - std::exp(cplx(0, 0.9 * 1.5 * 0.4))) < 1e-14);
}

TEST_CASE("small theta and zero theta") {
  const SpectralPair p{{1, 2, 3}, {0.5, 1.5, 2.5}, 1e-6};
  CHECK(std::abs(iz_determinant(p) - 1.0) < 1e-4);
  CHECK(iz_determinant({{1, 2, 3}, {0.5, 1.5, 2.5}, 0.0}) == cplx(1.0));
}

TEST_CASE("two by two against quadrature") {
  for (double theta : {0.3, 1.1, 2.7}) {
    const cplx a = iz_determinant({{0.2, 1.3}, {-0.5, 0.8}, theta});
    const cplx b = oracle::iz_two_by_two(0.2, 1.3, -0.5, 0.8, theta);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("symmetry under exchanging X and Y") {
  const cplx a = iz_determinant({{1, 2, 3, 4.5}, {0.1, 0.7, 1.2, 2.0}, 0.6});
  const cplx b = iz_determinant({{0.1, 0.7, 1.2, 2.0}, {1, 2, 3, 4.5}, 0.6});
  CHECK(std::abs(a - b) < 1e-12);
  CHECK(std::abs(a) <= 1.0 + 1e-12);
}

TEST_CASE("degenerate spectra are rejected") {
  CHECK_THROWS_AS(iz_determinant({{1, 1, 2}, {0, 1, 2}, 0.5}), DomainError);
  CHECK_THROWS_AS(iz_determinant({{1, 2}, {0, 1, 2}, 0.5}), DomainError);
}

TEST_CASE("Monte Carlo at theta = 0 and N = 2") {
  const auto z = iz_mc({{1, 2}, {3, 4}, 0.0}, {1000, 1, 1});
  CHECK(z.re.mean == 1.0);
  CHECK(z.re.stderr_ == 0.0);
  CHECK(z.im.mean == 0.0);
  const SpectralPair p{{0.2, 1.3}, {-0.5, 0.8}, 1.1};
  const auto e = iz_mc(p, {100000, 2, 1});
  const cplx d = iz_determinant(p);
  CHECK(std::abs(e.re.z_score(d.real())) < 4.0);
  CHECK(std::abs(e.im.z_score(d.imag())) < 4.0);
}

TEST_CASE("area series coefficients reproduce the face-area moments") {
  for (int N = 2; N <= 8; ++N)
    for (int n = 0; n <= 12; ++n) {
      Rational nf = 1;
      for (int k = 2; k <= n; ++k) nf *= k;
      CHECK(area_series_coefficient(N, n) * nf == moment_V_exact(N, 1, n));
    }
  CHECK(area_generating_series(5, 1.0, 0.0, 30) == cplx(1.0));
}

TEST_CASE("area series equals the rank-one IZ integral") {
  // X = e1 e1^T, Y = diag(1,1,0,...): Tr(Y U^dag X U) = |U_11|^2 + |U_12|^2 = V_1 / lambda.
  // Perturb both spectra slightly so the determinant formula applies.
  const int N = 4;
  const double theta = 0.8, lambda = 1.0;
  const cplx series = area_generating_series(N, lambda, theta, 60);
  const double eta = 1e-3;
  std::vector<double> x{1.0, eta * 0.31, eta * 0.67, eta * 1.13};
  const cplx direct = iz_degenerate_Y(x, theta);
  CHECK(std::abs(direct - series) < 5e-3);
  const auto e = iz_mc({x, {1 + 1e-3, 1 - 1e-3, 1e-3, -1e-3}, theta}, {100000, 3, 1});
  CHECK(std::abs(e.re.z_score(series.real())) < 4.0);
  CHECK(std::abs(e.im.z_score(series.imag())) < 4.0);
}

TEST_CASE("degenerate Y against the extrapolated determinant") {
  const std::vector<double> x{1, 2, 3, 4};
  for (double theta : {0.3, 0.7}) {
    const cplx d = iz_degenerate_Y(x, theta);
    const cplx e = iz_degenerate_Y_extrapolated(x, theta);
    CHECK(std::abs(d - e) <= 1e-5 * std::abs(e));
  }
  for (int N = 5; N <= 7; ++N) {
    std::vector<double> xs;
    for (int k = 0; k < N; ++k) xs.push_back(0.3 * k + 0.1 * k * k);
    const cplx d = iz_degenerate_Y(xs, 0.4);
    const cplx e = iz_degenerate_Y_extrapolated(xs, 0.4);
    CHECK(std::abs(d - e) <= 1e-5 * std::abs(e));
  }
  CHECK_THROWS_AS(iz_degenerate_Y({1, 2, 3}, 0.3), DomainError);
}

TEST_CASE("the printed degenerate form disagrees") {
  const std::vector<double> x{1, 2, 3, 4};
  const cplx d = iz_degenerate_Y(x, 0.3);
  const cplx p = iz_degenerate_Y_printed(x, 0.3);
  CHECK(std::abs(d - p) > 1e-2);
}

}  // TEST_SUITE
