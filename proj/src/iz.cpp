#include "unpoly/iz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "unpoly/sampler.hpp"

namespace unpoly {

namespace {

using mpf = boost::multiprecision::cpp_bin_float_50;
using mpc = boost::multiprecision::cpp_complex_50;
using MpMatrix = std::vector<std::vector<mpc>>;

cplx to_cplx(const mpc& z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

mpc mp_det(MpMatrix a) {
  const size_t n = a.size();
  mpc det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    if (a[piv][c] == mpc(0)) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      const mpc f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Delta = prod_{i<j} (v_j - v_i)
mpf vandermonde(const std::vector<double>& v) {
  mpf d = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) d *= mpf(v[j]) - mpf(v[i]);
  return d;
}

void require_distinct(const std::vector<double>& v, const char* which) {
  double scale = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string("non-finite eigenvalue in ") + which);
    scale = std::max(scale, std::abs(x));
  }
  scale = std::max(scale, 1.0);
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (std::abs(v[i] - v[j]) < 1e-10 * scale) {
        throw DomainError(std::string("near-degenerate spectrum ") + which +
                          "; use iz_degenerate_Y for Y = diag(1,1,0,...)");
      }
}

mpc i_theta_pow(const mpf& theta, long long k) {
  // (i theta)^k for k possibly negative
  mpc base(0, theta);
  mpc r = 1;
  const long long m = k < 0 ? -k : k;
  for (long long t = 0; t < m; ++t) r *= base;
  return k < 0 ? mpc(1) / r : r;
}

mpf superfactorial(int n) {
  // prod_{p=1}^{n} p!
  mpf r = 1;
  for (int p = 1; p <= n; ++p) r *= mpf(factorial(p).str());
  return r;
}

mpc iz_mp(const std::vector<double>& x, const std::vector<double>& y, double theta) {
  const size_t n = x.size();
  MpMatrix m(n, std::vector<mpc>(n));
  const mpf th = theta;
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) m[j][k] = exp(mpc(0, th * mpf(x[j]) * mpf(y[k])));
  const long long nn = static_cast<long long>(n);
  return mp_det(std::move(m)) * superfactorial(static_cast<int>(n) - 1) /
         (vandermonde(x) * vandermonde(y)) * i_theta_pow(th, -nn * (nn - 1) / 2);
}

void check_degenerate_args(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 4) throw DomainError("iz_degenerate_Y requires N >= 4");
  if (n > 8) throw DomainError("iz_degenerate_Y: N > 8 exceeds the cost guard");
  require_distinct(x, "X");
}

}  // namespace

cplx iz_determinant(const SpectralPair& p) {
  const size_t n = p.x.size();
  if (n == 0 || p.y.size() != n) throw DomainError("iz_determinant: spectra of unequal length");
  if (n == 1) return std::polar(1.0, p.theta * p.x[0] * p.y[0]);
  require_distinct(p.x, "X");
  require_distinct(p.y, "Y");
  if (p.theta == 0.0) return 1.0;
  return to_cplx(iz_mp(p.x, p.y, p.theta));
}

ComplexEstimate iz_mc(const SpectralPair& p, const McConfig& cfg) {
  const int n = static_cast<int>(p.x.size());
  if (n == 0 || static_cast<int>(p.y.size()) != n) throw DomainError("iz_mc: spectra of unequal length");
  const auto est = monte_carlo(cfg, 2, [&p, n](Rng& rng, double* o) {
    const MatX u = sample_haar_unitary(n, rng);
    double tr = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) tr += p.x[static_cast<size_t>(j)] * p.y[static_cast<size_t>(k)] * std::norm(u(j, k));
    o[0] = std::cos(p.theta * tr);
    o[1] = std::sin(p.theta * tr);
  });
  return {est[0], est[1]};
}

Rational area_series_coefficient(int N, int n) {
  if (N < 2) throw DomainError("area_series_coefficient requires N >= 2");
  if (n < 0) throw DomainError("area_series_coefficient: negative order");
  return Rational(factorial(N - 1) * (n + 1), factorial(n + N - 1));
}

cplx area_generating_series(int N, double lambda, double theta, int n_max) {
  if (n_max < 0) throw DomainError("area_generating_series: n_max < 0");
  cplx sum = 1.0;
  const cplx t(0.0, theta * lambda);
  cplx power = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    power *= t;
    sum += to_double(area_series_coefficient(N, n)) * power;
  }
  return sum;
}

cplx iz_degenerate_Y(const std::vector<double>& x, double theta) {
  check_degenerate_args(x);
  if (theta == 0.0) return 1.0;
  const int n = static_cast<int>(x.size());
  const mpf th = theta;
  MpMatrix m(static_cast<size_t>(n), std::vector<mpc>(static_cast<size_t>(n)));
  for (int j = 0; j < n; ++j) {
    const mpf xj = x[static_cast<size_t>(j)];
    const mpc e = exp(mpc(0, th * xj));
    auto& row = m[static_cast<size_t>(j)];
    row[0] = e;
    row[1] = xj * e;
    mpf p = 1;
    for (int c = 2; c < n; ++c) {
      row[static_cast<size_t>(c)] = p;
      p *= xj;
    }
  }
  mpf fact_prod = 1;
  for (int k = 0; k <= n - 3; ++k) fact_prod *= mpf(factorial(k).str());
  const long long nn = n;
  const mpc limit = i_theta_pow(th, 1 + (nn - 3) * (nn - 2) / 2) / fact_prod * mp_det(std::move(m));
  return to_cplx(limit * superfactorial(n - 1) / vandermonde(x) *
                 i_theta_pow(th, -nn * (nn - 1) / 2));
}

cplx iz_degenerate_Y_printed(const std::vector<double>& x, double theta) {
  check_degenerate_args(x);
  if (theta == 0.0) return 1.0;
  const int n = static_cast<int>(x.size());
  const mpf th = theta;
  // sum_sigma eps(sigma) prod_m A_{sigma(m), m} with columns
  // x^{N-2}, ..., x, e^{i theta x}, x e^{i theta x}.
  MpMatrix m(static_cast<size_t>(n), std::vector<mpc>(static_cast<size_t>(n)));
  for (int j = 0; j < n; ++j) {
    const mpf xj = x[static_cast<size_t>(j)];
    const mpc e = exp(mpc(0, th * xj));
    auto& row = m[static_cast<size_t>(j)];
    for (int c = 0; c < n - 2; ++c) row[static_cast<size_t>(c)] = pow(xj, n - 2 - c);
    row[static_cast<size_t>(n - 2)] = e;
    row[static_cast<size_t>(n - 1)] = xj * e;
  }
  mpf den = mpf(factorial(n - 1).str());
  for (int k = 1; k <= n - 3; ++k) den *= mpf(factorial(k).str());
  mpc ipow = 1;
  for (int t = 0; t < (n * (n + 1) / 2) % 4; ++t) ipow *= mpc(0, 1);
  const mpc limit = ipow * pow(th, 3 * (n - 3) + 1) * mp_det(std::move(m)) / den;
  const long long nn = n;
  return to_cplx(limit * superfactorial(n - 1) / vandermonde(x) *
                 i_theta_pow(th, -nn * (nn - 1) / 2));
}

cplx iz_degenerate_Y_extrapolated(const std::vector<double>& x, double theta) {
  check_degenerate_args(x);
  const int n = static_cast<int>(x.size());
  std::vector<double> c(static_cast<size_t>(n));
  c[0] = 0.37;
  c[1] = -0.61;
  for (int k = 2; k < n; ++k) c[static_cast<size_t>(k)] = 0.53 * (k - 1) * (k % 2 ? -1.0 : 1.0);
  auto at = [&](double eps) {
    std::vector<double> y(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) y[static_cast<size_t>(k)] = (k < 2 ? 1.0 : 0.0) + eps * c[static_cast<size_t>(k)];
    if (theta == 0.0) return mpc(1);
    return iz_mp(x, y, theta);
  };
  return to_cplx(mpc(2) * at(5e-4) - at(1e-3));
}

}  // namespace unpoly
