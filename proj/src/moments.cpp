#include "unpoly/moments.hpp"

#include <cmath>
#include <limits>

#include "unpoly/sampler.hpp"
#include "unpoly/weingarten.hpp"

namespace unpoly {

namespace {

void require_n(int N, int min, const char* what) {
  if (N < min) throw DomainError(std::string(what) + ": N too small");
}

Rational rational_from_double(double x) {
  // Exact binary value of x.
  if (!std::isfinite(x)) throw DomainError("non-finite lambda");
  int exp = 0;
  const double m = std::frexp(x, &exp);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  Rational r(mant);
  exp -= 53;
  if (exp >= 0) {
    r *= boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(exp));
  } else {
    r /= boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(-exp));
  }
  return r;
}

}  // namespace

PiMonomial sphere_volume_odd(int m) {
  if (m < 1) throw DomainError("sphere_volume_odd: m < 1");
  return {Rational(2) / Rational(factorial(m - 1)), m};
}

Rational density_exact(int N, const Rational& lambda) {
  require_n(N, 2, "density");
  return rpow(lambda, 2 * N - 4) / Rational(factorial(N - 1) * factorial(N - 2));
}

double density(int N, double lambda) {
  require_n(N, 2, "density");
  return std::pow(lambda, 2 * N - 4) / to_double(factorial(N - 1) * factorial(N - 2));
}

PiMonomial density_sphere_form(int N, const Rational& lambda) {
  require_n(N, 2, "density_sphere_form");
  const PiMonomial a = sphere_volume_odd(N);
  const PiMonomial b = sphere_volume_odd(N - 1);
  return {Rational(1, 4) * a.coeff * b.coeff * rpow(lambda, 2 * N - 4),
          1 - 2 * N + a.pi_power + b.pi_power};
}

Rational density_free_exact(int N, const Rational& lambda) {
  require_n(N, 2, "density_free");
  return rpow(2 * lambda, 2 * N - 1) / Rational(factorial(2 * N - 1));
}

double density_free(int N, double lambda) {
  require_n(N, 2, "density_free");
  return to_double(density_free_exact(N, rational_from_double(lambda)));
}

Rational moment_V_exact(int N, const Rational& lambda, int n) {
  require_n(N, 2, "moment_V");
  if (n < 0) throw DomainError("moment_V: negative order");
  return rpow(lambda, n) * Rational(factorial(n + 1) * factorial(N - 1), factorial(N + n - 1));
}

double moment_V(int N, double lambda, int n) {
  return to_double(moment_V_exact(N, 1, n)) * std::pow(lambda, n);
}

Rational moment_V_free_exact(int N, const Rational& lambda, int n) {
  require_n(N, 1, "moment_V_free");
  if (n < 0) throw DomainError("moment_V_free: negative order");
  return rpow(2 * lambda, n) *
         Rational(factorial(n + 1) * factorial(2 * N - 1), factorial(2 * N + n - 1));
}

double moment_V_free(int N, double lambda, int n) {
  return to_double(moment_V_free_exact(N, 1, n)) * std::pow(lambda, n);
}

PairCorrelations corr_pairs(int N) {
  require_n(N, 3, "corr_pairs");
  const BigInt n = N;
  PairCorrelations c;
  c.vv = Rational(2 * (2 * n - 1), (n - 1) * n * (n + 1));
  c.comp_same = Rational(2, n * (n + 1));
  c.comp_diff = Rational(-2, n * (n * n - 1));
  c.vv_free = Rational(8, n * (2 * n + 1));
  c.comp_diff_free = 0;
  return c;
}

Theta theta_tensor(const std::vector<Vec3>& v) {
  Theta t{};
  double v2 = 0.0;
  for (const auto& x : v) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] += x[a] * x[b];
    v2 += x.dot(x);
  }
  for (size_t a = 0; a < 3; ++a) t[a][a] -= v2 / 3.0;
  return t;
}

double tr_theta2(const std::vector<Vec3>& v) {
  const Theta t = theta_tensor(v);
  double s = 0.0;
  for (const auto& row : t)
    for (double x : row) s += x * x;
  return s;
}

Rational tr_theta2_exact(int N) {
  require_n(N, 4, "tr_theta2_exact");
  const Rational v4 = moment_V_exact(N, 1, 4);
  Rational dot2 = 0;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) dot2 += vector_polynomial_average({{0, a}, {0, b}, {1, a}, {1, b}}, N);
  const Rational norms = vector_polynomial_average({{0, 0}, {0, 0}, {1, 0}, {1, 0}}, N);
  return Rational(2, 3) * N * v4 + Rational(N) * (N - 1) * (dot2 - norms / 3);
}

ThetaCorrelation theta_correlation_exact(int N) {
  const Rational b = tr_theta2_exact(N) / 10;
  return {-2 * b / 3, b, "derived: isotropy + tracelessness + exact <Tr Theta^2>"};
}

ThetaCorrelation theta_correlation_printed(int N) {
  require_n(N, 2, "theta_correlation_printed");
  const BigInt n = N;
  const BigInt den = 3 * (n - 1) * n * (n + 1) * (n + 2) * (n + 3);
  return {Rational(16 * (n * n + n - 2), den), Rational(-24 * (n - 1), den),
          "unverified-closed-form"};
}

Rational tr_theta2_printed(int N) {
  const BigInt n = N;
  return Rational(4 * (n - 4), n * (n + 1) * (n + 2) * (n + 3));
}

Rational quartic_unitary_integral(int i, int j, int alpha, int beta, int mu, int nu, int k,
                                  int l, int N) {
  if (N < 2) throw DomainError("quartic_unitary_integral requires N >= 2");
  for (int x : {i, j, alpha, beta, mu, nu, k, l})
    if (x < 0 || x >= N) throw DomainError("quartic_unitary_integral: index out of range");
  auto d = [](int a, int b) { return a == b ? 1 : 0; };
  const Rational n = N;
  const Rational first = Rational(d(i, alpha) * d(k, mu) * d(j, beta) * d(l, nu)) / (n * n);
  const Rational block = Rational(d(i, k) * d(alpha, mu) * d(j, l) * d(beta, nu)) -
                         Rational(d(i, k) * d(alpha, mu) * d(j, beta) * d(l, nu)) / n -
                         Rational(d(i, alpha) * d(k, mu) * d(j, l) * d(beta, nu)) / n +
                         Rational(d(i, alpha) * d(k, mu) * d(j, beta) * d(l, nu)) / (n * n);
  return first + block / (n * n - 1);
}

std::vector<MomentReport> moment_table_closed(int N, double lambda, const McConfig& cfg) {
  require_n(N, 3, "moment_table");
  const double l2 = lambda * lambda;
  const auto pc = corr_pairs(N);
  std::vector<MomentReport> rows = {
      {"V", N, lambda, moment_V(N, lambda, 1), {}},
      {"V^2", N, lambda, moment_V(N, lambda, 2), {}},
      {"V^3", N, lambda, moment_V(N, lambda, 3), {}},
      {"V^4", N, lambda, moment_V(N, lambda, 4), {}},
      {"V_i V_j", N, lambda, to_double(pc.vv) * l2, {}},
      {"V_i^z V_i^z", N, lambda, to_double(pc.comp_same) * l2, {}},
      {"V_i^x V_i^y", N, lambda, 0.0, {}},
      {"V_i^z V_j^z", N, lambda, to_double(pc.comp_diff) * l2, {}},
      {"V_i^x V_j^y", N, lambda, 0.0, {}},
      {"Theta^zz", N, lambda, 0.0, {}},
      {"Theta^xy", N, lambda, 0.0, {}},
      {"Tr Theta^2", N, lambda,
       N >= 4 ? to_double(tr_theta2_exact(N)) * l2 * l2 : std::numeric_limits<double>::quiet_NaN(),
       {}},
  };
  const int n_obs = static_cast<int>(rows.size());
  if (cfg.samples > 0) {
    const auto est = monte_carlo(cfg, n_obs, [N, lambda](Rng& rng, double* o) {
      const auto e = sample_polyhedron(N, lambda, rng);
      const auto v = e.vectors();
      const double v1 = e[0].norm2(), v2 = e[1].norm2();
      const Theta t = theta_tensor(v);
      o[0] = v1;
      o[1] = v1 * v1;
      o[2] = v1 * v1 * v1;
      o[3] = v1 * v1 * v1 * v1;
      o[4] = v1 * v2;
      o[5] = v[0].z * v[0].z;
      o[6] = v[0].x * v[0].y;
      o[7] = v[0].z * v[1].z;
      o[8] = v[0].x * v[1].y;
      o[9] = t[2][2];
      o[10] = t[0][1];
      double tr = 0.0;
      for (const auto& row : t)
        for (double x : row) tr += x * x;
      o[11] = tr;
    });
    for (int k = 0; k < n_obs; ++k) rows[static_cast<size_t>(k)].mc = est[static_cast<size_t>(k)];
  }
  return rows;
}

std::vector<MomentReport> moment_table_free(int N, double lambda, const McConfig& cfg) {
  require_n(N, 2, "moment_table_free");
  const double l2 = lambda * lambda;
  const auto n = static_cast<double>(N);
  std::vector<MomentReport> rows = {
      {"free V", N, lambda, moment_V_free(N, lambda, 1), {}},
      {"free V^2", N, lambda, moment_V_free(N, lambda, 2), {}},
      {"free V^3", N, lambda, moment_V_free(N, lambda, 3), {}},
      {"free V^4", N, lambda, moment_V_free(N, lambda, 4), {}},
      {"free V_i V_j", N, lambda, 8.0 * l2 / (n * (2.0 * n + 1.0)), {}},
      {"free V_i^z V_j^z", N, lambda, 0.0, {}},
      {"free |C|^2", N, lambda, 12.0 * l2 / (2.0 * n + 1.0), {}},
  };
  const int n_obs = static_cast<int>(rows.size());
  if (cfg.samples > 0) {
    const auto est = monte_carlo(cfg, n_obs, [N, lambda](Rng& rng, double* o) {
      const auto v = sample_free_ensemble(N, lambda, rng);
      const double v1 = v[0].norm(), v2 = v[1].norm();
      Vec3 c;
      for (const auto& x : v) c += x;
      o[0] = v1;
      o[1] = v1 * v1;
      o[2] = v1 * v1 * v1;
      o[3] = v1 * v1 * v1 * v1;
      o[4] = v1 * v2;
      o[5] = v[0].z * v[1].z;
      o[6] = c.dot(c);
    });
    for (int k = 0; k < n_obs; ++k) rows[static_cast<size_t>(k)].mc = est[static_cast<size_t>(k)];
  }
  return rows;
}

std::vector<MomentReport> moment_table(int N, double lambda, const McConfig& cfg) {
  auto rows = moment_table_closed(N, lambda, cfg);
  McConfig free_cfg = cfg;
  free_cfg.seed = cfg.seed ^ 0x9e3779b97f4a7c15ULL;
  for (auto& r : moment_table_free(N, lambda, free_cfg)) rows.push_back(std::move(r));
  return rows;
}

}  // namespace unpoly
