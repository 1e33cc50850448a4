#include "unpoly/quantum.hpp"

#include <cmath>
#include <map>
#include <random>

namespace unpoly {

namespace {

void require_legs(int N, int min, const char* what) {
  if (N < min) throw DomainError(std::string(what) + ": N too small");
}

void require_spin(Spin s) {
  if (s.twice < 0) throw DomainError("negative spin");
}

// det^J is single valued only for integer J
void require_integer_spin(Spin s) {
  require_spin(s);
  if (s.twice % 2) throw DomainError("coherent states need integer J");
}

// Tensor multiplicities: map from 2K to multiplicity.
using Multiplicities = std::map<int, BigInt>;

Multiplicities couple(const Multiplicities& m, int t) {
  Multiplicities out;
  for (const auto& [k, mult] : m) {
    for (int r = std::abs(k - t); r <= k + t; r += 2) out[r] += mult;
  }
  return out;
}

template <class F>
void for_each_list(int N, int remaining, std::vector<Spin>& cur, F&& f) {
  if (static_cast<int>(cur.size()) == N - 1) {
    cur.push_back(Spin{remaining});
    f(cur);
    cur.pop_back();
    return;
  }
  for (int t = 0; t <= remaining; ++t) {
    cur.push_back(Spin{t});
    for_each_list(N, remaining - t, cur, f);
    cur.pop_back();
  }
}

// Two-leg spectrum: intertwiners with spins (a, b) on legs i, k coupled to K.
// count = d_{N-2}[J - a - b, K] for |a-b| <= K <= a+b.
template <class F>
void for_each_pair(int N, Spin J, F&& f) {
  for (int a = 0; a <= J.twice; ++a)
    for (int b = 0; a + b <= J.twice; ++b) {
      const Spin rest{J.twice - a - b};
      for (int k = std::abs(a - b); k <= a + b; k += 2) {
        const BigInt c = dimension_fixed_spin(N - 2, rest, Spin{k});
        if (c != 0) f(a, b, k, c);
      }
    }
}

cplx ipow(cplx x, int k) {
  cplx r = 1.0;
  for (int t = 0; t < k; ++t) r *= x;
  return r;
}

Rational factorial_ratio(int num, int den) {
  return Rational(factorial(num), factorial(den));
}

}  // namespace

Spin Spin::from_twice(int t) {
  if (t < 0) throw DomainError("negative spin");
  return Spin{t};
}

Spin Spin::from_value(double j) {
  const double t = 2.0 * j;
  if (!(t >= 0.0) || std::abs(t - std::round(t)) > 1e-12 || t > 1e6) {
    throw DomainError("spin must be a nonnegative integer or half-integer");
  }
  return Spin{static_cast<int>(std::lround(t))};
}

Spin Spin::parse(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    if (s.substr(slash + 1) != "2") throw DomainError("spin fraction must have denominator 2");
    return from_twice(std::stoi(s.substr(0, slash)));
  }
  size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw DomainError("malformed spin: " + s);
  return from_value(v);
}

std::string Spin::str() const {
  return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

BigInt dimension(int N, Spin J) {
  require_legs(N, 1, "dimension");
  require_spin(J);
  if (J.twice % 2) return 0;
  const long long j = J.twice / 2;
  if (j == 0) return 1;
  return binomial(N + j - 1, j) * binomial(N + j - 2, j) / (j + 1);
}

BigInt dimension_fixed_spin(int N, Spin J, Spin K) {
  require_legs(N, 1, "dimension_fixed_spin");
  require_spin(J);
  require_spin(K);
  if (K.twice > J.twice || (J.twice - K.twice) % 2) return 0;
  const long long a = (J.twice + K.twice) / 2;
  const long long b = (J.twice - K.twice) / 2;
  const BigInt num = BigInt(K.twice + 1) * binomial(N + a - 1, a) * binomial(N + b - 2, b);
  return num / (a + 1);
}

BigInt covariant_count(const std::vector<Spin>& spins, Spin K) {
  require_spin(K);
  Multiplicities m{{0, 1}};
  for (Spin s : spins) {
    require_spin(s);
    m = couple(m, s.twice);
  }
  auto it = m.find(K.twice);
  return it == m.end() ? BigInt(0) : it->second;
}

BigInt dimension_by_coupling(const std::vector<Spin>& spins) { return covariant_count(spins, Spin{0}); }

BigInt covariant_by_enumeration(int N, Spin J, Spin K) {
  require_legs(N, 1, "covariant_by_enumeration");
  require_spin(J);
  // sum_i j_i = J means sum_i 2j_i = 2J.
  BigInt total = 0;
  std::vector<Spin> cur;
  for_each_list(N, J.twice, cur, [&](const std::vector<Spin>& l) { total += covariant_count(l, K); });
  return total;
}

BigInt dimension_by_enumeration(int N, Spin J) { return covariant_by_enumeration(N, J, Spin{0}); }

SumRuleReport sum_rule_check(int N, Spin J) {
  require_legs(N, 2, "sum_rule_check");
  require_spin(J);
  SumRuleReport r;
  r.target = dimension(N + 1, J);
  for (int k = J.twice % 2; k <= J.twice; k += 2) r.form_a += dimension_fixed_spin(N, J, Spin{k});
  for (int k = 0; k <= J.twice; ++k) r.form_b += dimension_fixed_spin(N, Spin{J.twice - k}, Spin{k});
  r.a_holds = r.form_a == r.target;
  r.b_holds = r.form_b == r.target;
  return r;
}

BigInt leg_count(int N, Spin J, Spin j) {
  require_legs(N, 2, "leg_count");
  if (j.twice > J.twice) return 0;
  return dimension_fixed_spin(N - 1, Spin{J.twice - j.twice}, j);
}

Rational trace_moment_V(int N, Spin J, int n) {
  require_legs(N, 2, "trace_moment_V");
  require_spin(J);
  const Rational j = Rational(J.twice, 2);
  if (n == 1) return 2 * j / N;
  if (n == 2) return 6 * j * (j + N) / (Rational(N) * (N + 1));
  throw DomainError("trace_moment_V: closed forms exist for n = 1, 2");
}

namespace {

template <class F>
Rational leg_average(int N, Spin J, F&& f) {
  const BigInt d = dimension(N, J);
  if (d == 0) throw DomainError("empty intertwiner space");
  Rational sum = 0;
  for (int t = 0; t <= J.twice; ++t) {
    const BigInt c = leg_count(N, J, Spin{t});
    if (c != 0) sum += Rational(c) * f(t);
  }
  return sum / Rational(d);
}

}  // namespace

Rational trace_moment_V_spectral(int N, Spin J, int n) {
  if (n == 1) return leg_average(N, J, [](int t) { return Rational(t); });
  if (n == 2) return leg_average(N, J, [](int t) { return Rational(t) * (t + 2); });
  throw DomainError("trace_moment_V_spectral: n must be 1 or 2");
}

Rational power_moment(int N, Spin J, int n) {
  if (n < 0) throw DomainError("power_moment: negative order");
  return leg_average(N, J, [n](int t) { return rpow(Rational(t), n); });
}

FactorialMomentReport factorial_moment(int N, Spin J, int m) {
  require_legs(N, 2, "factorial_moment");
  if (m < 0) throw DomainError("factorial_moment: m < 0");
  if (J.twice % 2) throw DomainError("factorial_moment: half-integer J");
  FactorialMomentReport r;
  r.spectral = leg_average(N, J, [m](int t) {
    Rational p = 1;
    for (int k = 0; k <= m; ++k) p *= (t + k);
    return p;
  });
  const long long j = J.twice / 2;
  if (j == 0) {
    r.closed_form = 0;
  } else {
    r.closed_form = Rational(j * ((m + 2) * j + 2 * N + m - 2)) * Rational(factorial(m + 1)) *
                    factorial_ratio(static_cast<int>(N + j + m - 2), static_cast<int>(N + j - 1)) *
                    factorial_ratio(N - 1, N + m);
  }
  r.agree = r.spectral == r.closed_form;
  return r;
}

SpinCorrelations spin_correlations(int N, Spin J) {
  require_legs(N, 3, "spin_correlations");
  require_spin(J);
  const Rational j = Rational(J.twice, 2);
  const Rational n = N;
  SpinCorrelations c;
  c.vv = j * j * 2 * (2 * n - 1) / ((n - 1) * n * (n + 1)) - 6 * j / ((n - 1) * (n + 1));
  c.vdotv = -6 * j * (j + n) / ((n - 1) * n * (n + 1));
  const BigInt d = dimension(N, J);
  if (d == 0) throw DomainError("empty intertwiner space");
  Rational num = 0, dot = 0;
  for_each_pair(N, J, [&](int a, int b, int k, const BigInt& cnt) {
    num += Rational(cnt) * a * b;
    // V_i . V_k = 2 (K(K+1) - a(a+1) - b(b+1)) with spins a/2, b/2, k/2.
    dot += Rational(cnt) * Rational(k * (k + 2) - a * (a + 2) - b * (b + 2), 2);
  });
  c.vv_number = num / Rational(d);
  c.vdotv_enum = dot / Rational(d);
  return c;
}

cplx character(int N, Spin J, const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != N) throw DomainError("character: need N angles");
  require_spin(J);
  if (J.twice % 2) return 0.0;
  const int j = J.twice / 2;
  // h_k of the eigenvalues, k = 0..J+1
  std::vector<cplx> h(static_cast<size_t>(j + 2), 0.0);
  h[0] = 1.0;
  for (double t : theta) {
    const cplx x = std::polar(1.0, t);
    for (size_t k = 1; k < h.size(); ++k) h[k] += x * h[k - 1];
  }
  const cplx hm1 = j >= 1 ? h[static_cast<size_t>(j - 1)] : cplx(0.0);
  return h[static_cast<size_t>(j)] * h[static_cast<size_t>(j)] - h[static_cast<size_t>(j + 1)] * hm1;
}

cplx character_bialternant(int N, Spin J, const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != N) throw DomainError("character: need N angles");
  require_spin(J);
  if (J.twice % 2) return 0.0;
  const int j = J.twice / 2;
  MatX num(N, N), den(N, N);
  for (int r = 0; r < N; ++r) {
    const cplx x = std::polar(1.0, theta[static_cast<size_t>(r)]);
    for (int c = 0; c < N; ++c) {
      const int part = c < 2 ? j : 0;
      num(r, c) = ipow(x, part + N - 1 - c);
      den(r, c) = ipow(x, N - 1 - c);
    }
  }
  return num.determinant() / den.determinant();
}

cplx coherent_overlap(Spin J, const SpinorEnsemble& z, const SpinorEnsemble& w) {
  require_integer_spin(J);
  if (z.size() != w.size()) throw DomainError("coherent_overlap: size mismatch");
  Mat2 m = Mat2::Zero();
  for (int i = 0; i < z.size(); ++i) {
    m(0, 0) += w[i].z0 * std::conj(z[i].z0);
    m(0, 1) += w[i].z0 * std::conj(z[i].z1);
    m(1, 0) += w[i].z1 * std::conj(z[i].z0);
    m(1, 1) += w[i].z1 * std::conj(z[i].z1);
  }
  return ipow(m.determinant(), J.twice / 2);
}

cplx coherent_overlap_bracket_form(Spin J, const SpinorEnsemble& z, const SpinorEnsemble& w) {
  require_integer_spin(J);
  if (z.size() != w.size()) throw DomainError("coherent_overlap: size mismatch");
  cplx s = 0.0;
  for (int i = 0; i < z.size(); ++i)
    for (int k = 0; k < z.size(); ++k) {
      // <z_k|z_i] = <z_k| dual(z_i)>
      s += bracket_dual(w[i], w[k]) * braket(z[k], dual(z[i]));
    }
  return ipow(0.5 * s, J.twice / 2);
}

double coherent_norm(Spin J, const SpinorEnsemble& z) {
  require_integer_spin(J);
  double s = 0.0;
  for (int i = 0; i < z.size(); ++i)
    for (int k = 0; k < z.size(); ++k) s += std::norm(bracket_dual(z[i], z[k]));
  return std::pow(0.5 * s, J.twice / 2);
}

namespace {

void check_mc_guard(int N, Spin J) {
  require_legs(N, 2, "dimension_mc");
  require_spin(J);
  if (J.twice % 2) throw DomainError("half-integer J has no intertwiners");
  if (N > 8 || J.twice > 8) throw DomainError("Gaussian estimator guard: N <= 8, J <= 4");
}

void gaussian_spinors(int N, Rng& rng, std::vector<Spinor>& out) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  out.resize(static_cast<size_t>(N));
  for (auto& s : out) {
    const double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
    s = {cplx(a, b), cplx(c, d)};
  }
}

}  // namespace

Estimate dimension_mc(int N, Spin J, const McConfig& cfg) {
  check_mc_guard(N, J);
  const int j = J.twice / 2;
  const double norm = to_double(factorial(j) * factorial(j + 1));
  return monte_carlo(cfg, 1, [N, j, norm](Rng& rng, double* o) {
    std::vector<Spinor> z;
    gaussian_spinors(N, rng, z);
    double a = 0.0, d = 0.0;
    cplx b = 0.0;
    for (const auto& s : z) {
      a += std::norm(s.z0);
      d += std::norm(s.z1);
      b += s.z0 * std::conj(s.z1);
    }
    o[0] = std::pow(a * d - std::norm(b), j) / norm;
  })[0];
}

ComplexEstimate character_mc(int N, Spin J, const std::vector<double>& theta, const McConfig& cfg) {
  check_mc_guard(N, J);
  if (static_cast<int>(theta.size()) != N) throw DomainError("character_mc: need N angles");
  const int j = J.twice / 2;
  const double norm = to_double(factorial(j) * factorial(j + 1));
  std::vector<cplx> ph;
  for (double t : theta) ph.push_back(std::polar(1.0, t));
  const auto est = monte_carlo(cfg, 2, [N, j, norm, ph](Rng& rng, double* o) {
    std::vector<Spinor> z;
    gaussian_spinors(N, rng, z);
    cplx s = 0.0;
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b)
        s += ph[static_cast<size_t>(a)] * ph[static_cast<size_t>(b)] *
             std::norm(bracket_dual(z[static_cast<size_t>(a)], z[static_cast<size_t>(b)]));
    const cplx v = ipow(s, j) / norm;
    o[0] = v.real();
    o[1] = v.imag();
  });
  return {est[0], est[1]};
}

double asymptotic_dimension(int N, Spin J) {
  require_legs(N, 3, "asymptotic_dimension");
  require_spin(J);
  const double j = J.value();
  return std::pow(j, 2 * N - 4) / to_double(factorial(N - 1) * factorial(N - 2)) +
         N * std::pow(j, 2 * N - 5) / to_double(factorial(N - 1) * factorial(N - 3));
}

}  // namespace unpoly
