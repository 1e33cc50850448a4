#include "unpoly/sampler.hpp"

#include <numbers>

namespace unpoly {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

cplx complex_gaussian(Rng& rng, std::normal_distribution<double>& g) {
  const double re = g(rng);
  const double im = g(rng);
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

void check_range(double x, double hi, const char* what) {
  if (!(x >= 0.0 && x <= hi)) throw DomainError(std::string("angle out of range: ") + what);
}

}  // namespace

Rng make_rng(RandomSeed s) {
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(s.stream),
                    static_cast<std::uint32_t>(s.stream >> 32)};
  return Rng(seq);
}

UnitaryFrame angles_to_columns(const AngleCoordinates& a) {
  const int n = a.size();
  if (n < 2) throw DomainError("angles_to_columns requires N >= 2");
  if (static_cast<int>(a.phi.size()) != n || static_cast<int>(a.alpha.size()) != n ||
      static_cast<int>(a.beta.size()) != n) {
    throw DomainError("angles_to_columns: inconsistent angle lists");
  }
  for (int k = 0; k < n; ++k) {
    check_range(a.theta[static_cast<size_t>(k)], kTwoPi, "theta");
    if (k >= 1) {
      check_range(a.phi[static_cast<size_t>(k)], kTwoPi, "phi");
      check_range(a.alpha[static_cast<size_t>(k)], std::numbers::pi / 2, "alpha");
    }
    if (k >= 2) check_range(a.beta[static_cast<size_t>(k)], std::numbers::pi / 2, "beta");
  }
  VecX v(n), w(n);
  const double a2 = a.alpha[1];
  const cplx e1 = std::polar(1.0, a.theta[0]);
  const cplx e2 = std::polar(1.0, a.theta[1]);
  const cplx f2 = std::polar(1.0, a.phi[1]);
  v(0) = e1 * std::cos(a2);
  v(1) = e2 * std::sin(a2);
  w(0) = -f2 * e1 * std::sin(a2);
  w(1) = f2 * e2 * std::cos(a2);
  for (int k = 2; k < n; ++k) {
    const auto ks = static_cast<size_t>(k);
    const double ca = std::cos(a.alpha[ks]), sa = std::sin(a.alpha[ks]);
    const double cb = std::cos(a.beta[ks]), sb = std::sin(a.beta[ks]);
    const cplx et = std::polar(1.0, a.theta[ks]);
    const cplx ef = std::polar(1.0, a.phi[ks]);
    for (int i = 0; i < k; ++i) {
      w(i) = cb * w(i) - ef * sa * sb * v(i);
      v(i) *= ca;
    }
    v(k) = et * sa;
    w(k) = ef * et * ca * sb;
  }
  return {v, w, 1.0};
}

AngleCoordinates sample_angles(int n, Rng& rng) {
  if (n < 2) throw DomainError("sample_angles requires N >= 2");
  AngleCoordinates a;
  const auto sz = static_cast<size_t>(n);
  a.theta.assign(sz, 0.0);
  a.phi.assign(sz, 0.0);
  a.alpha.assign(sz, 0.0);
  a.beta.assign(sz, 0.0);
  for (int k = 1; k <= n; ++k) {
    const auto i = static_cast<size_t>(k - 1);
    a.theta[i] = kTwoPi * uniform01(rng);
    if (k >= 2) {
      a.phi[i] = kTwoPi * uniform01(rng);
      a.alpha[i] = std::acos(std::pow(1.0 - uniform01(rng), 1.0 / (2.0 * k - 2.0)));
    }
    if (k >= 3) a.beta[i] = std::acos(std::pow(1.0 - uniform01(rng), 1.0 / (2.0 * k - 4.0)));
  }
  return a;
}

SpinorEnsemble sample_polyhedron(int n, double lambda, Rng& rng) {
  if (n < 2) throw DomainError("sample_polyhedron requires N >= 2");
  if (!(lambda > 0.0)) throw DomainError("sample_polyhedron requires lambda > 0");
  UnitaryFrame f = angles_to_columns(sample_angles(n, rng));
  f.lambda = lambda;
  return ensemble_from_frame(f);
}

SpinorEnsemble sample_polyhedron(int n, double lambda, RandomSeed seed) {
  Rng rng = make_rng(seed);
  return sample_polyhedron(n, lambda, rng);
}

SpinorEnsemble sample_gaussian_closed(int n, double lambda, Rng& rng) {
  if (n < 2) throw DomainError("sample_gaussian_closed requires N >= 2");
  if (!(lambda > 0.0)) throw DomainError("sample_gaussian_closed requires lambda > 0");
  std::normal_distribution<double> g;
  VecX c1(n), c2(n);
  for (int i = 0; i < n; ++i) c1(i) = complex_gaussian(rng, g);
  for (int i = 0; i < n; ++i) c2(i) = complex_gaussian(rng, g);
  c1.normalize();
  c2 -= c1.dot(c2) * c1;
  c2.normalize();
  return ensemble_from_frame({c1, c2, lambda});
}

MatX sample_haar_unitary(int n, Rng& rng) {
  if (n < 1) throw DomainError("sample_haar_unitary requires N >= 1");
  std::normal_distribution<double> g;
  MatX z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = complex_gaussian(rng, g);
  Eigen::HouseholderQR<MatX> qr(z);
  MatX q = qr.householderQ();
  const MatX& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double m = std::abs(d);
    if (m > 0.0) q.col(j) *= d / m;
  }
  return q;
}

MatX sample_haar_unitary(int n, RandomSeed seed) {
  Rng rng = make_rng(seed);
  return sample_haar_unitary(n, rng);
}

std::vector<Vec3> sample_free_ensemble(int n, double lambda, Rng& rng) {
  if (n < 1) throw DomainError("sample_free_ensemble requires N >= 1");
  if (!(lambda > 0.0)) throw DomainError("sample_free_ensemble requires lambda > 0");
  std::gamma_distribution<double> gamma(2.0, 1.0);
  std::vector<double> norms(static_cast<size_t>(n));
  double total = 0.0;
  for (auto& x : norms) {
    x = gamma(rng);
    total += x;
  }
  std::vector<Vec3> out;
  out.reserve(norms.size());
  for (double x : norms) {
    const double r = 2.0 * lambda * x / total;
    const double cz = 2.0 * uniform01(rng) - 1.0;
    const double ph = kTwoPi * uniform01(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    out.push_back({r * s * std::cos(ph), r * s * std::sin(ph), r * cz});
  }
  return out;
}

void sample_orthonormal_pair(int n, Rng& rng, std::vector<double>& c1,
                             std::vector<double>& c2) {
  if (n < 2) throw DomainError("sample_orthonormal_pair requires N >= 2");
  std::normal_distribution<double> g;
  c1.resize(static_cast<size_t>(n));
  c2.resize(static_cast<size_t>(n));
  for (auto& x : c1) x = g(rng);
  for (auto& x : c2) x = g(rng);
  double n1 = 0.0;
  for (double x : c1) n1 += x * x;
  n1 = std::sqrt(n1);
  for (auto& x : c1) x /= n1;
  double d = 0.0;
  for (size_t i = 0; i < c1.size(); ++i) d += c1[i] * c2[i];
  double n2 = 0.0;
  for (size_t i = 0; i < c1.size(); ++i) {
    c2[i] -= d * c1[i];
    n2 += c2[i] * c2[i];
  }
  n2 = std::sqrt(n2);
  for (auto& x : c2) x /= n2;
}

}  // namespace unpoly
