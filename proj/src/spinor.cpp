#include "unpoly/spinor.hpp"

#include <algorithm>

namespace unpoly {

namespace {

Mat2 outer(const Spinor& a, const Spinor& b_row_conj) {
  // |a><b|
  Mat2 m;
  m << a.z0 * std::conj(b_row_conj.z0), a.z0 * std::conj(b_row_conj.z1),
      a.z1 * std::conj(b_row_conj.z0), a.z1 * std::conj(b_row_conj.z1);
  return m;
}

// |a][b| uses the row [b| = (-b1, b0).
Mat2 outer_dual_row(const Spinor& a, const Spinor& b) {
  Mat2 m;
  m << -a.z0 * b.z1, a.z0 * b.z0, -a.z1 * b.z1, a.z1 * b.z0;
  return m;
}

// Closest SU(2) element of the form [[a, -conj b], [b, conj a]].
Mat2 project_su2(const Mat2& g) {
  cplx a = 0.5 * (g(0, 0) + std::conj(g(1, 1)));
  cplx b = 0.5 * (g(1, 0) - std::conj(g(0, 1)));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  if (n == 0.0) throw NumericError("project_su2: zero matrix");
  a /= n;
  b /= n;
  Mat2 r;
  r << a, -std::conj(b), b, std::conj(a);
  return r;
}

double max_abs(const MatX& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

cplx Spinor::zeta() const {
  if (z0 == cplx(0.0, 0.0)) throw DomainError("chart singularity: z0 = 0");
  return z1 / z0;
}

Spinor dual(const Spinor& z) { return {-std::conj(z.z1), std::conj(z.z0)}; }

VectorForm spinor_to_vector(const Spinor& z) {
  const cplx c = std::conj(z.z0) * z.z1;
  return {{2.0 * c.real(), 2.0 * c.imag(), std::norm(z.z0) - std::norm(z.z1)},
          z.norm2()};
}

Spinor vector_to_spinor(const Vec3& v, double phase) {
  const double len = v.norm();
  if (!(len > 0.0)) throw DomainError("degenerate normal");
  const double perp = std::hypot(v.x, v.y);
  const cplx azimuth = perp > 0.0 ? cplx(v.x / perp, v.y / perp) : cplx(1.0, 0.0);
  const cplx global = std::polar(1.0, phase);
  const double up = std::sqrt(std::max(0.0, 0.5 * (len + v.z)));
  const double down = std::sqrt(std::max(0.0, 0.5 * (len - v.z)));
  return {global * up, global * azimuth * down};
}

SpinorEnsemble::SpinorEnsemble(std::vector<Spinor> spinors) : spinors_(std::move(spinors)) {
  if (spinors_.size() < 2) throw DomainError("SpinorEnsemble requires N >= 2");
  for (const auto& s : spinors_) {
    if (!std::isfinite(s.norm2())) throw DomainError("SpinorEnsemble: non-finite spinor");
  }
}

SpinorEnsemble SpinorEnsemble::reference(int n) {
  if (n < 2) throw DomainError("reference configuration requires N >= 2");
  std::vector<Spinor> s(static_cast<size_t>(n));
  s[0] = {1.0, 0.0};
  s[1] = {0.0, 1.0};
  return SpinorEnsemble(std::move(s));
}

double SpinorEnsemble::total_area() const {
  double a = 0.0;
  for (const auto& s : spinors_) a += s.norm2();
  return a;
}

Mat2 SpinorEnsemble::gram() const {
  Mat2 x = Mat2::Zero();
  for (const auto& s : spinors_) x += outer(s, s);
  return x;
}

std::vector<Vec3> SpinorEnsemble::vectors() const {
  std::vector<Vec3> out;
  out.reserve(spinors_.size());
  for (const auto& s : spinors_) out.push_back(spinor_to_vector(s).v);
  return out;
}

SL2CTransform::SL2CTransform(const Mat2& m) : m_(m) {
  if (std::abs(m.determinant() - cplx(1.0, 0.0)) > tol::det) {
    throw DomainError("SL2CTransform: det != 1");
  }
}

SL2CTransform SL2CTransform::inverse() const {
  Mat2 inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return SL2CTransform(inv);
}

SU2Rotation::SU2Rotation(const Mat2& g) : g_(g) {
  if ((g.adjoint() * g - Mat2::Identity()).cwiseAbs().maxCoeff() > tol::closure ||
      std::abs(g.determinant() - cplx(1.0, 0.0)) > tol::closure) {
    throw DomainError("SU2Rotation: not in SU(2)");
  }
}

SU2Rotation SU2Rotation::from_axis_angle(const Vec3& u) {
  const double t = u.norm();
  if (t == 0.0) return SU2Rotation();
  const double s = std::sin(t) / t;
  const cplx i(0.0, 1.0);
  Mat2 g;
  g << cplx(std::cos(t), 0.0) + i * s * u.z, i * s * cplx(u.x, -u.y),
      i * s * cplx(u.x, u.y), cplx(std::cos(t), 0.0) - i * s * u.z;
  return SU2Rotation(project_su2(g));
}

double UnitaryFrame::orthonormality_residual() const {
  return std::max({std::abs(c1.squaredNorm() - 1.0), std::abs(c2.squaredNorm() - 1.0),
                   std::abs(c1.dot(c2))});
}

Closure closure_vector(const SpinorEnsemble& e) {
  Closure out;
  for (const auto& s : e) {
    const auto vf = spinor_to_vector(s);
    out.c += vf.v;
    out.two_lambda += vf.norm;
  }
  return out;
}

ClosingResult close_ensemble(const SpinorEnsemble& e) {
  const Mat2 x = e.gram();
  const double trace = x.trace().real();
  if (!(trace > 0.0)) throw DomainError("non-closable configuration: all spinors vanish");
  Eigen::SelfAdjointEigenSolver<Mat2> eig(x);
  const Eigen::Vector2d d = eig.eigenvalues();
  if (d.minCoeff() <= 1e-14 * d.maxCoeff()) {
    throw DomainError("non-closable configuration");
  }
  Mat2 g = eig.eigenvectors();
  const cplx phase = g.determinant();
  g.col(0) *= std::conj(phase) / std::abs(phase);
  const double quarter = std::pow(d(0) * d(1), 0.25);
  Mat2 lam = g * Eigen::Vector2cd(std::sqrt(d(0)), std::sqrt(d(1))).asDiagonal();
  lam /= quarter;
  Mat2 inv = Eigen::Vector2cd(1.0 / std::sqrt(d(0)), 1.0 / std::sqrt(d(1))).asDiagonal() *
             g.adjoint();
  inv *= quarter;
  std::vector<Spinor> out;
  out.reserve(static_cast<size_t>(e.size()));
  for (const auto& s : e) out.push_back(inv * s);
  // det(lam) = 1 up to roundoff; renormalize before the strict check.
  lam /= std::sqrt(lam.determinant());
  return {SpinorEnsemble(std::move(out)), SL2CTransform(lam)};
}

ClosingResult close_ensemble_by_boost(const SpinorEnsemble& e) {
  const Closure cl = closure_vector(e);
  const double lambda = 0.5 * cl.two_lambda;
  const double c = cl.c.norm();
  if (!(lambda > 0.0)) throw DomainError("non-closable configuration: all spinors vanish");
  if (c >= cl.two_lambda * (1.0 - 1e-14)) throw DomainError("non-closable configuration");
  if (c == 0.0) return {e, SL2CTransform()};
  // h maps the north pole onto the direction of C.
  const double theta = std::acos(std::clamp(cl.c.z / c, -1.0, 1.0));
  const double phi = std::atan2(cl.c.y, cl.c.x);
  Mat2 h;
  h << std::cos(0.5 * theta), -std::polar(1.0, -phi) * std::sin(0.5 * theta),
      std::polar(1.0, phi) * std::sin(0.5 * theta), std::cos(0.5 * theta);
  // mu rescales |z0|^2 -> mu |z0|^2, so the spinors see sqrt(mu)
  const double mu = std::sqrt((lambda - 0.5 * c) / (lambda + 0.5 * c));
  const double s = std::sqrt(mu);
  const Mat2 inv = Eigen::Vector2cd(s, 1.0 / s).asDiagonal() * h.adjoint();
  Mat2 lam = h * Eigen::Vector2cd(1.0 / s, s).asDiagonal();
  std::vector<Spinor> out;
  out.reserve(static_cast<size_t>(e.size()));
  for (const auto& s : e) out.push_back(inv * s);
  lam /= std::sqrt(lam.determinant());
  return {SpinorEnsemble(std::move(out)), SL2CTransform(lam)};
}

SpinorEnsemble apply_sl2c(const SL2CTransform& t, const SpinorEnsemble& e) {
  std::vector<Spinor> out;
  out.reserve(static_cast<size_t>(e.size()));
  for (const auto& s : e) out.push_back(t.matrix() * s);
  return SpinorEnsemble(std::move(out));
}

SpinorEnsemble apply_su2(const SU2Rotation& g, const SpinorEnsemble& e) {
  std::vector<Spinor> out;
  out.reserve(static_cast<size_t>(e.size()));
  for (const auto& s : e) out.push_back(g.matrix() * s);
  return SpinorEnsemble(std::move(out));
}

SpinorEnsemble apply_unitary(const MatX& u, const SpinorEnsemble& e) {
  const int n = e.size();
  if (u.rows() != n || u.cols() != n) throw DomainError("apply_unitary: size mismatch");
  if (max_abs(u.adjoint() * u - MatX::Identity(n, n)) > tol::unitarity) {
    throw DomainError("apply_unitary: matrix is not unitary");
  }
  std::vector<Spinor> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Spinor acc;
    for (int j = 0; j < n; ++j) acc = acc + u(i, j) * e[j];
    out[static_cast<size_t>(i)] = acc;
  }
  return SpinorEnsemble(std::move(out));
}

ObservableMatrices compute_observables(const SpinorEnsemble& e) {
  const int n = e.size();
  ObservableMatrices obs{MatX(n, n), MatX(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      obs.E(i, j) = braket(e[i], e[j]);
      obs.F(i, j) = i == j ? cplx(0.0, 0.0) : bracket_dual(e[i], e[j]);
    }
  }
  return obs;
}

double dot_from_E(const ObservableMatrices& obs, int i, int j) {
  return 2.0 * std::norm(obs.E(i, j)) - obs.E(i, i).real() * obs.E(j, j).real();
}

double dot_from_F(const ObservableMatrices& obs, int i, int j) {
  return -2.0 * std::norm(obs.F(i, j)) + obs.E(i, i).real() * obs.E(j, j).real();
}

double plucker_residual(const MatX& f) {
  const double scale = max_abs(f);
  if (scale == 0.0) return 0.0;
  const auto n = f.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) {
          const cplx r = f(i, j) * f(k, l) - f(i, k) * f(j, l) + f(i, l) * f(j, k);
          worst = std::max(worst, std::abs(r));
        }
  return worst / (scale * scale);
}

SL2CTransform match_by_F(const SpinorEnsemble& z, const SpinorEnsemble& w) {
  if (z.size() != w.size()) throw DomainError("match_by_F: size mismatch");
  const MatX fz = compute_observables(z).F;
  const MatX fw = compute_observables(w).F;
  const double scale = std::max(max_abs(fz), max_abs(fw));
  if (scale == 0.0) throw DomainError("match_by_F: rank-deficient (F = 0)");
  if (max_abs(fz - fw) > tol::invariant * scale) {
    throw DomainError("match_by_F: F matrices differ");
  }
  Eigen::Index k = 0, l = 0;
  fw.cwiseAbs().maxCoeff(&k, &l);
  const Spinor& wk = w[static_cast<int>(k)];
  const Spinor& wl = w[static_cast<int>(l)];
  const cplx denom = bracket_dual(wk, wl);
  Mat2 lam = (outer_dual_row(z[static_cast<int>(l)], wk) -
              outer_dual_row(z[static_cast<int>(k)], wl)) /
             denom;
  lam /= std::sqrt(lam.determinant());
  return SL2CTransform(lam);
}

SU2Match match_by_F_closed(const SpinorEnsemble& z, const SpinorEnsemble& w) {
  if (z.size() != w.size()) throw DomainError("match_by_F_closed: size mismatch");
  const double area = std::max(z.total_area(), w.total_area());
  if (!(area > 0.0)) return {SU2Rotation(), true};
  for (const auto* e : {&z, &w}) {
    if (closure_vector(*e).c.norm() > tol::invariant * area) {
      throw DomainError("match_by_F_closed: ensemble is not closed");
    }
  }
  const MatX fz = compute_observables(z).F;
  const MatX fw = compute_observables(w).F;
  if (max_abs(fz - fw) > tol::invariant * std::max(max_abs(fz), 1e-300)) {
    throw DomainError("match_by_F_closed: F matrices differ");
  }
  int k = 0;
  double best = -1.0;
  for (int i = 0; i < z.size(); ++i) {
    const double score = z[i].norm2() * w[i].norm2();
    if (score > best) {
      best = score;
      k = i;
    }
  }
  const Mat2 g = (outer(z[k], w[k]) + outer_dual_row(dual(z[k]), w[k])) / std::sqrt(best);
  return {SU2Rotation(project_su2(g)), false};
}

std::vector<cplx> cross_ratios(const SpinorEnsemble& e) {
  std::vector<cplx> out;
  if (e.size() < 4) return out;
  const cplx z1 = e[0].zeta(), z2 = e[1].zeta(), z3 = e[2].zeta();
  if (z3 == z2) throw DomainError("cross_ratios: zeta_3 = zeta_2");
  for (int i = 3; i < e.size(); ++i) out.push_back((e[i].zeta() - z1) / (z3 - z2));
  return out;
}

std::vector<cplx> cross_ratios_from_F(const SpinorEnsemble& e) {
  std::vector<cplx> out;
  if (e.size() < 4) return out;
  for (int i = 0; i < e.size(); ++i) {
    if (e[i].z0 == cplx(0.0, 0.0)) throw DomainError("chart singularity: z0 = 0");
  }
  const cplx f23 = bracket_dual(e[1], e[2]);
  if (f23 == cplx(0.0, 0.0)) throw DomainError("cross_ratios: F_23 = 0");
  for (int i = 3; i < e.size(); ++i) {
    out.push_back(bracket_dual(e[0], e[i]) / f23 * (e[1].z0 * e[2].z0) / (e[0].z0 * e[i].z0));
  }
  return out;
}

UnitaryFrame reconstruct_frame(const SpinorEnsemble& e) {
  const Closure cl = closure_vector(e);
  if (!(cl.two_lambda > 0.0)) throw DomainError("reconstruct_frame: lambda = 0");
  if (cl.c.norm() > tol::invariant * cl.two_lambda) {
    throw DomainError("reconstruct_frame: ensemble is not closed");
  }
  const double lambda = 0.5 * cl.two_lambda;
  const double s = 1.0 / std::sqrt(lambda);
  UnitaryFrame f{VecX(e.size()), VecX(e.size()), lambda};
  for (int k = 0; k < e.size(); ++k) {
    f.c1(k) = e[k].z0 * s;
    f.c2(k) = e[k].z1 * s;
  }
  return f;
}

SpinorEnsemble ensemble_from_frame(const UnitaryFrame& f) {
  const double s = std::sqrt(f.lambda);
  std::vector<Spinor> out(static_cast<size_t>(f.c1.size()));
  for (Eigen::Index k = 0; k < f.c1.size(); ++k) {
    out[static_cast<size_t>(k)] = {s * f.c1(k), s * f.c2(k)};
  }
  return SpinorEnsemble(std::move(out));
}

}  // namespace unpoly
