#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "unpoly/common.hpp"

namespace unpoly {

using Mat2 = Eigen::Matrix2cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

namespace tol {
// Closure and orthonormality on unit-scale data.
inline constexpr double closure = 1e-12;
// Matching / recovery through 2x2 inversions.
inline constexpr double recovery = 1e-8;
// Equality of invariant observables (F, E) between two routes.
inline constexpr double invariant = 1e-10;
// Unitarity accepted by apply_unitary.
inline constexpr double unitarity = 1e-10;
// SL(2,C) determinant.
inline constexpr double det = 1e-12;
}  // namespace tol

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double operator[](int a) const { return a == 0 ? x : (a == 1 ? y : z); }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(double s, const Vec3& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
};

/// A complex 2-vector |z> = (z0, z1).
struct Spinor {
  cplx z0{0.0, 0.0};
  cplx z1{0.0, 0.0};

  /// <z|z>
  double norm2() const { return std::norm(z0) + std::norm(z1); }
  /// zeta = z1 / z0, the stereographic chart of the vector direction.
  cplx zeta() const;

  friend Spinor operator*(cplx s, const Spinor& a) {
    return {s * a.z0, s * a.z1};
  }
  friend Spinor operator+(const Spinor& a, const Spinor& b) {
    return {a.z0 + b.z0, a.z1 + b.z1};
  }
};

/// <w|z>
inline cplx braket(const Spinor& w, const Spinor& z) {
  return std::conj(w.z0) * z.z0 + std::conj(w.z1) * z.z1;
}
/// [w|z> = w0 z1 - w1 z0, antisymmetric and SL(2,C) invariant.
inline cplx bracket_dual(const Spinor& w, const Spinor& z) {
  return w.z0 * z.z1 - w.z1 * z.z0;
}

inline Spinor operator*(const Mat2& m, const Spinor& s) {
  return {m(0, 0) * s.z0 + m(0, 1) * s.z1, m(1, 0) * s.z0 + m(1, 1) * s.z1};
}

/// Dual spinor |z] = (-conj z1, conj z0). Applying twice gives -z.
Spinor dual(const Spinor& z);

struct VectorForm {
  Vec3 v;
  double norm = 0.0;  // <z|z>, equal to |v|
};

/// V = <z|sigma|z>, V = <z|z>.
VectorForm spinor_to_vector(const Spinor& z);

/// Inverse of spinor_to_vector with overall phase e^{i phase}. On the z axis
/// the azimuthal phase is taken to be zero.
Spinor vector_to_spinor(const Vec3& v, double phase);

/// N spinors, N >= 2: a framed (possibly open) polyhedron.
class SpinorEnsemble {
 public:
  SpinorEnsemble() = default;
  explicit SpinorEnsemble(std::vector<Spinor> spinors);

  /// The squeezed reference configuration {(1,0),(0,1),0,...,0}.
  static SpinorEnsemble reference(int n);

  int size() const { return static_cast<int>(spinors_.size()); }
  const Spinor& operator[](int i) const { return spinors_[static_cast<size_t>(i)]; }
  const std::vector<Spinor>& spinors() const { return spinors_; }
  auto begin() const { return spinors_.begin(); }
  auto end() const { return spinors_.end(); }

  /// 2 lambda = sum_i <z_i|z_i>.
  double total_area() const;
  double lambda() const { return 0.5 * total_area(); }
  /// X = sum_i |z_i><z_i|.
  Mat2 gram() const;
  std::vector<Vec3> vectors() const;

 private:
  std::vector<Spinor> spinors_;
};

/// det = 1 within tol::det.
class SL2CTransform {
 public:
  SL2CTransform() : m_(Mat2::Identity()) {}
  explicit SL2CTransform(const Mat2& m);
  const Mat2& matrix() const { return m_; }
  SL2CTransform inverse() const;

 private:
  Mat2 m_;
};

/// Unitary with det 1.
class SU2Rotation {
 public:
  SU2Rotation() : g_(Mat2::Identity()) {}
  explicit SU2Rotation(const Mat2& g);
  /// exp(i u.sigma)
  static SU2Rotation from_axis_angle(const Vec3& u);
  const Mat2& matrix() const { return g_; }

 private:
  Mat2 g_;
};

/// First two columns of U with z_k = sqrt(lambda) (c1_k, c2_k).
struct UnitaryFrame {
  VecX c1;
  VecX c2;
  double lambda = 0.0;

  /// max of | |c1|^2-1 |, | |c2|^2-1 |, |<c1|c2>|
  double orthonormality_residual() const;
};

struct Closure {
  Vec3 c;
  double two_lambda = 0.0;
};

Closure closure_vector(const SpinorEnsemble& e);

struct ClosingResult {
  SpinorEnsemble closed;
  /// Lambda with closed_i = Lambda^{-1} z_i.
  SL2CTransform lambda;
};

/// Close an open ensemble by diagonalizing X = g D g^dagger and acting with
/// Lambda^{-1}, Lambda = g sqrt(D) / (det X)^{1/4}. The closed total area is
/// sqrt(4 lambda^2 - |C|^2).
ClosingResult close_ensemble(const SpinorEnsemble& e);

/// Same closing through a rotation of C onto +z followed by the boost
/// diag(mu, 1/mu). Independent cross-check of close_ensemble.
ClosingResult close_ensemble_by_boost(const SpinorEnsemble& e);

SpinorEnsemble apply_sl2c(const SL2CTransform& t, const SpinorEnsemble& e);
SpinorEnsemble apply_su2(const SU2Rotation& g, const SpinorEnsemble& e);
/// (Uz)_i = sum_j U_ij z_j. Throws DomainError unless ||U^dag U - I|| <= 1e-10.
SpinorEnsemble apply_unitary(const MatX& u, const SpinorEnsemble& e);

struct ObservableMatrices {
  MatX E;  // E_ij = <z_i|z_j>
  MatX F;  // F_ij = [z_i|z_j>
};

ObservableMatrices compute_observables(const SpinorEnsemble& e);

/// V_i . V_j from E and F respectively.
double dot_from_E(const ObservableMatrices& obs, int i, int j);
double dot_from_F(const ObservableMatrices& obs, int i, int j);

/// max |F_ij F_kl - F_ik F_jl + F_il F_jk| / max |F|^2 (0 for F = 0).
double plucker_residual(const MatX& f);

/// Lambda in SL(2,C) with z_i = Lambda w_i, from equal F matrices.
SL2CTransform match_by_F(const SpinorEnsemble& z, const SpinorEnsemble& w);

struct SU2Match {
  SU2Rotation g;
  /// lambda = 0: every g maps w onto z and identity is returned.
  bool arbitrary = false;
};

/// g in SU(2) with z_i = g w_i for two closed ensembles with equal F.
SU2Match match_by_F_closed(const SpinorEnsemble& z, const SpinorEnsemble& w);

/// Z_i = (zeta_i - zeta_1)/(zeta_3 - zeta_2), i >= 4 (0-based index 3 on).
std::vector<cplx> cross_ratios(const SpinorEnsemble& e);
/// Z_i = F_1i/F_23 * z0_2 z0_3 / (z0_1 z0_i).
std::vector<cplx> cross_ratios_from_F(const SpinorEnsemble& e);

UnitaryFrame reconstruct_frame(const SpinorEnsemble& e);
SpinorEnsemble ensemble_from_frame(const UnitaryFrame& f);

}  // namespace unpoly
