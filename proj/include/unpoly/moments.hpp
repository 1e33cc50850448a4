#pragma once

#include <array>
#include <string>
#include <vector>

#include "unpoly/spinor.hpp"
#include "unpoly/stats.hpp"

namespace unpoly {

/// coeff * pi^pi_power, kept symbolic so that products of sphere volumes can
/// be compared exactly.
struct PiMonomial {
  Rational coeff = 0;
  int pi_power = 0;
};

/// Volume of the unit sphere S^{2m-1}: 2 pi^m / (m-1)!.
PiMonomial sphere_volume_odd(int m);

/// rho_N[lambda] = lambda^{2N-4} / ((N-1)!(N-2)!)
Rational density_exact(int N, const Rational& lambda);
double density(int N, double lambda);
/// (pi/4) pi^{-2N} Vol(S^{2N-1}) Vol(S^{2N-3}) lambda^{2N-4}
PiMonomial density_sphere_form(int N, const Rational& lambda);

/// rho^0_N[lambda] = (2 lambda)^{2N-1} / (2N-1)!
Rational density_free_exact(int N, const Rational& lambda);
double density_free(int N, double lambda);

/// <V^n> = lambda^n (n+1)! (N-1)! / (N+n-1)!
Rational moment_V_exact(int N, const Rational& lambda, int n);
double moment_V(int N, double lambda, int n);
/// <V^n>^(0) = (2 lambda)^n (n+1)! (2N-1)! / (2N+n-1)!
Rational moment_V_free_exact(int N, const Rational& lambda, int n);
double moment_V_free(int N, double lambda, int n);

/// Second moments, all as coefficients of lambda^2.
struct PairCorrelations {
  Rational vv;            // <V_i V_j>, i != j
  Rational comp_same;     // <V_i^a V_i^b> / delta^{ab}
  Rational comp_diff;     // <V_i^a V_j^b> / delta^{ab}, i != j
  Rational vv_free;       // <V_i V_j>^(0)
  Rational comp_diff_free;
};
PairCorrelations corr_pairs(int N);

/// Theta^{ab} = sum_i V_i^a V_i^b - delta^{ab} V_i^2 / 3
using Theta = std::array<std::array<double, 3>, 3>;
Theta theta_tensor(const std::vector<Vec3>& v);
/// Tr Theta^2 = sum_ij (V_i.V_j)^2 - (sum_i V_i^2)^2 / 3
double tr_theta2(const std::vector<Vec3>& v);

/// Exact <Tr Theta^2> / lambda^4 from Weingarten integrals (N >= 4).
Rational tr_theta2_exact(int N);

/// Isotropic <Theta^{ab} Theta^{cd}> = a d^{ab}d^{cd} + b (d^{ac}d^{bd} + d^{ad}d^{bc}),
/// coefficients of lambda^4.
struct ThetaCorrelation {
  Rational a;
  Rational b;
  std::string status;
};
/// Fixed by tracelessness and <Tr Theta^2>: a = -2b/3, b = <Tr Theta^2>/10.
ThetaCorrelation theta_correlation_exact(int N);
/// The closed form as printed in the literature; flagged unverified.
ThetaCorrelation theta_correlation_printed(int N);
/// The printed <Tr Theta^2> = 4 lambda^2 (N-4)/(N(N+1)(N+2)(N+3)), for reports.
Rational tr_theta2_printed(int N);

/// int dU U_{ij} conj(U_{alpha beta}) U_{mu nu} conj(U_{kl}) from the
/// trivial + adjoint decomposition (1/N^2 and 1/(N^2-1) blocks).
Rational quartic_unitary_integral(int i, int j, int alpha, int beta, int mu, int nu, int k,
                                  int l, int N);

/// A single exact-vs-MC comparison row.
struct MomentReport {
  std::string observable;
  int N = 0;
  double lambda = 0.0;
  double exact = 0.0;
  Estimate mc;
};

/// Closed-ensemble moments against sample_polyhedron.
std::vector<MomentReport> moment_table_closed(int N, double lambda, const McConfig& cfg);
/// Free-ensemble moments against sample_free_ensemble.
std::vector<MomentReport> moment_table_free(int N, double lambda, const McConfig& cfg);
/// Both tables, closed rows first.
std::vector<MomentReport> moment_table(int N, double lambda, const McConfig& cfg);

}  // namespace unpoly
