#pragma once

#include <string>
#include <vector>

#include "unpoly/spinor.hpp"
#include "unpoly/stats.hpp"

namespace unpoly {

/// A spin stored as the integer 2j.
struct Spin {
  int twice = 0;

  static Spin from_twice(int t);
  /// Accepts integers and half-integers only.
  static Spin from_value(double j);
  static Spin parse(const std::string& s);
  double value() const { return 0.5 * twice; }
  std::string str() const;
  bool operator==(const Spin&) const = default;
};

/// d_N[J] = C(N+J-1,J) C(N+J-2,J) / (J+1). Zero for half-integer J.
BigInt dimension(int N, Spin J);

/// d_N[J, K] with a = J+K, b = J-K: (2K+1)/(a+1) C(N+a-1,a) C(N+b-2,b).
/// Zero when K > J or the integrality classes differ.
BigInt dimension_fixed_spin(int N, Spin J, Spin K);

/// Multiplicity of spin K in the tensor product of the given spins.
BigInt covariant_count(const std::vector<Spin>& spins, Spin K);
/// Multiplicity of spin 0.
BigInt dimension_by_coupling(const std::vector<Spin>& spins);

/// Sum of covariant_count over all ordered spin lists of length N with total
/// sum_i j_i = J (brute force).
BigInt covariant_by_enumeration(int N, Spin J, Spin K);
BigInt dimension_by_enumeration(int N, Spin J);

struct SumRuleReport {
  BigInt target;  // d_{N+1}[J]
  BigInt form_a;  // sum_{K <= J} d_N[J, K]
  BigInt form_b;  // sum_K d_N[J-K, K]
  bool a_holds = false;
  bool b_holds = false;
};
SumRuleReport sum_rule_check(int N, Spin J);

/// Number of intertwiners with spin j on one given leg: d_{N-1}[J-j, j].
BigInt leg_count(int N, Spin J, Spin j);

/// Closed forms: n = 1 gives <2j> = 2J/N, n = 2 the Casimir average
/// <4j(j+1)> = 6J(J+N)/(N(N+1)).
Rational trace_moment_V(int N, Spin J, int n);
/// The same two observables from the leg spectrum.
Rational trace_moment_V_spectral(int N, Spin J, int n);
/// <(2j)^n> from the leg spectrum.
Rational power_moment(int N, Spin J, int n);

struct FactorialMomentReport {
  Rational spectral;     // <2j(2j+1)...(2j+m)>
  Rational closed_form;  // J((m+2)J+2N+m-2)(m+1)! (N+J+m-2)!(N-1)! / ((N+J-1)!(N+m)!)
  bool agree = false;
};
FactorialMomentReport factorial_moment(int N, Spin J, int m);

struct SpinCorrelations {
  Rational vv;          // J^2 2(2N-1)/((N-1)N(N+1)) - 6J/((N-1)(N+1))
  Rational vdotv;       // -6J(J+N)/((N-1)N(N+1))
  Rational vv_number;   // <(2j_i)(2j_k)> from the two-leg spectrum
  Rational vdotv_enum;  // <V_i . V_k> from the two-leg spectrum
};
SpinCorrelations spin_correlations(int N, Spin J);

/// s_{(J,J)}(e^{i theta_1}, ..., e^{i theta_N}) by Jacobi-Trudi.
cplx character(int N, Spin J, const std::vector<double>& theta);
/// Bialternant (Vandermonde ratio) form, for well-separated angles.
cplx character_bialternant(int N, Spin J, const std::vector<double>& theta);

/// (det sum_i |w_i><z_i|)^J
cplx coherent_overlap(Spin J, const SpinorEnsemble& z, const SpinorEnsemble& w);
/// (1/2 sum_ij [w_i|w_j> <z_j|z_i])^J
cplx coherent_overlap_bracket_form(Spin J, const SpinorEnsemble& z, const SpinorEnsemble& w);
/// (1/2 sum_ij |F_ij|^2)^J
double coherent_norm(Spin J, const SpinorEnsemble& z);

/// E[det(sum_i |z_i><z_i|)^J] / (J!(J+1)!) over standard complex Gaussian
/// spinors. N <= 8, J <= 4.
Estimate dimension_mc(int N, Spin J, const McConfig& cfg);
/// E[(1/2 sum_ij e^{i(theta_i+theta_j)} |F_ij|^2)^J] / (J!(J+1)!).
ComplexEstimate character_mc(int N, Spin J, const std::vector<double>& theta, const McConfig& cfg);

/// J^{2N-4}/((N-1)!(N-2)!) + N J^{2N-5}/((N-1)!(N-3)!), N >= 3.
double asymptotic_dimension(int N, Spin J);

}  // namespace unpoly
