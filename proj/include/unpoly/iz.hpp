#pragma once

#include <vector>

#include "unpoly/common.hpp"
#include "unpoly/stats.hpp"

namespace unpoly {

/// Eigenvalues of X and Y and the coupling theta.
struct SpectralPair {
  std::vector<double> x;
  std::vector<double> y;
  double theta = 0.0;
};

/// int dU exp(i theta Tr(Y U^dag X U))
///   = prod_{p<N} p! det(e^{i theta x_j y_k}) / (Delta(X) Delta(Y) (i theta)^{N(N-1)/2}).
/// Evaluated in 50-digit arithmetic. Throws DomainError on near-degenerate
/// spectra (use iz_degenerate_Y for Y = diag(1,1,0,...)).
cplx iz_determinant(const SpectralPair& p);

/// Haar Monte Carlo of the same integral.
ComplexEstimate iz_mc(const SpectralPair& p, const McConfig& cfg);

/// (N-1)! (n+1) / (n+N-1)!: coefficient of (i theta lambda)^n in <e^{i theta V}>.
Rational area_series_coefficient(int N, int n);
/// 1 + sum_{n=1}^{n_max} coefficient(n) (i theta lambda)^n
cplx area_generating_series(int N, double lambda, double theta, int n_max);

/// Y = diag(1,1,0,...,0) taken as a confluent limit of iz_determinant:
///   det/Delta(Y) -> (i theta)^{1+(N-3)(N-2)/2} / prod_{m<=N-3} m!
///                   * det[e^{i theta x}, x e^{i theta x}, 1, x, ..., x^{N-3}].
/// 4 <= N <= 8, distinct x.
cplx iz_degenerate_Y(const std::vector<double>& x, double theta);

/// The same limit from the permutation-sum expression as it is usually
/// printed (powers x^{N-2}..x, prefactor i^{N(N+1)/2} theta^{3(N-3)+1} over
/// (N-1)! prod_{k<=N-3} k!), normalized exactly like iz_degenerate_Y. Kept for
/// comparison only.
cplx iz_degenerate_Y_printed(const std::vector<double>& x, double theta);

/// Two-point Richardson extrapolation of iz_determinant at
/// Y = (1 + eps c1, 1 + eps c2, eps c3, ...) for eps in {1e-3, 5e-4}.
cplx iz_degenerate_Y_extrapolated(const std::vector<double>& x, double theta);

}  // namespace unpoly
