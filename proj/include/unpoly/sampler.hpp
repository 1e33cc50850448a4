#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "unpoly/spinor.hpp"

namespace unpoly {

/// Same (seed, stream) gives the same sequence.
struct RandomSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

using Rng = std::mt19937_64;
Rng make_rng(RandomSeed s);

/// Angles indexed by k-1 for angle k. theta_1..theta_N, phi_k and alpha_k for
/// k >= 2, beta_k for k >= 3; unused slots are ignored.
struct AngleCoordinates {
  std::vector<double> theta, phi, alpha, beta;
  int size() const { return static_cast<int>(theta.size()); }
};

/// Two orthonormal columns from the recursive parametrization (lambda = 1).
UnitaryFrame angles_to_columns(const AngleCoordinates& a);

/// Haar-distributed angles: alpha_k = arccos((1-u)^{1/(2k-2)}),
/// beta_k = arccos((1-u)^{1/(2k-4)}), phases uniform.
AngleCoordinates sample_angles(int n, Rng& rng);

SpinorEnsemble sample_polyhedron(int n, double lambda, Rng& rng);
SpinorEnsemble sample_polyhedron(int n, double lambda, RandomSeed seed);

/// Ginibre pair + Gram-Schmidt; same law as sample_polyhedron.
SpinorEnsemble sample_gaussian_closed(int n, double lambda, Rng& rng);

/// Complex Gaussian matrix, QR, column phases fixed by diag(R).
MatX sample_haar_unitary(int n, Rng& rng);
MatX sample_haar_unitary(int n, RandomSeed seed);

/// Dirichlet(2,...,2) norms scaled by 2 lambda, isotropic directions.
std::vector<Vec3> sample_free_ensemble(int n, double lambda, Rng& rng);

/// Two Haar-random orthonormal real N-vectors (Gaussian + Gram-Schmidt).
void sample_orthonormal_pair(int n, Rng& rng, std::vector<double>& c1,
                             std::vector<double>& c2);

}  // namespace unpoly
