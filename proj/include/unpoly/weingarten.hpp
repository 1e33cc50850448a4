#pragma once

#include <vector>

#include "unpoly/common.hpp"

namespace unpoly {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

int weight(const Partition& p);
bool is_partition(const Partition& p);
std::string format_partition(const Partition& p);

/// Permutation of {0..n-1}, stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int n);
  /// Permutation with the given cycle type, cycles laid out consecutively.
  static Permutation from_cycle_type(const Partition& ct);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int m) const { return image_[static_cast<size_t>(m)]; }
  const std::vector<int>& image() const { return image_; }

  Permutation inverse() const;
  /// (this * o)(m) = this(o(m))
  Permutation operator*(const Permutation& o) const;
  bool operator==(const Permutation& o) const { return image_ == o.image_; }

  std::vector<std::vector<int>> cycles() const;
  Partition cycle_type() const;
  /// l(sigma), number of cycles.
  int cycle_count() const;
  /// |sigma| = n - l(sigma), minimal number of transpositions.
  int length() const { return size() - cycle_count(); }

 private:
  std::vector<int> image_;
};

/// All n! permutations in lexicographic order of image arrays.
std::vector<Permutation> all_permutations(int n);

/// Partitions of n in lexicographic order of their part sequences.
std::vector<Partition> partitions(int n);

/// n! / z_ct
BigInt class_size(const Partition& ct);

/// chi^lambda at cycle type ct, Murnaghan-Nakayama with a thread-local memo.
long long sn_character(const Partition& lambda, const Partition& ct);

/// Hook-content formula; 0 when lambda has more than N rows.
BigInt schur_dimension(const Partition& lambda, int N);

BigInt catalan(int c);

/// Wg^{(n)}_N at the class ct (n = weight(ct)). Requires N >= n.
Rational weingarten_exact(const Partition& ct, int N);
Rational weingarten_exact(const Permutation& sigma, int N);

/// Leading large-N term prod_c (-1)^{|c|} Catalan(|c|) N^{-(n+|sigma|)}.
double weingarten_asymptotic(const Permutation& sigma, int N);
double weingarten_asymptotic(const Partition& ct, int N);

/// int dU U_{i1 j1}..U_{in jn} conj(U_{k1 l1})..conj(U_{kn ln}), indices 0-based.
Rational polynomial_integral(const std::vector<int>& i, const std::vector<int>& j,
                             const std::vector<int>& k, const std::vector<int>& l, int N);

/// M_{sigma tau} = N^{l(sigma^{-1} tau)}, rows/cols in all_permutations order.
std::vector<std::vector<BigInt>> gram_matrix(int n, int N);
/// sum_tau Wg(sigma^{-1} tau) N^{l(tau^{-1} rho)} == delta_{sigma rho}, exactly.
bool gram_inverse_check(int n, int N);

/// Component a of face vector f: a = 0 is the norm V_f, a = 1,2,3 the x,y,z
/// components.
struct VectorFactor {
  int face = 0;
  int component = 0;
};

/// <prod V_f^a> over Haar-uniform closed ensembles with lambda = 1. Scale by
/// lambda^degree. Degree <= 6, N >= degree.
Rational vector_polynomial_average(const std::vector<VectorFactor>& monomial, int N);

}  // namespace unpoly
