#pragma once
// Independent reference implementations used only by the tests.

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Weight multiplicities of a spin-j irrep as a map 2m -> count.
inline std::map<int, long long> irrep_weights(int twice_j) {
  std::map<int, long long> w;
  for (int m = -twice_j; m <= twice_j; m += 2) w[m] = 1;
  return w;
}

inline std::map<int, long long> tensor(const std::map<int, long long>& a,
                                       const std::map<int, long long>& b) {
  std::map<int, long long> r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) r[ma + mb] += ca * cb;
  return r;
}

// Multiplicity of spin K in the tensor product: n(2m = 2K) - n(2m = 2K + 2).
inline long long multiplicity(const std::vector<int>& twice_spins, int twice_k) {
  std::map<int, long long> w{{0, 1}};
  for (int t : twice_spins) w = tensor(w, irrep_weights(t));
  auto get = [&](int m) { auto it = w.find(m); return it == w.end() ? 0LL : it->second; };
  return get(twice_k) - get(twice_k + 2);
}

// Sum of multiplicities over ordered lists of N spins j_i >= 0 with
// sum_i j_i = J.
inline long long count_over_spins(int n, int twice_J, int twice_k) {
  long long total = 0;
  std::vector<int> s(static_cast<size_t>(n), 0);
  const int target = twice_J;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      s[static_cast<size_t>(i)] = left;
      total += multiplicity(s, twice_k);
      return;
    }
    for (int t = 0; t <= left; ++t) {
      s[static_cast<size_t>(i)] = t;
      rec(i + 1, left - t);
    }
  };
  rec(0, target);
  return total;
}

inline long long fact(int n) {
  long long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Midpoint quadrature of the N = 2 Itzykson-Zuber integral; |U_11|^2 is
// uniform on [0, 1] under Haar measure.
inline std::complex<double> iz_two_by_two(double x1, double x2, double y1, double y2,
                                          double theta, int steps = 200000) {
  std::complex<double> acc = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double c = (k + 0.5) / steps;
    const double t = y1 * (x1 * c + x2 * (1 - c)) + y2 * (x1 * (1 - c) + x2 * c);
    acc += std::exp(std::complex<double>(0.0, theta * t));
  }
  return acc / static_cast<double>(steps);
}

}  // namespace oracle
