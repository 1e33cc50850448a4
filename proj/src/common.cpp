#include "unpoly/common.hpp"

namespace unpoly {

BigInt factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// C(n, k) with C(-1, 0) = 1 and zero outside 0 <= k <= n.
BigInt binomial(long long n, long long k) {
  if (k == 0) return 1;
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

Rational rpow(const Rational& x, int k) {
  if (k < 0) throw DomainError("rpow: negative exponent");
  Rational r = 1;
  Rational base = x;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

}  // namespace unpoly
