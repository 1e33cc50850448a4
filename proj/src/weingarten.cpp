#include "unpoly/weingarten.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace unpoly {

int weight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

bool is_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

std::string format_partition(const Partition& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (int x : image_) {
    if (x < 0 || x >= size() || seen[static_cast<size_t>(x)]) {
      throw DomainError("Permutation: image is not a bijection");
    }
    seen[static_cast<size_t>(x)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycle_type(const Partition& ct) {
  if (!is_partition(ct)) throw DomainError("from_cycle_type: not a partition");
  std::vector<int> im(static_cast<size_t>(weight(ct)));
  int start = 0;
  for (int len : ct) {
    for (int t = 0; t < len; ++t) im[static_cast<size_t>(start + t)] = start + (t + 1) % len;
    start += len;
  }
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(image_.size());
  for (int m = 0; m < size(); ++m) im[static_cast<size_t>(image_[static_cast<size_t>(m)])] = m;
  return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation& o) const {
  if (o.size() != size()) throw DomainError("Permutation: size mismatch");
  std::vector<int> im(image_.size());
  for (int m = 0; m < size(); ++m) im[static_cast<size_t>(m)] = (*this)(o(m));
  return Permutation(std::move(im));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(image_.size(), 0);
  for (int m = 0; m < size(); ++m) {
    if (seen[static_cast<size_t>(m)]) continue;
    std::vector<int> c;
    for (int x = m; !seen[static_cast<size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<size_t>(x)] = 1;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Partition Permutation::cycle_type() const {
  Partition p;
  for (const auto& c : cycles()) p.push_back(static_cast<int>(c.size()));
  std::sort(p.rbegin(), p.rend());
  return p;
}

int Permutation::cycle_count() const { return static_cast<int>(cycles().size()); }

std::vector<Permutation> all_permutations(int n) {
  if (n < 0) throw DomainError("all_permutations: negative n");
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = 1; p <= std::min(remaining, max_part); ++p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

Partition from_beta(std::vector<int> beta) {
  std::sort(beta.rbegin(), beta.rend());
  const int l = static_cast<int>(beta.size());
  Partition p;
  for (int i = 0; i < l; ++i) {
    const int part = beta[static_cast<size_t>(i)] - (l - 1 - i);
    if (part > 0) p.push_back(part);
  }
  return p;
}

long long mn_rec(const Partition& lambda, const Partition& ct,
                 std::map<std::pair<Partition, Partition>, long long>& memo) {
  if (ct.empty()) return lambda.empty() ? 1 : 0;
  auto key = std::make_pair(lambda, ct);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = ct.front();
  const Partition rest(ct.begin() + 1, ct.end());
  const int l = static_cast<int>(lambda.size());
  std::vector<int> beta(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i) beta[static_cast<size_t>(i)] = lambda[static_cast<size_t>(i)] + (l - 1 - i);
  long long total = 0;
  for (int i = 0; i < l; ++i) {
    const int b = beta[static_cast<size_t>(i)];
    const int target = b - r;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int c : beta) between += (c > target && c < b) ? 1 : 0;
    auto moved = beta;
    moved[static_cast<size_t>(i)] = target;
    const long long sub = mn_rec(from_beta(moved), rest, memo);
    total += (between % 2 == 0) ? sub : -sub;
  }
  memo.emplace(std::move(key), total);
  return total;
}

struct Pauli {
  int phase = 0;  // power of i
  int idx = 0;    // 0 = identity
};

Pauli mul(Pauli a, Pauli b) {
  Pauli r{(a.phase + b.phase) % 4, 0};
  if (a.idx == 0) {
    r.idx = b.idx;
  } else if (b.idx == 0) {
    r.idx = a.idx;
  } else if (a.idx == b.idx) {
    r.idx = 0;
  } else {
    r.idx = 6 - a.idx - b.idx;
    const bool cyclic = (b.idx - a.idx + 3) % 3 == 1;
    r.phase = (r.phase + (cyclic ? 1 : 3)) % 4;
  }
  return r;
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 0) throw DomainError("partitions: negative n");
  std::vector<Partition> out;
  Partition cur;
  partitions_rec(n, n, cur, out);
  for (auto& p : out) std::sort(p.rbegin(), p.rend());
  std::sort(out.begin(), out.end());
  return out;
}

BigInt class_size(const Partition& ct) {
  if (!is_partition(ct)) throw DomainError("class_size: not a partition");
  std::map<int, int> mult;
  for (int c : ct) ++mult[c];
  BigInt z = 1;
  for (auto [len, m] : mult) {
    for (int t = 0; t < m; ++t) z *= len;
    z *= factorial(m);
  }
  return factorial(weight(ct)) / z;
}

long long sn_character(const Partition& lambda, const Partition& ct) {
  if (!is_partition(lambda) || !is_partition(ct)) throw DomainError("sn_character: not a partition");
  if (weight(lambda) != weight(ct)) throw DomainError("sn_character: weight mismatch");
  thread_local std::map<std::pair<Partition, Partition>, long long> memo;
  return mn_rec(lambda, ct, memo);
}

BigInt schur_dimension(const Partition& lambda, int N) {
  if (!is_partition(lambda)) throw DomainError("schur_dimension: not a partition");
  if (static_cast<int>(lambda.size()) > N) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < static_cast<int>(lambda.size()); ++i) {
    for (int j = 0; j < lambda[static_cast<size_t>(i)]; ++j) {
      int below = 0;
      for (int r = i + 1; r < static_cast<int>(lambda.size()) && lambda[static_cast<size_t>(r)] > j; ++r) ++below;
      const int hook = (lambda[static_cast<size_t>(i)] - j - 1) + below + 1;
      num *= (N + j - i);
      den *= hook;
    }
  }
  return num / den;
}

BigInt catalan(int c) {
  if (c < 0) throw DomainError("catalan: negative index");
  return factorial(2 * c) / (factorial(c) * factorial(c + 1));
}

Rational weingarten_exact(const Partition& ct, int N) {
  if (!is_partition(ct)) throw DomainError("weingarten_exact: not a partition");
  const int n = weight(ct);
  if (N < n) throw DomainError("Gram matrix singular regime: N < n");
  thread_local std::map<std::pair<Partition, int>, Rational> memo;
  auto key = std::make_pair(ct, N);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const Partition identity_ct(static_cast<size_t>(n), 1);
  Rational sum = 0;
  for (const auto& lam : partitions(n)) {
    const BigInt dim = sn_character(lam, identity_ct);
    sum += Rational(dim * dim * sn_character(lam, ct), schur_dimension(lam, N));
  }
  const BigInt nf = factorial(n);
  sum /= Rational(nf * nf);
  memo.emplace(std::move(key), sum);
  return sum;
}

Rational weingarten_exact(const Permutation& sigma, int N) {
  return weingarten_exact(sigma.cycle_type(), N);
}

double weingarten_asymptotic(const Partition& ct, int N) {
  if (!is_partition(ct)) throw DomainError("weingarten_asymptotic: not a partition");
  const int n = weight(ct);
  const int len = n - static_cast<int>(ct.size());
  double coeff = 1.0;
  for (int c : ct) coeff *= ((c - 1) % 2 ? -1.0 : 1.0) * to_double(catalan(c - 1));
  return coeff * std::pow(static_cast<double>(N), -(n + len));
}

double weingarten_asymptotic(const Permutation& sigma, int N) {
  return weingarten_asymptotic(sigma.cycle_type(), N);
}

namespace {

std::map<Partition, Rational> wg_table(int n, int N) {
  std::map<Partition, Rational> t;
  for (const auto& p : partitions(n)) t.emplace(p, weingarten_exact(p, N));
  return t;
}

}  // namespace

Rational polynomial_integral(const std::vector<int>& i, const std::vector<int>& j,
                             const std::vector<int>& k, const std::vector<int>& l, int N) {
  const size_t n = i.size();
  if (j.size() != n || k.size() != n || l.size() != n) {
    throw DomainError("polynomial_integral: index tuples differ in length");
  }
  if (n > 6) throw DomainError("polynomial_integral: degree above 6");
  for (const auto* v : {&i, &j, &k, &l})
    for (int x : *v)
      if (x < 0 || x >= N) throw DomainError("polynomial_integral: index out of range");
  const int ni = static_cast<int>(n);
  if (N < ni) throw DomainError("Gram matrix singular regime: N < n");
  std::vector<Permutation> rows, cols;
  for (const auto& p : all_permutations(ni)) {
    bool ok_row = true, ok_col = true;
    for (int m = 0; m < ni; ++m) {
      ok_row = ok_row && i[static_cast<size_t>(m)] == k[static_cast<size_t>(p(m))];
      ok_col = ok_col && j[static_cast<size_t>(m)] == l[static_cast<size_t>(p(m))];
    }
    if (ok_row) rows.push_back(p);
    if (ok_col) cols.push_back(p);
  }
  if (rows.empty() || cols.empty()) return 0;
  const auto wg = wg_table(ni, N);
  Rational sum = 0;
  for (const auto& s : rows)
    for (const auto& t : cols) sum += wg.at((s * t.inverse()).cycle_type());
  return sum;
}

std::vector<std::vector<BigInt>> gram_matrix(int n, int N) {
  const auto perms = all_permutations(n);
  std::vector<std::vector<BigInt>> m(perms.size(), std::vector<BigInt>(perms.size()));
  for (size_t a = 0; a < perms.size(); ++a)
    for (size_t b = 0; b < perms.size(); ++b)
      m[a][b] = boost::multiprecision::pow(BigInt(N),
                                           static_cast<unsigned>((perms[a].inverse() * perms[b]).cycle_count()));
  return m;
}

bool gram_inverse_check(int n, int N) {
  if (N < n) throw DomainError("Gram matrix singular regime: N < n");
  const auto perms = all_permutations(n);
  const auto wg = wg_table(n, N);
  const size_t sz = perms.size();
  std::vector<Permutation> inv;
  for (const auto& p : perms) inv.push_back(p.inverse());
  // Wg(sigma^{-1} tau) and N^{l(tau^{-1} rho)} as dense tables.
  std::vector<std::vector<Rational>> w(sz, std::vector<Rational>(sz));
  std::vector<std::vector<BigInt>> g(sz, std::vector<BigInt>(sz));
  for (size_t a = 0; a < sz; ++a)
    for (size_t b = 0; b < sz; ++b) {
      w[a][b] = wg.at((inv[a] * perms[b]).cycle_type());
      g[a][b] = boost::multiprecision::pow(BigInt(N), static_cast<unsigned>((inv[a] * perms[b]).cycle_count()));
    }
  for (size_t s = 0; s < sz; ++s)
    for (size_t r = 0; r < sz; ++r) {
      Rational acc = 0;
      for (size_t t = 0; t < sz; ++t) acc += w[s][t] * g[t][r];
      if (acc != (s == r ? 1 : 0)) return false;
    }
  return true;
}

Rational vector_polynomial_average(const std::vector<VectorFactor>& monomial, int N) {
  const int n = static_cast<int>(monomial.size());
  if (n > 6) throw DomainError("vector_polynomial_average: degree above 6");
  for (const auto& f : monomial) {
    if (f.face < 0 || f.face >= N) throw DomainError("vector_polynomial_average: face out of range");
    if (f.component < 0 || f.component > 3) throw DomainError("vector_polynomial_average: bad component");
  }
  if (n == 0) return 1;
  if (N < n) throw DomainError("Gram matrix singular regime: N < n");
  const auto perms = all_permutations(n);
  const auto wg = wg_table(n, N);
  // Pauli traces per tau: prod over cycles of Tr(sigma^{a_m} sigma^{a_tau(m)} ...).
  std::vector<std::pair<Permutation, std::pair<long long, long long>>> taus;
  for (const auto& t : perms) {
    long long re = 1, im = 0;
    for (const auto& c : t.cycles()) {
      Pauli acc;
      for (int m : c) acc = mul(acc, Pauli{0, monomial[static_cast<size_t>(m)].component});
      if (acc.idx != 0) {
        re = im = 0;
        break;
      }
      // trace 2 i^phase
      const long long tr_re = acc.phase == 0 ? 2 : (acc.phase == 2 ? -2 : 0);
      const long long tr_im = acc.phase == 1 ? 2 : (acc.phase == 3 ? -2 : 0);
      const long long nre = re * tr_re - im * tr_im;
      const long long nim = re * tr_im + im * tr_re;
      re = nre;
      im = nim;
    }
    if (re != 0 || im != 0) taus.push_back({t, {re, im}});
  }
  Rational sum_re = 0, sum_im = 0;
  for (const auto& s : perms) {
    bool ok = true;
    for (int m = 0; m < n && ok; ++m) ok = monomial[static_cast<size_t>(m)].face == monomial[static_cast<size_t>(s(m))].face;
    if (!ok) continue;
    for (const auto& [t, tr] : taus) {
      const Rational& w = wg.at((s * t.inverse()).cycle_type());
      sum_re += w * tr.first;
      sum_im += w * tr.second;
    }
  }
  if (sum_im != 0) throw NumericError("vector_polynomial_average: non-real result");
  return sum_re;
}

}  // namespace unpoly
