#include "unpoly/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace unpoly {

namespace {

constexpr double kNetworkTol = 1e-10;
constexpr double kAngleTol = 1e-12;

}  // namespace

ClosurePerimeter closure_and_perimeter(const PolygonConfig& c) {
  ClosurePerimeter out{0.0, 0.0};
  for (const cplx& z : c.z) {
    out.closure += z * z;
    out.perimeter += std::norm(z);
  }
  return out;
}

PolygonClosing close_polygon(const PolygonConfig& c) {
  const auto [closure, perimeter] = closure_and_perimeter(c);
  if (!(perimeter > 0.0)) throw DomainError("close_polygon: all edges vanish");
  if (std::abs(closure) >= perimeter * (1.0 - 1e-14)) {
    throw DomainError("close_polygon: degenerate configuration (|sum z^2| = perimeter)");
  }
  PolygonClosing out;
  out.theta = closure == cplx(0.0) ? 0.0 : -0.5 * std::arg(closure);
  const cplx rot = std::polar(1.0, out.theta);
  double r2 = 0.0, i2 = 0.0;
  std::vector<cplx> z;
  z.reserve(c.z.size());
  for (const cplx& x : c.z) {
    const cplx y = rot * x;
    r2 += y.real() * y.real();
    i2 += y.imag() * y.imag();
    z.push_back(y);
  }
  out.eta = 0.25 * std::log(i2 / r2);
  const double up = std::exp(out.eta), down = std::exp(-out.eta);
  for (auto& y : z) y = {y.real() * up, y.imag() * down};
  out.closed.z = std::move(z);
  return out;
}

double Polygon::perimeter() const { return std::accumulate(lengths.begin(), lengths.end(), 0.0); }

double Polygon::area() const {
  double a = 0.0;
  const size_t n = vertices.size();
  for (size_t k = 0; k < n; ++k) {
    const cplx p = vertices[k], q = vertices[(k + 1) % n];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

Polygon reconstruct(const PolygonConfig& c) {
  if (c.size() < 2) throw DomainError("reconstruct: need at least two edges");
  const auto [closure, perimeter] = closure_and_perimeter(c);
  for (const cplx& z : c.z)
    if (std::norm(z) == 0.0) throw DomainError("reconstruct: zero-length edge");
  if (std::abs(closure) > 1e-10 * perimeter) throw DomainError("reconstruct: configuration is not closed");

  struct Edge {
    double angle;
    cplx normal;
  };
  std::vector<Edge> edges;
  for (const cplx& z : c.z) {
    const cplx n = z * z;
    edges.push_back({std::arg(n), n});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.angle < b.angle; });

  Polygon p;
  for (const auto& e : edges) {
    const bool same = !p.normals.empty() &&
                      (std::abs(e.angle - std::arg(p.normals.back())) <= kAngleTol);
    if (same) {
      p.normals.back() += e.normal;
      ++p.multiplicity.back();
    } else {
      p.normals.push_back(e.normal);
      p.multiplicity.push_back(1);
    }
  }
  // First and last may coincide across the branch cut at +-pi.
  if (p.normals.size() > 1 &&
      std::abs(std::abs(std::arg(p.normals.front()) - std::arg(p.normals.back())) - 2.0 * std::numbers::pi) <=
          kAngleTol) {
    p.normals.front() += p.normals.back();
    p.multiplicity.front() += p.multiplicity.back();
    p.normals.pop_back();
    p.multiplicity.pop_back();
  }

  cplx v = 0.0;
  for (const cplx& n : p.normals) {
    p.vertices.push_back(v);
    p.lengths.push_back(std::abs(n));
    v += cplx(n.imag(), -n.real());
  }
  p.closure_residual = std::abs(v);
  cplx centroid = 0.0;
  for (const cplx& x : p.vertices) centroid += x;
  centroid /= static_cast<double>(p.vertices.size());
  for (cplx& x : p.vertices) x -= centroid;

  p.convex = true;
  const size_t m = p.normals.size();
  for (size_t k = 0; k < m; ++k) {
    const cplx a = p.normals[k], b = p.normals[(k + 1) % m];
    // Edge vectors are the normals rotated by -pi/2, so their cross product
    // equals that of the normals.
    const double cross = a.real() * b.imag() - a.imag() * b.real();
    if (cross < -1e-12 * perimeter * perimeter) p.convex = false;
  }
  return p;
}

PolygonConfig sample_polygon(int n, double perimeter, Rng& rng) {
  if (n < 2) throw DomainError("sample_polygon requires N >= 2");
  if (!(perimeter > 0.0)) throw DomainError("sample_polygon requires a positive perimeter");
  std::vector<double> c1, c2;
  sample_orthonormal_pair(n, rng, c1, c2);
  const double s = std::sqrt(0.5 * perimeter);
  PolygonConfig out;
  out.z.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.z.emplace_back(s * c1[static_cast<size_t>(i)], s * c2[static_cast<size_t>(i)]);
  return out;
}

PolygonConfig sample_polygon(int n, double perimeter, RandomSeed seed) {
  Rng rng = make_rng(seed);
  return sample_polygon(n, perimeter, rng);
}

PolygonConfig apply_orthogonal(const Eigen::MatrixXd& o, const PolygonConfig& c) {
  const int n = c.size();
  if (o.rows() != n || o.cols() != n) throw DomainError("apply_orthogonal: size mismatch");
  if ((o.transpose() * o - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("apply_orthogonal: matrix is not orthogonal");
  }
  PolygonConfig out;
  out.z.assign(c.z.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.z[static_cast<size_t>(i)] += o(i, j) * c.z[static_cast<size_t>(j)];
  return out;
}

PolygonConfig on_generator(int i, int j, double t, const PolygonConfig& c) {
  const int n = c.size();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw DomainError("on_generator: bad plane");
  PolygonConfig out = c;
  const cplx zi = c.z[static_cast<size_t>(i)], zj = c.z[static_cast<size_t>(j)];
  out.z[static_cast<size_t>(i)] = std::cos(t) * zi - std::sin(t) * zj;
  out.z[static_cast<size_t>(j)] = std::sin(t) * zi + std::cos(t) * zj;
  return out;
}

NetworkReport validate_network(const ComplexNetwork& net) {
  const int nv = static_cast<int>(net.vertices.size());
  std::vector<cplx> closure(static_cast<size_t>(nv), 0.0);
  std::vector<double> scale(static_cast<size_t>(nv), 0.0);
  NetworkReport r;
  for (int l = 0; l < static_cast<int>(net.links.size()); ++l) {
    const auto& link = net.links[static_cast<size_t>(l)];
    if (link.source < 0 || link.source >= nv || (link.target && (*link.target < 0 || *link.target >= nv))) {
      throw DomainError("validate_network: link endpoint out of range");
    }
    closure[static_cast<size_t>(link.source)] += link.z_source * link.z_source;
    scale[static_cast<size_t>(link.source)] += std::norm(link.z_source);
    if (link.target) {
      closure[static_cast<size_t>(*link.target)] += link.z_target * link.z_target;
      scale[static_cast<size_t>(*link.target)] += std::norm(link.z_target);
      const double ls = std::norm(link.z_source), lt = std::norm(link.z_target);
      const double s = std::max(ls, lt);
      const double mismatch = s > 0.0 ? std::abs(ls - lt) / s : 0.0;
      r.links.push_back({l, mismatch});
      if (mismatch > kNetworkTol) r.pass = false;
    }
  }
  for (int v = 0; v < nv; ++v) {
    const double s = scale[static_cast<size_t>(v)];
    const double res = s > 0.0 ? std::abs(closure[static_cast<size_t>(v)]) / s : 0.0;
    r.vertices.push_back({v, res});
    if (res > kNetworkTol) r.pass = false;
  }
  return r;
}

ComplexNetwork two_triangle_network() {
  const cplx a = 1.0, b = std::polar(1.0, std::numbers::pi / 3), c = std::polar(1.0, 2 * std::numbers::pi / 3);
  ComplexNetwork n;
  n.vertices = {"A", "B"};
  n.links = {
      {0, 1, a, a},
      {0, std::nullopt, b, 0.0},
      {0, std::nullopt, c, 0.0},
      {1, std::nullopt, b, 0.0},
      {1, std::nullopt, c, 0.0},
  };
  return n;
}

}  // namespace unpoly
