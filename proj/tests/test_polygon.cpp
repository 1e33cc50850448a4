#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "unpoly/polygon.hpp"
#include "unpoly/sampler.hpp"

using namespace unpoly;

namespace {

const double kPi = std::acos(-1.0);

cplx polar1(double a) { return std::polar(1.0, a); }

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

std::vector<double> sorted_lengths(const Polygon& p) {
  auto l = p.lengths;
  std::sort(l.begin(), l.end());
  return l;
}

}  // namespace

TEST_SUITE("polygon") {

TEST_CASE("closure and perimeter") {
  auto a = closure_and_perimeter({{1.0, cplx(0, 1)}});
  CHECK(std::abs(a.closure) < 1e-15);
  CHECK(a.perimeter == 2.0);
  auto b = closure_and_perimeter({{1.0, 1.0}});
  CHECK(a.perimeter == 2.0);
  CHECK(b.closure == cplx(2.0));
  auto sq = closure_and_perimeter({{1.0, polar1(kPi / 4), cplx(0, 1), polar1(3 * kPi / 4)}});
  CHECK(std::abs(sq.closure) < 1e-15);
  CHECK(sq.perimeter == doctest::Approx(4.0));
}

TEST_CASE("closing") {
  const auto done = close_polygon({{1.0, cplx(0, 1)}});
  CHECK(std::abs(done.eta) < 1e-15);
  CHECK_THROWS_AS(close_polygon({{1.0, 1.0}}), DomainError);
  const PolygonConfig c{{1.0, cplx(1, 0.5), cplx(0, 1)}};
  const auto r = close_polygon(c);
  const auto cp = closure_and_perimeter(r.closed);
  CHECK(std::abs(cp.closure) <= 1e-12 * cp.perimeter);
  const auto orig = closure_and_perimeter(c);
  CHECK(cp.perimeter == doctest::Approx(std::sqrt(orig.perimeter * orig.perimeter - std::norm(orig.closure))).epsilon(1e-12));
}

TEST_CASE("square and equilateral fixtures") {
  const Polygon sq = reconstruct({{1.0, polar1(kPi / 4), cplx(0, 1), polar1(3 * kPi / 4)}});
  REQUIRE(sq.lengths.size() == 4);
  for (double l : sq.lengths) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.area() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.convex);
  CHECK(sq.closure_residual <= 1e-10);
  // centroid at the origin
  cplx c = 0.0;
  for (auto v : sq.vertices) c += v;
  CHECK(std::abs(c) < 1e-12);

  const Polygon tri = reconstruct({{1.0, polar1(kPi / 3), polar1(2 * kPi / 3)}});
  CHECK(tri.perimeter() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(tri.area() == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-12));
  CHECK(tri.convex);
  for (size_t i = 0; i < 3; ++i)
    CHECK(std::abs(tri.vertices[(i + 1) % 3] - tri.vertices[i]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sign gauge") {
  Rng rng = make_rng({1, 0});
  const auto c = sample_polygon(7, 2.0, rng);
  auto f = c;
  f.z[1] = -f.z[1];
  f.z[4] = -f.z[4];
  const Polygon a = reconstruct(c), b = reconstruct(f);
  REQUIRE(a.vertices.size() == b.vertices.size());
  for (size_t i = 0; i < a.vertices.size(); ++i) CHECK(std::abs(a.vertices[i] - b.vertices[i]) < 1e-14);
}

TEST_CASE("parallel normals are merged") {
  // normals 1, 2, -3/2, -3/2: two parallel pairs, a degenerate 2-gon
  const double h = std::sqrt(1.5);
  const Polygon p = reconstruct({{1.0, std::sqrt(2.0), cplx(0, h), cplx(0, h)}});
  CHECK(p.lengths.size() == 2);
  CHECK(p.multiplicity[0] + p.multiplicity[1] == 4);
  CHECK(p.perimeter() == doctest::Approx(6.0));
  CHECK(p.lengths[0] == doctest::Approx(3.0));
  CHECK_THROWS_AS(reconstruct({{1.0, cplx(0, 1), 0.0}}), DomainError);
}

TEST_CASE("sampled polygons reconstruct and recover their normals") {
  Rng rng = make_rng({2, 0});
  for (int t = 0; t < 1000; ++t) {
    const int n = 3 + t % 10;
    const auto c = sample_polygon(n, 1.0, rng);
    const auto cp = closure_and_perimeter(c);
    CHECK(std::abs(cp.closure) <= 1e-12);
    const Polygon p = reconstruct(c);
    CHECK(p.convex);
    CHECK(p.closure_residual <= 1e-10);
    CHECK(std::abs(p.perimeter() - 1.0) <= 1e-10);
    // normals from the polygon: rotate each edge by +90 degrees
    const size_t m = p.vertices.size();
    for (size_t k = 0; k < m; ++k) {
      const cplx e = p.vertices[(k + 1) % m] - p.vertices[k];
      const cplx normal = e * cplx(0, 1);
      CHECK(std::abs(normal - p.normals[k]) <= 1e-10);
    }
  }
}

TEST_CASE("edge-length statistics") {
  Rng rng = make_rng({3, 0});
  const int n = 12;
  double s = 0, s2 = 0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    const double l = std::norm(sample_polygon(n, 1.0, rng).z[4]);
    s += l;
    s2 += l * l;
  }
  const double mean = s / draws, se = std::sqrt((s2 / draws - mean * mean) / draws);
  CHECK(std::abs(mean - 1.0 / n) < 3 * se);
}

TEST_CASE("orthogonal action") {
  const PolygonConfig omega{{1.0, cplx(0, 1), 0.0, 0.0, 0.0}};
  CHECK(apply_orthogonal(Eigen::MatrixXd::Identity(5, 5), omega).z == omega.z);
  const auto g = on_generator(0, 2, 0.4, omega);
  auto cp = closure_and_perimeter(g);
  CHECK(std::abs(cp.closure) <= 1e-12);
  CHECK(cp.perimeter == doctest::Approx(2.0).epsilon(1e-12));

  Rng rng = make_rng({4, 0});
  for (int t = 0; t < 1000; ++t) {
    const int n = 3 + t % 10;
    PolygonConfig w{std::vector<cplx>(static_cast<size_t>(n), 0.0)};
    w.z[0] = 1.0;
    w.z[1] = cplx(0, 1);
    const auto r = apply_orthogonal(random_orthogonal(n, rng), w);
    cp = closure_and_perimeter(r);
    CHECK(std::abs(cp.closure) <= 1e-12 * 2.0);
    CHECK(std::abs(cp.perimeter - 2.0) <= 1e-12 * 2.0);
    const Polygon p = reconstruct(r);
    CHECK(p.convex);
  }

  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(5, 5);
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(apply_orthogonal(bad, omega), DomainError);

  // the O(N) action changes the shape
  const auto c = sample_polygon(6, 1.0, rng);
  const auto d = on_generator(1, 3, 0.5, c);
  const auto la = sorted_lengths(reconstruct(c)), lb = sorted_lengths(reconstruct(d));
  double diff = 0.0;
  for (size_t i = 0; i < std::min(la.size(), lb.size()); ++i) diff = std::max(diff, std::abs(la[i] - lb[i]));
  CHECK((la.size() != lb.size() || diff > 1e-6));
}

TEST_CASE("network validation") {
  const auto net = two_triangle_network();
  CHECK(validate_network(net).pass);
  auto bad = net;
  int glued = -1;
  for (size_t k = 0; k < bad.links.size(); ++k)
    if (bad.links[k].target) {
      glued = static_cast<int>(k);
      bad.links[k].z_target *= std::sqrt(1.1);
      break;
    }
  REQUIRE(glued >= 0);
  const auto rep = validate_network(bad);
  CHECK_FALSE(rep.pass);
  for (const auto& l : rep.links) {
    if (l.link == glued) CHECK(l.mismatch > 0.05);
    else CHECK(l.mismatch <= 1e-10);
  }
  CHECK(validate_network(ComplexNetwork{}).pass);
}

}  // TEST_SUITE
