#include <doctest.h>

#include <cmath>

#include "unpoly/sampler.hpp"
#include "unpoly/spinor.hpp"

using namespace unpoly;

namespace {

SpinorEnsemble random_open(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Spinor> s(static_cast<size_t>(n));
  for (auto& z : s) z = {cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
  return SpinorEnsemble(s);
}

Mat2 random_sl2c(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat2 m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m(a, b) = cplx(g(rng), g(rng));
  return m / std::sqrt(m.determinant());
}

Mat2 random_su2(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const Vec3 u{g(rng), g(rng), g(rng)};
  return SU2Rotation::from_axis_angle(u).matrix();
}

double max_abs(const MatX& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("spinor") {

TEST_CASE("dual on basis vectors and its square") {
  const Spinor a = dual({1.0, 0.0});
  CHECK(std::abs(a.z0) < 1e-15);
  CHECK(std::abs(a.z1 - 1.0) < 1e-15);
  const Spinor b = dual({0.0, 1.0});
  CHECK(std::abs(b.z0 + 1.0) < 1e-15);
  const Spinor z{cplx(1, 1), 2.0};
  const Spinor dd = dual(dual(z));
  CHECK(std::abs(dd.z0 + z.z0) < 1e-15);
  CHECK(std::abs(dd.z1 + z.z1) < 1e-15);
}

TEST_CASE("spinor to vector at the poles and on the equator") {
  auto n = spinor_to_vector({1.0, 0.0});
  CHECK(n.v.z == doctest::Approx(1.0));
  CHECK(n.norm == doctest::Approx(1.0));
  auto s = spinor_to_vector({0.0, 1.0});
  CHECK(s.v.z == doctest::Approx(-1.0));
  const double r = 1.0 / std::sqrt(2.0);
  auto e = spinor_to_vector({r, r});
  CHECK(e.v.x == doctest::Approx(1.0));
  CHECK(std::abs(e.v.y) < 1e-15);
  CHECK(std::abs(e.v.z) < 1e-15);
}

TEST_CASE("vector to spinor inverts spinor to vector") {
  const Spinor n = vector_to_spinor({0, 0, 1}, 0.0);
  CHECK(std::abs(n.z0 - 1.0) < 1e-15);
  CHECK(std::abs(n.z1) < 1e-15);
  const Spinor x = vector_to_spinor({1, 0, 0}, 0.0);
  CHECK(std::abs(x.z0 - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(x.z1 - 1.0 / std::sqrt(2.0)) < 1e-15);
  const Vec3 v{3, 4, 0};
  const auto back = spinor_to_vector(vector_to_spinor(v, 0.7));
  CHECK((back.v - v).norm() < 1e-12);
  CHECK(back.norm == doctest::Approx(5.0));
}

TEST_CASE("closure vector fixtures") {
  auto ref = closure_vector(SpinorEnsemble::reference(2));
  CHECK(ref.c.norm() < 1e-15);
  CHECK(ref.two_lambda == doctest::Approx(2.0));
  auto par = closure_vector(SpinorEnsemble({{1.0, 0.0}, {1.0, 0.0}}));
  CHECK(par.c.z == doctest::Approx(2.0));
  CHECK(par.two_lambda == doctest::Approx(2.0));
}

TEST_CASE("closing an open ensemble") {
  const SpinorEnsemble e({{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  for (auto* f : {&close_ensemble, &close_ensemble_by_boost}) {
    const auto r = (*f)(e);
    const auto cl = closure_vector(r.closed);
    CHECK(cl.c.norm() <= 1e-12 * cl.two_lambda);
    CHECK(cl.two_lambda == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(r.lambda.matrix().determinant() - 1.0) < 1e-12);
  }

  Rng rng = make_rng({11, 0});
  const auto open = random_open(6, rng);
  const auto a = close_ensemble(open);
  const auto b = close_ensemble_by_boost(open);
  CHECK(closure_vector(a.closed).c.norm() <= 1e-12 * closure_vector(a.closed).two_lambda);
  // the two routes may differ by SU(2), so compare invariants
  const auto ea = compute_observables(a.closed), eb = compute_observables(b.closed);
  CHECK(max_abs(ea.E - eb.E) < 1e-10);
  // F is SL(2,C) invariant, so closing does not change it
  const auto fo = compute_observables(open);
  CHECK(max_abs(fo.F - ea.F) < 1e-10);
  CHECK(max_abs(fo.F - eb.F) < 1e-10);
  const auto cl = closure_vector(open);
  CHECK(closure_vector(a.closed).two_lambda ==
        doctest::Approx(std::sqrt(cl.two_lambda * cl.two_lambda - cl.c.dot(cl.c))).epsilon(1e-12));
}

TEST_CASE("closing an already closed ensemble is a rotation") {
  Rng rng = make_rng({3, 1});
  const auto z = sample_polyhedron(5, 1.3, rng);
  const auto r = close_ensemble(z);
  const Mat2& m = r.lambda.matrix();
  CHECK((m.adjoint() * m - Mat2::Identity()).norm() < 1e-10);
  CHECK(r.closed.total_area() == doctest::Approx(z.total_area()).epsilon(1e-12));
}

TEST_CASE("unitary action") {
  Rng rng = make_rng({5, 0});
  const auto z = sample_polyhedron(5, 1.0, rng);
  const auto same = apply_unitary(MatX::Identity(5, 5), z);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(same[i].z0 - z[i].z0) < 1e-15);

  MatX p = MatX::Zero(5, 5);
  for (int i = 0; i < 5; ++i) p(i, (i + 2) % 5) = 1.0;
  const auto perm = apply_unitary(p, z);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(perm[i].z1 - z[(i + 2) % 5].z1) < 1e-15);
  CHECK(perm.total_area() == doctest::Approx(z.total_area()));

  for (int t = 0; t < 50; ++t) {
    const auto w = apply_unitary(sample_haar_unitary(5, rng), z);
    const auto cl = closure_vector(w);
    CHECK(cl.c.norm() <= 1e-12 * cl.two_lambda);
  }
  MatX bad = MatX::Identity(5, 5);
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(apply_unitary(bad, z), DomainError);
}

TEST_CASE("observables on the reference point") {
  const auto o = compute_observables(SpinorEnsemble::reference(2));
  CHECK(max_abs(o.E - MatX::Identity(2, 2)) < 1e-15);
  CHECK(std::abs(o.F(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(o.F(1, 0) + 1.0) < 1e-15);
}

TEST_CASE("closed ensembles: E is a projector up to scale and sum |F|^2 = 2 lambda^2") {
  Rng rng = make_rng({9, 9});
  for (int n : {3, 6, 11}) {
    const double lambda = 1.7;
    const auto z = sample_polyhedron(n, lambda, rng);
    const auto o = compute_observables(z);
    const cplx half_tr = o.E.trace() / 2.0;
    CHECK((o.E * o.E - half_tr * o.E).norm() <= 1e-10 * std::norm(half_tr));
    CHECK(o.F.squaredNorm() == doctest::Approx(2.0 * lambda * lambda).epsilon(1e-10));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(dot_from_E(o, i, j) == doctest::Approx(dot_from_F(o, i, j)).epsilon(1e-10));
  }
}

TEST_CASE("dot products match the vectors") {
  Rng rng = make_rng({2, 2});
  const auto z = random_open(4, rng);
  const auto v = z.vectors();
  const auto o = compute_observables(z);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(dot_from_E(o, i, j) == doctest::Approx(v[i].dot(v[j])).epsilon(1e-12));
      CHECK(dot_from_F(o, i, j) == doctest::Approx(v[i].dot(v[j])).epsilon(1e-12));
    }
}

TEST_CASE("Plucker residual") {
  Rng rng = make_rng({4, 4});
  const auto z = random_open(7, rng);
  MatX f = compute_observables(z).F;
  CHECK(plucker_residual(f) <= 1e-12);
  f /= std::sqrt(f.cwiseAbs().maxCoeff());  // unit scale
  f /= f.cwiseAbs().maxCoeff();
  MatX g = f;
  g(1, 2) += 1.0;
  g(2, 1) -= 1.0;
  CHECK(plucker_residual(g) > 0.1);
  CHECK(plucker_residual(MatX::Zero(5, 5)) == 0.0);
}

TEST_CASE("match_by_F recovers a planted SL(2,C) transform") {
  Rng rng = make_rng({6, 0});
  const auto z = random_open(6, rng);
  const auto id = match_by_F(z, z);
  CHECK((id.matrix() - Mat2::Identity()).norm() < 1e-8);
  for (int t = 0; t < 20; ++t) {
    const Mat2 l0 = random_sl2c(rng);
    const auto w = apply_sl2c(SL2CTransform(l0.inverse()), z);  // z = l0 w
    const auto l = match_by_F(z, w);
    CHECK((l.matrix() - l0).norm() <= 1e-8 * l0.norm());
  }
}

TEST_CASE("match_by_F between closed ensembles is unitary") {
  Rng rng = make_rng({6, 1});
  const auto z = sample_polyhedron(6, 1.0, rng);
  const Mat2 g0 = random_su2(rng);
  const auto w = apply_su2(SU2Rotation(g0.adjoint()), z);
  const auto l = match_by_F(z, w);
  CHECK((l.matrix().adjoint() * l.matrix() - Mat2::Identity()).norm() <= 1e-8);
}

TEST_CASE("match_by_F_closed recovers a planted rotation") {
  Rng rng = make_rng({7, 0});
  const auto z = sample_polyhedron(5, 1.0, rng);
  const auto self = match_by_F_closed(z, z);
  CHECK_FALSE(self.arbitrary);
  CHECK((self.g.matrix() - Mat2::Identity()).norm() < 1e-8);
  for (int t = 0; t < 20; ++t) {
    const Mat2 g0 = random_su2(rng);
    const auto w = apply_su2(SU2Rotation(g0.adjoint()), z);
    const auto m = match_by_F_closed(z, w);
    const double d = std::min((m.g.matrix() - g0).norm(), (m.g.matrix() + g0).norm());
    CHECK(d <= 1e-8);
    const auto ez = compute_observables(z).E, ew = compute_observables(w).E;
    CHECK(max_abs(ez - ew) <= 1e-10);
  }
  const auto zero = SpinorEnsemble(std::vector<Spinor>(3));
  CHECK(match_by_F_closed(zero, zero).arbitrary);
}

TEST_CASE("cross ratios") {
  std::vector<Spinor> s;
  for (double zeta : {0.0, 2.0, 1.0, 3.0}) s.push_back({1.0, zeta});
  const SpinorEnsemble e(s);
  const auto z = cross_ratios(e);
  REQUIRE(z.size() == 1);
  CHECK(std::abs(z[0] - cplx(-3.0)) < 1e-14);
  CHECK(cross_ratios(SpinorEnsemble::reference(3)).empty());

  Rng rng = make_rng({8, 0});
  const auto r = random_open(7, rng);
  const auto a = cross_ratios(r), b = cross_ratios_from_F(r);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-8 * std::max(1.0, std::abs(a[i])));
  // Moebius invariance: an SL(2,C) map changes zeta but the F-form stays consistent
  const auto t = apply_sl2c(SL2CTransform(random_sl2c(rng)), r);
  const auto c = cross_ratios(t), d = cross_ratios_from_F(t);
  for (size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - d[i]) <= 1e-8 * std::max(1.0, std::abs(c[i])));
}

TEST_CASE("unitary frame roundtrip") {
  const auto f = reconstruct_frame(SpinorEnsemble::reference(2));
  CHECK(std::abs(f.c1(0) - 1.0) < 1e-15);
  CHECK(std::abs(f.c2(1) - 1.0) < 1e-15);
  CHECK(std::abs(f.c1(1)) < 1e-15);

  Rng rng = make_rng({10, 0});
  const auto z = sample_polyhedron(8, 2.5, rng);
  const auto fr = reconstruct_frame(z);
  CHECK(fr.orthonormality_residual() <= 1e-12);
  CHECK(fr.lambda == doctest::Approx(2.5));
  const auto back = ensemble_from_frame(fr);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(back[i].z0 - z[i].z0) < 1e-14);
    CHECK(std::abs(back[i].z1 - z[i].z1) < 1e-14);
  }
}

TEST_CASE("SL(2,C) and SU(2) constructors validate") {
  Mat2 m = Mat2::Identity() * 2.0;
  CHECK_THROWS_AS(SL2CTransform{m}, DomainError);
  Mat2 s;
  s << 1.0, 1.0, 0.0, 1.0;
  CHECK_NOTHROW(SL2CTransform{s});
  CHECK_THROWS_AS(SU2Rotation{s}, DomainError);
}

}  // TEST_SUITE
