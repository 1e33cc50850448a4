#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unpoly/cli.hpp"
#include "unpoly/io.hpp"
#include "unpoly/iz.hpp"
#include "unpoly/moments.hpp"
#include "unpoly/polygon.hpp"
#include "unpoly/quantum.hpp"
#include "unpoly/sampler.hpp"
#include "unpoly/weingarten.hpp"

namespace py = pybind11;
using namespace unpoly;

namespace {

using PySpinors = std::vector<std::pair<cplx, cplx>>;

py::object to_py(const BigInt& b) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(b.str().c_str(), nullptr, 10));
}

py::object to_py(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(boost::multiprecision::numerator(r)), to_py(boost::multiprecision::denominator(r)));
}

Rational from_py(const py::handle& h) {
  const std::string s = py::str(h);
  return Rational(s);
}

PySpinors to_py(const SpinorEnsemble& e) {
  PySpinors out;
  for (const auto& s : e) out.emplace_back(s.z0, s.z1);
  return out;
}

SpinorEnsemble from_py(const PySpinors& v) {
  std::vector<Spinor> s;
  for (const auto& [a, b] : v) s.push_back({a, b});
  return SpinorEnsemble(std::move(s));
}

py::tuple to_py(const Vec3& v) { return py::make_tuple(v.x, v.y, v.z); }

py::dict estimate(const Estimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.stderr_;
  d["samples"] = e.samples;
  return d;
}

py::dict polygon_dict(const Polygon& p) {
  py::dict d;
  d["vertices"] = p.vertices;
  d["normals"] = p.normals;
  d["lengths"] = p.lengths;
  d["multiplicity"] = p.multiplicity;
  d["closure_residual"] = p.closure_residual;
  d["convex"] = p.convex;
  d["perimeter"] = p.perimeter();
  d["area"] = p.area();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "unpoly core bindings";
  m.attr("__version__") = kVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  // spinors and samplers
  m.def(
      "sample_polyhedron",
      [](int n, double lambda, std::uint64_t seed, std::uint64_t stream) {
        return to_py(sample_polyhedron(n, lambda, RandomSeed{seed, stream}));
      },
      py::arg("n"), py::arg("lam") = 1.0, py::arg("seed") = 0, py::arg("stream") = 0,
      "Haar-uniform closed spinor ensemble as a list of (z0, z1).");
  m.def(
      "sample_free",
      [](int n, double lambda, std::uint64_t seed, std::uint64_t stream) {
        Rng rng = make_rng({seed, stream});
        std::vector<py::tuple> out;
        for (const auto& v : sample_free_ensemble(n, lambda, rng)) out.push_back(to_py(v));
        return out;
      },
      py::arg("n"), py::arg("lam") = 1.0, py::arg("seed") = 0, py::arg("stream") = 0);
  m.def("vectors", [](const PySpinors& z) {
    std::vector<py::tuple> out;
    for (const auto& v : from_py(z).vectors()) out.push_back(to_py(v));
    return out;
  });
  m.def("closure", [](const PySpinors& z) {
    const auto c = closure_vector(from_py(z));
    return py::make_tuple(to_py(c.c), c.two_lambda);
  }, "(closure vector, total area 2 lambda)");
  m.def("close_ensemble", [](const PySpinors& z) { return to_py(close_ensemble(from_py(z)).closed); });
  m.def("observables", [](const PySpinors& z) {
    const auto o = compute_observables(from_py(z));
    const auto rows = [](const MatX& a) {
      std::vector<std::vector<cplx>> r(static_cast<size_t>(a.rows()));
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r[static_cast<size_t>(i)].push_back(a(i, j));
      return r;
    };
    return py::make_tuple(rows(o.E), rows(o.F));
  }, "(E, F) as nested lists");

  // exact moments
  m.def("density_exact", [](int N, const py::object& lam) { return to_py(density_exact(N, from_py(lam))); });
  m.def("density", &density, py::arg("N"), py::arg("lam"));
  m.def("moment_V_exact", [](int N, const py::object& lam, int n) { return to_py(moment_V_exact(N, from_py(lam), n)); });
  m.def("moment_V", &moment_V, py::arg("N"), py::arg("lam"), py::arg("n"));
  m.def("moment_V_free", &moment_V_free, py::arg("N"), py::arg("lam"), py::arg("n"));
  m.def("tr_theta2_exact", [](int N) { return to_py(tr_theta2_exact(N)); });
  m.def(
      "moment_table",
      [](int N, double lambda, long long samples, std::uint64_t seed, int workers) {
        std::vector<py::dict> out;
        for (const auto& r : moment_table(N, lambda, {samples, seed, workers})) {
          py::dict d;
          d["observable"] = r.observable;
          d["N"] = r.N;
          d["lambda"] = r.lambda;
          d["exact"] = r.exact;
          d["mc"] = estimate(r.mc);
          out.push_back(d);
        }
        return out;
      },
      py::arg("N"), py::arg("lam") = 1.0, py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("workers") = 1);

  // Weingarten calculus
  m.def("weingarten", [](const Partition& ct, int N) { return to_py(weingarten_exact(ct, N)); }, py::arg("cycle_type"),
        py::arg("N"));
  m.def("weingarten_asymptotic", py::overload_cast<const Partition&, int>(&weingarten_asymptotic));
  m.def("gram_inverse_check", &gram_inverse_check);
  m.def("polynomial_integral",
        [](const std::vector<int>& i, const std::vector<int>& j, const std::vector<int>& k, const std::vector<int>& l,
           int N) { return to_py(polynomial_integral(i, j, k, l, N)); });
  m.def("sn_character", &sn_character);
  m.def("schur_dimension", [](const Partition& p, int N) { return to_py(schur_dimension(p, N)); });

  // Itzykson-Zuber
  m.def("iz_determinant", [](const std::vector<double>& x, const std::vector<double>& y, double theta) {
    return iz_determinant({x, y, theta});
  });
  m.def(
      "iz_mc",
      [](const std::vector<double>& x, const std::vector<double>& y, double theta, long long samples,
         std::uint64_t seed, int workers) {
        const auto e = iz_mc({x, y, theta}, {samples, seed, workers});
        return py::make_tuple(cplx(e.re.mean, e.im.mean), cplx(e.re.stderr_, e.im.stderr_));
      },
      py::arg("x"), py::arg("y"), py::arg("theta"), py::arg("samples") = 100000, py::arg("seed") = 0,
      py::arg("workers") = 1, "(mean, stderr packed as re + i im)");
  m.def("iz_degenerate_Y", &iz_degenerate_Y);
  m.def("area_generating_series", &area_generating_series, py::arg("N"), py::arg("lam"), py::arg("theta"),
        py::arg("n_max") = 40);
  m.def("area_series_coefficient", [](int N, int n) { return to_py(area_series_coefficient(N, n)); });

  // intertwiners; spins accept "3/2", 1.5 or 2
  const auto spin = [](const py::object& o) { return Spin::parse(py::str(o)); };
  m.def("dimension", [spin](int N, const py::object& J) { return to_py(dimension(N, spin(J))); });
  m.def("dimension_fixed_spin", [spin](int N, const py::object& J, const py::object& K) {
    return to_py(dimension_fixed_spin(N, spin(J), spin(K)));
  });
  m.def("trace_moment_V", [spin](int N, const py::object& J, int n) { return to_py(trace_moment_V(N, spin(J), n)); });
  m.def("character", [spin](int N, const py::object& J, const std::vector<double>& theta) {
    return character(N, spin(J), theta);
  });
  m.def(
      "dimension_mc",
      [spin](int N, const py::object& J, long long samples, std::uint64_t seed) {
        return estimate(dimension_mc(N, spin(J), {samples, seed, 1}));
      },
      py::arg("N"), py::arg("J"), py::arg("samples") = 100000, py::arg("seed") = 0);
  m.def("coherent_norm", [spin](const py::object& J, const PySpinors& z) { return coherent_norm(spin(J), from_py(z)); });

  // polygons
  m.def(
      "sample_polygon",
      [](int n, double perimeter, std::uint64_t seed, std::uint64_t stream) {
        return sample_polygon(n, perimeter, RandomSeed{seed, stream}).z;
      },
      py::arg("n"), py::arg("perimeter") = 1.0, py::arg("seed") = 0, py::arg("stream") = 0);
  m.def("reconstruct_polygon", [](const std::vector<cplx>& z) { return polygon_dict(reconstruct({z})); });
  m.def("close_polygon", [](const std::vector<cplx>& z) { return close_polygon({z}).closed.z; });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run the command-line tool in-process; returns (exit code, stdout, stderr).");
}
