#include "unpoly/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "unpoly/io.hpp"
#include "unpoly/iz.hpp"
#include "unpoly/moments.hpp"
#include "unpoly/polygon.hpp"
#include "unpoly/quantum.hpp"
#include "unpoly/sampler.hpp"
#include "unpoly/weingarten.hpp"

namespace unpoly::cli {

namespace {

struct Common {
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;
  std::string format;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format,
                std::vector<std::string> formats) {
  sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
  c.format = default_format;
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
}

Meta make_meta(const std::string& sub, const Common& c) {
  Meta m;
  m.subcommand = sub;
  m.seed = c.seed;
  m.workers = c.workers;
  m.config["format"] = c.format;
  return m;
}

void emit(const Common& c, const std::string& content, std::ostream& out) {
  if (c.out.empty()) {
    out << content;
  } else {
    write_file(c.out, content);
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    const double x = std::stod(item, &used);
    if (used != item.size()) throw DomainError("malformed number: " + item);
    v.push_back(x);
  }
  return v;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string fmt_or_empty(double x) { return std::isfinite(x) ? format_double(x) : ""; }

// Runs f(k) for k in [0, count), split over workers; f must only touch slot k.
template <class F>
void parallel_for(long long count, int workers, F&& f) {
  if (workers <= 1 || count < 2) {
    for (long long k = 0; k < count; ++k) f(k);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long long k = w; k < count; k += workers) f(k);
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------- sample

struct SampleOpts {
  Common c;
  std::string kind = "polyhedron";
  int n = 0;
  double area = 2.0;
  long long count = 1;
};

int cmd_sample(const SampleOpts& o, std::ostream& out, std::ostream& err) {
  if (o.n < 2) throw DomainError("--n must be >= 2");
  if (!(o.area > 0.0)) throw DomainError("--area must be positive");
  if (o.count < 0) throw DomainError("--count must be >= 0");
  Meta meta = make_meta("sample", o.c);
  meta.config["kind"] = o.kind;
  meta.config["n"] = o.n;
  meta.config["area"] = o.area;
  meta.config["count"] = o.count;
  const double lambda = 0.5 * o.area;
  const auto sz = static_cast<size_t>(o.count);
  auto seed_of = [&](long long k) { return RandomSeed{o.c.seed, static_cast<std::uint64_t>(k)}; };

  if (o.kind == "polyhedron" || o.kind == "gaussian") {
    std::vector<SpinorEnsemble> es(sz);
    parallel_for(o.count, o.c.workers, [&](long long k) {
      Rng rng = make_rng(seed_of(k));
      es[static_cast<size_t>(k)] = o.kind == "polyhedron" ? sample_polyhedron(o.n, lambda, rng)
                                                          : sample_gaussian_closed(o.n, lambda, rng);
    });
    double worst = 0.0;
    for (const auto& e : es) {
      const auto cl = closure_vector(e);
      worst = std::max(worst, cl.c.norm() / cl.two_lambda);
    }
    if (o.c.format == "csv") {
      std::string s = csv_preamble(meta) + "sample,i,Vx,Vy,Vz\n";
      for (size_t k = 0; k < es.size(); ++k) {
        const auto v = es[k].vectors();
        for (size_t i = 0; i < v.size(); ++i) {
          s += std::to_string(k) + "," + std::to_string(i) + "," + format_double(v[i].x) + "," +
               format_double(v[i].y) + "," + format_double(v[i].z) + "\n";
        }
      }
      emit(o.c, s, out);
    } else {
      emit(o.c, ensembles_document(es, meta), out);
    }
    if (worst > tol::closure) {
      err << "closure gate tripped: max |C|/2lambda = " << worst << "\n";
      return kNumericFailure;
    }
    return kOk;
  }

  if (o.kind == "free") {
    std::vector<std::vector<Vec3>> vs(sz);
    parallel_for(o.count, o.c.workers, [&](long long k) {
      Rng rng = make_rng(seed_of(k));
      vs[static_cast<size_t>(k)] = sample_free_ensemble(o.n, lambda, rng);
    });
    std::string s;
    if (o.c.format == "csv") {
      s = csv_preamble(meta) + "sample,i,Vx,Vy,Vz\n";
      for (size_t k = 0; k < vs.size(); ++k)
        for (size_t i = 0; i < vs[k].size(); ++i)
          s += std::to_string(k) + "," + std::to_string(i) + "," + format_double(vs[k][i].x) + "," +
               format_double(vs[k][i].y) + "," + format_double(vs[k][i].z) + "\n";
    } else {
      s = "{\n  \"meta\": " + meta.to_json().dump() + ",\n  \"samples\": [";
      for (size_t k = 0; k < vs.size(); ++k) {
        s += k ? ",\n    [" : "\n    [";
        for (size_t i = 0; i < vs[k].size(); ++i) {
          s += (i ? ", [" : "[") + format_double(vs[k][i].x) + ", " + format_double(vs[k][i].y) + ", " +
               format_double(vs[k][i].z) + "]";
        }
        s += "]";
      }
      s += vs.empty() ? "]\n}\n" : "\n  ]\n}\n";
    }
    emit(o.c, s, out);
    return kOk;
  }

  // polygon; --area is the perimeter
  std::vector<PolygonConfig> ps(sz);
  parallel_for(o.count, o.c.workers, [&](long long k) {
    Rng rng = make_rng(seed_of(k));
    ps[static_cast<size_t>(k)] = sample_polygon(o.n, o.area, rng);
  });
  int bad = 0;
  for (const auto& p : ps) {
    try {
      const Polygon poly = reconstruct(p);
      if (!poly.convex || poly.closure_residual > 1e-10 * o.area) ++bad;
    } catch (const DomainError&) {
      ++bad;
    }
  }
  std::string s;
  if (o.c.format == "csv") {
    s = csv_preamble(meta) + "sample,i,re,im\n";
    for (size_t k = 0; k < ps.size(); ++k)
      for (size_t i = 0; i < ps[k].z.size(); ++i)
        s += std::to_string(k) + "," + std::to_string(i) + "," + format_double(ps[k].z[i].real()) + "," +
             format_double(ps[k].z[i].imag()) + "\n";
  } else {
    s = "{\n  \"meta\": " + meta.to_json().dump() + ",\n  \"polygons\": [";
    for (size_t k = 0; k < ps.size(); ++k) {
      s += k ? ",\n    {\"z\": [" : "\n    {\"z\": [";
      for (size_t i = 0; i < ps[k].z.size(); ++i) {
        s += (i ? ", [" : "[") + format_double(ps[k].z[i].real()) + ", " + format_double(ps[k].z[i].imag()) + "]";
      }
      s += "]}";
    }
    s += ps.empty() ? "]\n}\n" : "\n  ]\n}\n";
  }
  emit(o.c, s, out);
  if (bad) {
    err << bad << " sampled polygon(s) failed reconstruction\n";
    return kNumericFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------- moments

struct MomentOpts {
  Common c;
  int n = 0;
  double area = 2.0;
  long long count = 100000;
  std::string ensemble = "both";
};

int cmd_moments(const MomentOpts& o, std::ostream& out, std::ostream& err) {
  if (o.n < 3) throw DomainError("--n must be >= 3");
  if (!(o.area > 0.0)) throw DomainError("--area must be positive");
  if (o.count < 0) throw DomainError("--count must be >= 0");
  Meta meta = make_meta("moments", o.c);
  meta.config["n"] = o.n;
  meta.config["area"] = o.area;
  meta.config["count"] = o.count;
  meta.config["ensemble"] = o.ensemble;
  const double lambda = 0.5 * o.area;
  const McConfig cfg{o.count, o.c.seed, o.c.workers};
  std::vector<MomentReport> rows;
  if (o.ensemble == "closed") {
    rows = moment_table_closed(o.n, lambda, cfg);
  } else if (o.ensemble == "free") {
    rows = moment_table_free(o.n, lambda, cfg);
  } else {
    rows = moment_table(o.n, lambda, cfg);
  }
  int flagged = 0;
  std::string s;
  if (o.c.format == "json") {
    nlohmann::ordered_json j;
    j["meta"] = meta.to_json();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json row;
      row["observable"] = r.observable;
      row["N"] = r.N;
      row["lambda"] = r.lambda;
      row["exact"] = std::isfinite(r.exact) ? nlohmann::ordered_json(r.exact) : nlohmann::ordered_json(nullptr);
      if (o.count > 0) {
        row["mc_mean"] = r.mc.mean;
        row["mc_stderr"] = r.mc.stderr_;
        const double z = r.mc.z_score(r.exact);
        row["z_score"] = std::isfinite(z) ? nlohmann::ordered_json(z) : nlohmann::ordered_json(nullptr);
      }
      row["samples"] = o.count;
      row["seed"] = o.c.seed;
      arr.push_back(row);
    }
    j["rows"] = arr;
    s = j.dump(2) + "\n";
  } else {
    s = csv_preamble(meta) + "observable,N,lambda,exact,mc_mean,mc_stderr,z_score,samples,seed\n";
    for (const auto& r : rows) {
      s += csv_cell(r.observable) + "," + std::to_string(r.N) + "," + format_double(r.lambda) + "," +
           fmt_or_empty(r.exact) + ",";
      if (o.count > 0) {
        const double z = std::isfinite(r.exact) ? r.mc.z_score(r.exact) : NAN;
        s += format_double(r.mc.mean) + "," + format_double(r.mc.stderr_) + "," + fmt_or_empty(z) + ",";
      } else {
        s += ",,,";
      }
      s += std::to_string(o.count) + "," + std::to_string(o.c.seed) + "\n";
    }
  }
  for (const auto& r : rows) {
    if (o.count > 0 && std::isfinite(r.exact) && std::abs(r.mc.z_score(r.exact)) > 4.0) {
      err << "flagged: " << r.observable << " |z| = " << std::abs(r.mc.z_score(r.exact)) << "\n";
      ++flagged;
    }
  }
  emit(o.c, s, out);
  return flagged ? kNumericFailure : kOk;
}

// ---------------------------------------------------------------- weingarten

struct WeingartenOpts {
  Common c;
  int n = 0;
  int N = 0;
  bool check = false;
};

int cmd_weingarten(const WeingartenOpts& o, std::ostream& out, std::ostream& err) {
  if (o.n < 1 || o.n > 8) throw DomainError("--n must be in 1..8");
  if (o.N < o.n) throw DomainError("Gram matrix singular regime: --N must be >= --n");
  Meta meta = make_meta("weingarten", o.c);
  meta.config["n"] = o.n;
  meta.config["N"] = o.N;
  meta.config["check"] = o.check;
  std::string s = csv_preamble(meta) + "n,cycle_type,N,numerator,denominator,asymptotic,ratio\n";
  for (const auto& ct : partitions(o.n)) {
    const Rational w = weingarten_exact(ct, o.N);
    const double a = weingarten_asymptotic(ct, o.N);
    s += std::to_string(o.n) + "," + csv_cell(format_partition(ct)) + "," + std::to_string(o.N) + "," +
         boost::multiprecision::numerator(w).str() + "," + boost::multiprecision::denominator(w).str() + "," +
         format_double(a) + "," + format_double(to_double(w) / a) + "\n";
  }
  int rc = kOk;
  if (o.check) {
    const bool ok = gram_inverse_check(o.n, o.N);
    s += "# gram_inverse_check: " + std::string(ok ? "pass" : "FAIL") + "\n";
    if (!ok) {
      err << "Gram inverse identity failed\n";
      rc = kNumericFailure;
    }
  }
  emit(o.c, s, out);
  return rc;
}

// ---------------------------------------------------------------- iz

struct IzOpts {
  Common c;
  std::string x, y;
  double theta = 0.0;
  std::string method = "det";
  long long count = 100000;
  int n = 0;
  double area = 2.0;
  int order = 40;
};

int cmd_iz(const IzOpts& o, std::ostream& out, std::ostream& err) {
  Meta meta = make_meta("iz", o.c);
  meta.config["x"] = o.x;
  meta.config["y"] = o.y;
  meta.config["theta"] = o.theta;
  meta.config["method"] = o.method;
  std::string s;
  struct Row {
    std::string method;
    cplx value;
    double se_re = NAN, se_im = NAN;
  };
  std::vector<Row> rows;
  std::string reference;
  cplx ref = NAN;
  int rc = kOk;

  if (o.method == "series") {
    if (o.n < 2) throw DomainError("series needs --n >= 2");
    meta.config["n"] = o.n;
    meta.config["area"] = o.area;
    meta.config["order"] = o.order;
    rows.push_back({"series", area_generating_series(o.n, 0.5 * o.area, o.theta, o.order)});
  } else {
    const auto x = parse_list(o.x);
    if (x.empty()) throw DomainError("--x is required");
    if (o.method == "degenerate") {
      rows.push_back({"degenerate", iz_degenerate_Y(x, o.theta)});
      rows.push_back({"extrapolated", iz_degenerate_Y_extrapolated(x, o.theta)});
      rows.push_back({"printed", iz_degenerate_Y_printed(x, o.theta)});
      reference = "extrapolated";
      ref = rows[1].value;
    } else {
      auto y = parse_list(o.y);
      if (y.size() != x.size()) throw DomainError("--x and --y must have equal length");
      const SpectralPair p{x, y, o.theta};
      bool degenerate_y = false;
      try {
        ref = iz_determinant(p);
        reference = "det";
      } catch (const DomainError&) {
        degenerate_y = true;
      }
      if (degenerate_y) {
        ref = iz_degenerate_Y(x, o.theta);
        reference = "degenerate";
      }
      if (o.method == "mc") {
        meta.config["count"] = o.count;
        const auto e = iz_mc(p, {o.count, o.c.seed, o.c.workers});
        rows.push_back({"mc", {e.re.mean, e.im.mean}, e.re.stderr_, e.im.stderr_});
        const double zr = e.re.z_score(ref.real()), zi = e.im.z_score(ref.imag());
        if (std::abs(zr) > 4.0 || std::abs(zi) > 4.0) {
          err << "mc deviates from " << reference << " by more than 4 standard errors\n";
          rc = kNumericFailure;
        }
      }
      rows.push_back({reference, ref});
    }
  }
  s = csv_preamble(meta) + "method,re,im,stderr_re,stderr_im,reference,delta_re,delta_im\n";
  for (const auto& r : rows) {
    s += r.method + "," + format_double(r.value.real()) + "," + format_double(r.value.imag()) + "," +
         fmt_or_empty(r.se_re) + "," + fmt_or_empty(r.se_im) + ",";
    if (!reference.empty() && r.method != reference) {
      s += reference + "," + format_double(r.value.real() - ref.real()) + "," +
           format_double(r.value.imag() - ref.imag()) + "\n";
    } else {
      s += ",,\n";
    }
  }
  emit(o.c, s, out);
  return rc;
}

// ---------------------------------------------------------------- intertwiner

struct IntertwinerOpts {
  Common c;
  std::string verb;
  int n = 0;
  std::string spin_sum = "0";
  std::string overall = "0";
  int order = 0;
  std::string angles;
  std::string in;
  double area = 2.0;
  long long count = 100000;
};

int cmd_intertwiner(const IntertwinerOpts& o, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> verbs{"dim", "dimfixed", "trace", "char", "cohnorm", "mcdim"};
  if (std::find(verbs.begin(), verbs.end(), o.verb) == verbs.end()) {
    err << "unknown intertwiner verb '" << o.verb << "'; expected one of dim, dimfixed, trace, char, cohnorm, mcdim\n";
    return kUsage;
  }
  const Spin J = Spin::parse(o.spin_sum);
  Meta meta = make_meta("intertwiner", o.c);
  meta.config["verb"] = o.verb;
  meta.config["n"] = o.n;
  meta.config["spin_sum"] = J.str();
  std::string s = "quantity,N,J,method,value,exact,stderr\n";
  auto row = [&](const std::string& q, const std::string& method, const std::string& value,
                 const std::string& exact, const std::string& se = "") {
    s += csv_cell(q) + "," + std::to_string(o.n) + "," + J.str() + "," + method + "," + value + "," + exact + "," + se + "\n";
  };
  auto rational_row = [&](const std::string& q, const std::string& method, const Rational& r) {
    row(q, method, format_double(to_double(r)), to_string(r));
  };
  int rc = kOk;
  if (o.verb == "dim") {
    const BigInt d = dimension(o.n, J);
    row("d_N[J]", "hook", d.str(), d.str());
    if (o.n <= 6 && J.twice <= 8) {
      const BigInt b = dimension_by_enumeration(o.n, J);
      row("d_N[J]", "coupling", b.str(), b.str());
      if (b != d) rc = kNumericFailure;
    }
    if (o.n >= 3) row("d_N[J]", "asymptotic", format_double(asymptotic_dimension(o.n, J)), "");
  } else if (o.verb == "dimfixed") {
    const Spin K = Spin::parse(o.overall);
    meta.config["overall"] = K.str();
    const BigInt d = dimension_fixed_spin(o.n, J, K);
    row("d_N[J," + K.str() + "]", "hook", d.str(), d.str());
    if (o.n <= 5 && J.twice <= 6) {
      const BigInt b = covariant_by_enumeration(o.n, J, K);
      row("d_N[J," + K.str() + "]", "coupling", b.str(), b.str());
      if (b != d) rc = kNumericFailure;
    }
  } else if (o.verb == "trace") {
    const std::vector<int> orders = o.order ? std::vector<int>{o.order} : std::vector<int>{1, 2};
    for (int n : orders) {
      const std::string q = n == 1 ? "<2j>" : "<4j(j+1)>";
      const Rational closed = trace_moment_V(o.n, J, n);
      const Rational spec = trace_moment_V_spectral(o.n, J, n);
      rational_row(q, "closed", closed);
      rational_row(q, "spectral", spec);
      if (closed != spec) rc = kNumericFailure;
    }
    rational_row("<(2j)^2>", "spectral", power_moment(o.n, J, 2));
    if (o.n >= 3) {
      const auto sc = spin_correlations(o.n, J);
      rational_row("<V_i V_k>", "closed", sc.vv);
      rational_row("<(2j_i)(2j_k)>", "two-leg spectrum", sc.vv_number);
      rational_row("<V_i.V_k>", "closed", sc.vdotv);
      rational_row("<V_i.V_k>", "two-leg spectrum", sc.vdotv_enum);
    }
  } else if (o.verb == "char") {
    auto th = parse_list(o.angles);
    if (th.empty()) th.assign(static_cast<size_t>(o.n), 0.0);
    if (static_cast<int>(th.size()) != o.n) throw DomainError("--angles needs N values");
    meta.config["angles"] = th;
    const cplx ch = character(o.n, J, th);
    row("chi re", "jacobi-trudi", format_double(ch.real()), "");
    row("chi im", "jacobi-trudi", format_double(ch.imag()), "");
    if (o.count > 0 && o.n <= 8 && J.twice <= 8 && J.twice % 2 == 0) {
      meta.config["count"] = o.count;
      const auto e = character_mc(o.n, J, th, {o.count, o.c.seed, o.c.workers});
      row("chi re", "gaussian-mc", format_double(e.re.mean), "", format_double(e.re.stderr_));
      row("chi im", "gaussian-mc", format_double(e.im.mean), "", format_double(e.im.stderr_));
      if (std::abs(e.re.z_score(ch.real())) > 4.0 || std::abs(e.im.z_score(ch.imag())) > 4.0) rc = kNumericFailure;
    }
  } else if (o.verb == "cohnorm") {
    std::vector<SpinorEnsemble> es;
    if (!o.in.empty()) {
      es = ensembles_from_text(read_file(o.in));
      meta.config["in"] = o.in;
    } else {
      if (o.n < 2) throw DomainError("--n must be >= 2");
      meta.config["area"] = o.area;
      es.push_back(sample_polyhedron(o.n, 0.5 * o.area, RandomSeed{o.c.seed, 0}));
    }
    for (size_t k = 0; k < es.size(); ++k) {
      const double lam = es[k].lambda();
      row("norm[" + std::to_string(k) + "]", "F-form", format_double(coherent_norm(J, es[k])), "");
      row("lambda^2J[" + std::to_string(k) + "]", "closed value", format_double(std::pow(lam, J.twice)), "");
    }
  } else {  // mcdim
    meta.config["count"] = o.count;
    const BigInt d = dimension(o.n, J);
    const Estimate e = dimension_mc(o.n, J, {o.count, o.c.seed, o.c.workers});
    row("d_N[J]", "hook", d.str(), d.str());
    row("d_N[J]", "gaussian-mc", format_double(e.mean), "", format_double(e.stderr_));
    if (std::abs(e.z_score(to_double(d))) > 4.0) rc = kNumericFailure;
  }
  emit(o.c, csv_preamble(meta) + s, out);
  return rc;
}

// ---------------------------------------------------------------- polygon

struct PolygonOpts {
  Common c;
  std::string in;
  std::string network;
  std::string fixture;
  double perturb = 1.0;
  int n = 0;
  double area = 1.0;
  bool close = false;
};

int cmd_polygon(const PolygonOpts& o, std::ostream& out, std::ostream& err) {
  Meta meta = make_meta("polygon", o.c);
  if (!o.network.empty() || !o.fixture.empty()) {
    ComplexNetwork net;
    if (!o.network.empty()) {
      meta.config["network"] = o.network;
      net = network_from_json(nlohmann::json::parse(read_file(o.network)));
    } else {
      if (o.fixture != "two-triangles") throw DomainError("unknown fixture: " + o.fixture);
      meta.config["fixture"] = o.fixture;
      net = two_triangle_network();
    }
    if (o.perturb != 1.0) {
      meta.config["perturb"] = o.perturb;
      for (auto& l : net.links)
        if (l.target) {
          l.z_target *= std::sqrt(o.perturb);
          break;
        }
    }
    const auto rep = validate_network(net);
    nlohmann::ordered_json j;
    j["meta"] = meta.to_json();
    j["network"] = network_to_json(net);
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : rep.vertices) vs.push_back({{"vertex", v.vertex}, {"closure_residual", v.residual}});
    auto ls = nlohmann::ordered_json::array();
    for (const auto& l : rep.links) ls.push_back({{"link", l.link}, {"length_mismatch", l.mismatch}});
    j["vertices"] = vs;
    j["links"] = ls;
    j["pass"] = rep.pass;
    emit(o.c, j.dump(2) + "\n", out);
    if (!rep.pass) {
      err << "network constraints violated\n";
      return kNumericFailure;
    }
    return kOk;
  }

  PolygonConfig cfg;
  if (!o.in.empty()) {
    meta.config["in"] = o.in;
    cfg = polygon_config_from_json(nlohmann::json::parse(read_file(o.in)));
  } else {
    if (o.n < 2) throw DomainError("--n must be >= 2 (or pass --in)");
    if (!(o.area > 0.0)) throw DomainError("--area must be positive");
    meta.config["n"] = o.n;
    meta.config["area"] = o.area;
    cfg = sample_polygon(o.n, o.area, RandomSeed{o.c.seed, 0});
  }
  if (o.close) {
    meta.config["close"] = true;
    cfg = close_polygon(cfg).closed;
  }
  const Polygon p = reconstruct(cfg);
  if (o.c.format == "svg") {
    emit(o.c, polygon_svg(p, meta), out);
  } else {
    auto j = nlohmann::ordered_json::parse(polygon_json(cfg, p));
    nlohmann::ordered_json doc;
    doc["meta"] = meta.to_json();
    doc["polygon"] = j;
    emit(o.c, doc.dump(2) + "\n", out);
  }
  if (!p.convex || p.closure_residual > 1e-10 * closure_and_perimeter(cfg).perimeter) {
    err << "reconstructed polygon is not closed and convex\n";
    return kNumericFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const Common& c, std::ostream& out) {
  std::vector<std::pair<std::string, bool>> checks;
  checks.emplace_back("d_4[2] = 20", dimension(4, Spin{4}) == 20);
  checks.emplace_back("d_4[2] by coupling", dimension_by_enumeration(4, Spin{4}) == 20);
  checks.emplace_back("Wg(e; n=2, N=3) = 1/8", weingarten_exact(Partition{1, 1}, 3) == Rational(1, 8));
  checks.emplace_back("Gram inverse n=3, N=4", gram_inverse_check(3, 4));
  checks.emplace_back("rho_3[1] = 1/2", density_exact(3, 1) == Rational(1, 2));
  {
    const auto e = sample_polyhedron(8, 1.0, RandomSeed{c.seed, 0});
    checks.emplace_back("sampled polyhedron is closed", closure_vector(e).c.norm() <= tol::closure * 2.0);
  }
  {
    const Polygon p = reconstruct(sample_polygon(7, 1.0, RandomSeed{c.seed, 0}));
    checks.emplace_back("sampled polygon reconstructs convex", p.convex && p.closure_residual <= 1e-10);
  }
  checks.emplace_back("character(theta=0) = d_4[1]", std::abs(character(4, Spin{2}, {0, 0, 0, 0}) - cplx(6.0)) < 1e-12);
  bool all = true;
  std::string s;
  for (const auto& [name, ok] : checks) {
    s += std::string(ok ? "ok   " : "FAIL ") + name + "\n";
    all = all && ok;
  }
  emit(c, s, out);
  return all ? kOk : kNumericFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unpoly: random polyhedra, Weingarten and Itzykson-Zuber integrals, intertwiners, polygons"};
  app.name("unpoly");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SampleOpts so;
  auto* sample = app.add_subcommand("sample", "sample closed polyhedra, free ensembles or polygons");
  add_common(sample, so.c, "json", {"json", "csv"});
  sample->add_option("--kind", so.kind)
      ->check(CLI::IsMember({"polyhedron", "gaussian", "free", "polygon"}))
      ->capture_default_str();
  sample->add_option("--n", so.n, "number of faces / edges")->required();
  sample->add_option("--area", so.area, "total area 2 lambda (perimeter for polygons)")->capture_default_str();
  sample->add_option("--count", so.count, "number of samples")->capture_default_str();

  MomentOpts mo;
  auto* moments = app.add_subcommand("moments", "exact vs Monte Carlo moment table");
  add_common(moments, mo.c, "csv", {"csv", "json"});
  moments->add_option("--n", mo.n, "number of faces")->required();
  moments->add_option("--area", mo.area, "total area 2 lambda")->capture_default_str();
  moments->add_option("--count", mo.count, "Monte Carlo samples")->capture_default_str();
  moments->add_option("--ensemble", mo.ensemble)->check(CLI::IsMember({"closed", "free", "both"}))->capture_default_str();

  WeingartenOpts wo;
  auto* wg = app.add_subcommand("weingarten", "Weingarten function table");
  add_common(wg, wo.c, "csv", {"csv"});
  wg->add_option("--n", wo.n, "degree n (permutations of n)")->required();
  wg->add_option("--N", wo.N, "unitary group dimension")->required();
  wg->add_flag("--check", wo.check, "verify the Gram inverse identity");

  IzOpts io;
  auto* iz = app.add_subcommand("iz", "Itzykson-Zuber integral");
  add_common(iz, io.c, "csv", {"csv"});
  iz->add_option("--x", io.x, "eigenvalues of X, comma separated");
  iz->add_option("--y", io.y, "eigenvalues of Y, comma separated");
  iz->add_option("--theta", io.theta)->required();
  iz->add_option("--method", io.method)->check(CLI::IsMember({"det", "mc", "degenerate", "series"}))->capture_default_str();
  iz->add_option("--count", io.count, "Monte Carlo samples")->capture_default_str();
  iz->add_option("--n", io.n, "N for the area series");
  iz->add_option("--area", io.area, "total area 2 lambda for the area series")->capture_default_str();
  iz->add_option("--order", io.order, "series truncation order")->capture_default_str();

  IntertwinerOpts it;
  auto* inter = app.add_subcommand("intertwiner", "intertwiner dimensions, traces, characters");
  add_common(inter, it.c, "csv", {"csv"});
  inter->add_option("verb", it.verb, "dim | dimfixed | trace | char | cohnorm | mcdim")->required();
  inter->add_option("--n,--N", it.n, "number of legs");
  inter->add_option("--spin-sum,--J", it.spin_sum, "J = sum of spins (integer or half-integer)")->capture_default_str();
  inter->add_option("--overall", it.overall, "overall spin for dimfixed")->capture_default_str();
  inter->add_option("--order", it.order, "trace order (1 or 2; default both)");
  inter->add_option("--angles", it.angles, "U(N) phases for char, comma separated");
  inter->add_option("--in", it.in, "ensemble JSON for cohnorm");
  inter->add_option("--area", it.area, "total area for cohnorm samples")->capture_default_str();
  inter->add_option("--count", it.count, "Monte Carlo samples")->capture_default_str();

  PolygonOpts po;
  auto* poly = app.add_subcommand("polygon", "reconstruct polygons, validate networks");
  add_common(poly, po.c, "json", {"json", "svg"});
  poly->add_option("--in", po.in, "polygon JSON with \"z\": [[re, im], ...]");
  poly->add_option("--network", po.network, "network JSON to validate");
  poly->add_option("--fixture", po.fixture, "built-in network fixture (two-triangles)");
  poly->add_option("--perturb", po.perturb, "scale the first glued link length by this factor");
  poly->add_option("--n", po.n, "number of edges for a sampled polygon");
  poly->add_option("--area", po.area, "perimeter for a sampled polygon")->capture_default_str();
  poly->add_flag("--close", po.close, "close the configuration before reconstruction");

  Common st;
  auto* self = app.add_subcommand("selftest", "quick internal consistency checks");
  add_common(self, st, "csv", {"csv"});

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*sample) return cmd_sample(so, out, err);
    if (*moments) return cmd_moments(mo, out, err);
    if (*wg) return cmd_weingarten(wo, out, err);
    if (*iz) return cmd_iz(io, out, err);
    if (*inter) return cmd_intertwiner(it, out, err);
    if (*poly) return cmd_polygon(po, out, err);
    if (*self) return cmd_selftest(st, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace unpoly::cli
