#include "unpoly/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace unpoly {

nlohmann::ordered_json Meta::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "unpoly";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["seed"] = seed;
  j["workers"] = workers;
  return j;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string ensemble_json(const SpinorEnsemble& e) {
  std::string s = "{\"n\": " + std::to_string(e.size()) + ", \"spinors\": [";
  for (int i = 0; i < e.size(); ++i) {
    if (i) s += ", ";
    s += "[" + format_double(e[i].z0.real()) + ", " + format_double(e[i].z0.imag()) + ", " +
         format_double(e[i].z1.real()) + ", " + format_double(e[i].z1.imag()) + "]";
  }
  return s + "]}";
}

std::string ensembles_document(const std::vector<SpinorEnsemble>& es, const Meta& meta) {
  std::string s = "{\n  \"meta\": " + meta.to_json().dump() + ",\n  \"ensembles\": [";
  for (size_t k = 0; k < es.size(); ++k) {
    s += k ? ",\n    " : "\n    ";
    s += ensemble_json(es[k]);
  }
  return s + (es.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

SpinorEnsemble ensemble_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("spinors")) throw DomainError("ensemble JSON: missing \"spinors\"");
  std::vector<Spinor> s;
  for (const auto& row : j.at("spinors")) {
    if (!row.is_array() || row.size() != 4) throw DomainError("ensemble JSON: spinor needs 4 numbers");
    s.push_back({cplx(row[0].get<double>(), row[1].get<double>()),
                 cplx(row[2].get<double>(), row[3].get<double>())});
  }
  if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(s.size())) {
    throw DomainError("ensemble JSON: n does not match spinor count");
  }
  return SpinorEnsemble(std::move(s));
}

std::vector<SpinorEnsemble> ensembles_from_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<SpinorEnsemble> out;
  if (j.contains("ensembles")) {
    for (const auto& e : j.at("ensembles")) out.push_back(ensemble_from_json(e));
  } else {
    out.push_back(ensemble_from_json(j));
  }
  return out;
}

std::string csv_preamble(const Meta& meta) {
  std::string s;
  s += "# tool: unpoly " + std::string(kVersion) + "\n";
  s += "# subcommand: " + meta.subcommand + "\n";
  s += "# config: " + meta.config.dump() + "\n";
  s += "# seed: " + std::to_string(meta.seed) + "\n";
  s += "# workers: " + std::to_string(meta.workers) + "\n";
  return s;
}

namespace {

nlohmann::ordered_json pair(cplx z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

cplx read_pair(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string polygon_json(const PolygonConfig& c, const Polygon& p) {
  nlohmann::ordered_json j;
  auto zs = nlohmann::ordered_json::array();
  for (cplx z : c.z) zs.push_back(pair(z));
  j["z"] = zs;
  auto vs = nlohmann::ordered_json::array();
  for (cplx v : p.vertices) vs.push_back(pair(v));
  j["vertices"] = vs;
  auto ns = nlohmann::ordered_json::array();
  for (cplx n : p.normals) ns.push_back(pair(n));
  j["normals"] = ns;
  j["edge_lengths"] = p.lengths;
  j["multiplicity"] = p.multiplicity;
  j["perimeter"] = p.perimeter();
  j["area"] = p.area();
  j["convex"] = p.convex;
  j["closure_residual"] = p.closure_residual;
  return j.dump();
}

std::string polygon_svg(const Polygon& p, const Meta& meta) {
  double r = 0.0;
  for (cplx v : p.vertices) r = std::max(r, std::abs(v));
  if (r == 0.0) r = 1.0;
  // Unit-scaled: the polygon fits in [-1.1, 1.1]^2, y axis pointing up.
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<!-- " << meta.to_json().dump() << " -->\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n";
  s << "  <path d=\"";
  for (size_t k = 0; k < p.vertices.size(); ++k) {
    s << (k ? " L " : "M ") << format_double(p.vertices[k].real() / r) << " "
      << format_double(-p.vertices[k].imag() / r);
  }
  s << " Z\" fill=\"none\" stroke=\"black\" stroke-width=\"0.01\"/>\n</svg>\n";
  return s.str();
}

PolygonConfig polygon_config_from_json(const nlohmann::json& j) {
  if (!j.contains("z")) throw DomainError("polygon JSON: missing \"z\"");
  PolygonConfig c;
  for (const auto& z : j.at("z")) c.z.push_back(read_pair(z));
  return c;
}

ComplexNetwork network_from_json(const nlohmann::json& j) {
  ComplexNetwork n;
  for (const auto& v : j.at("vertices")) n.vertices.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  for (const auto& l : j.at("links")) {
    NetworkLink link;
    link.source = l.at("source").get<int>();
    if (l.contains("target") && !l.at("target").is_null()) link.target = l.at("target").get<int>();
    link.z_source = read_pair(l.at("z_source"));
    if (link.target) link.z_target = read_pair(l.at("z_target"));
    n.links.push_back(link);
  }
  return n;
}

nlohmann::ordered_json network_to_json(const ComplexNetwork& n) {
  nlohmann::ordered_json j;
  j["vertices"] = n.vertices;
  auto links = nlohmann::ordered_json::array();
  for (const auto& l : n.links) {
    nlohmann::ordered_json o;
    o["source"] = l.source;
    o["target"] = l.target ? nlohmann::ordered_json(*l.target) : nlohmann::ordered_json(nullptr);
    o["z_source"] = pair(l.z_source);
    o["z_target"] = l.target ? pair(l.z_target) : nlohmann::ordered_json(nullptr);
    links.push_back(o);
  }
  j["links"] = links;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << content;
  if (!out) throw DomainError("write failed: " + path);
}

}  // namespace unpoly
