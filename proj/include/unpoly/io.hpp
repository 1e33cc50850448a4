#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "unpoly/polygon.hpp"
#include "unpoly/spinor.hpp"

namespace unpoly {

inline constexpr const char* kVersion = "0.1.0";

/// Run metadata embedded in every output file.
struct Meta {
  std::string subcommand;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  int workers = 1;

  nlohmann::ordered_json to_json() const;
};

/// 17 significant digits; round-trips every double.
std::string format_double(double x);

/// {"n": N, "spinors": [[re0, im0, re1, im1], ...]}
std::string ensemble_json(const SpinorEnsemble& e);
/// {"meta": {...}, "ensembles": [...]}
std::string ensembles_document(const std::vector<SpinorEnsemble>& es, const Meta& meta);
/// Accepts a bare ensemble object.
SpinorEnsemble ensemble_from_json(const nlohmann::json& j);
/// Accepts a bare ensemble or a document; returns every ensemble found.
std::vector<SpinorEnsemble> ensembles_from_text(const std::string& text);

/// "# key: value" lines.
std::string csv_preamble(const Meta& meta);

std::string polygon_json(const PolygonConfig& c, const Polygon& p);
std::string polygon_svg(const Polygon& p, const Meta& meta);
PolygonConfig polygon_config_from_json(const nlohmann::json& j);

/// {"vertices": [...], "links": [{"source", "target", "z_source": [re, im],
/// "z_target": [re, im]}]}; target null for boundary links.
ComplexNetwork network_from_json(const nlohmann::json& j);
nlohmann::ordered_json network_to_json(const ComplexNetwork& n);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace unpoly
