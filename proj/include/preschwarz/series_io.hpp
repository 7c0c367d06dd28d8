#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "analytic.hpp"

namespace preschwarz {

// Schema: {"coeffs": [[re, im], ...], "radius_hint": r}; index = power of z.

inline PowerSeries series_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw DomainError("series: top-level JSON value must be an object");
  }
  if (!doc.contains("coeffs") || !doc.at("coeffs").is_array()) {
    throw DomainError("series: missing array field \"coeffs\"");
  }
  if (!doc.contains("radius_hint") || !doc.at("radius_hint").is_number()) {
    throw DomainError("series: missing numeric field \"radius_hint\"");
  }
  std::vector<Complex> coeffs;
  coeffs.reserve(doc.at("coeffs").size());
  std::size_t index = 0;
  for (const auto& c : doc.at("coeffs")) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw DomainError("series: coeffs[" + std::to_string(index) + "] is not a [re, im] pair");
    }
    coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    ++index;
  }
  return PowerSeries(std::move(coeffs), doc.at("radius_hint").get<double>());
}

inline PowerSeries series_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("series: JSON parse error: ") + e.what());
  }
  return series_from_json(doc);
}

inline PowerSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("series: cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return series_from_json_text(buf.str());
}

inline nlohmann::json series_to_json(const PowerSeries& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& a : f.coeffs) {
    coeffs.push_back({a.real(), a.imag()});
  }
  return {{"coeffs", coeffs}, {"radius_hint", f.radius_hint}};
}

}  // namespace preschwarz
