#pragma once

// Parameter files: {"upper": [[alpha, A], ...], "lower": [[beta, B], ...]}.
// Scalar checkers read named keys (alpha1, beta1, beta2, B1) instead.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "series.hpp"

namespace foxwright {

namespace detail {

inline std::vector<WeightedParam> parse_side(const nlohmann::json& j, const char* key) {
  std::vector<WeightedParam> out;
  if (!j.contains(key)) return out;
  const auto& a = j.at(key);
  if (!a.is_array()) throw ParameterError(std::string("\"") + key + "\" must be an array");
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ParameterError(std::string("entries of \"") + key + "\" must be [value, weight]");
    out.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return out;
}

}  // namespace detail

inline FoxWrightParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("parameter file must hold a JSON object");
  if (!j.contains("upper") && !j.contains("lower"))
    throw ParameterError("parameter file needs \"upper\" and/or \"lower\"");
  FoxWrightParams p{detail::parse_side(j, "upper"), detail::parse_side(j, "lower")};
  validate(p);
  return p;
}

inline nlohmann::json params_to_json(const FoxWrightParams& p) {
  nlohmann::json j;
  j["upper"] = nlohmann::json::array();
  j["lower"] = nlohmann::json::array();
  for (const auto& a : p.upper) j["upper"].push_back({a.value, a.weight});
  for (const auto& b : p.lower) j["lower"].push_back({b.value, b.weight});
  return j;
}

/// Reads and parses a JSON file; syntax errors surface as ParameterError.
inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(path + ": " + e.what());
  }
}

}  // namespace foxwright
