#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "arithdyn/dynamics/rational_map.hpp"

namespace arithdyn {

using Json = nlohmann::ordered_json;

// {"degree": d, "P": [...], "Q": [...]}: coefficient i multiplies x^i y^(d-i); integers
// are decimal strings so nothing is lost to a JSON double.
inline Json to_json(const RationalMapQ& f) {
  Json p = Json::array(), q = Json::array();
  for (const auto& c : f.p().coeffs()) p.push_back(c.get_str());
  for (const auto& c : f.q().coeffs()) q.push_back(c.get_str());
  return Json{{"degree", f.degree()}, {"P", p}, {"Q", q}};
}

inline Json to_json(const ProjPointQ& x) { return Json::array({x.x().get_str(), x.y().get_str()}); }

namespace detail {

inline BigInt json_integer(const Json& v) {
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  if (v.is_number_integer()) return BigInt(v.get<long>());
  throw DomainError("expected an integer or an integer string");
}

inline HomPolyZ json_form(const Json& v, std::size_t degree) {
  if (!v.is_array() || v.size() != degree + 1)
    throw DomainError("a form of degree " + std::to_string(degree) + " needs " + std::to_string(degree + 1) + " coefficients");
  std::vector<BigInt> c;
  for (const auto& x : v) c.push_back(json_integer(x));
  return HomPolyZ(std::move(c));
}

}  // namespace detail

inline RationalMapQ map_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("map must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "degree" && key != "P" && key != "Q") throw DomainError("unknown map field '" + key + "'");
  if (!j.contains("degree") || !j.contains("P") || !j.contains("Q")) throw DomainError("map needs degree, P and Q");
  const auto d = j.at("degree").get<std::size_t>();
  return RationalMapQ(detail::json_form(j.at("P"), d), detail::json_form(j.at("Q"), d));
}

inline ProjPointQ point_from_json(const Json& j) {
  if (j.is_string()) return ProjPointQ::parse(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) throw DomainError("point must be [x, y] or \"a/b\"");
  return ProjPointQ(detail::json_integer(j[0]), detail::json_integer(j[1]));
}

}  // namespace arithdyn
