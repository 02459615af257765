#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "arithdyn/error.hpp"

namespace arithdyn::app {

using Json = nlohmann::ordered_json;

// Malformed or unknown configuration. Exit status 2, like a domain error.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class ParamType { integer, real, text, choice, flag };

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::text;
  std::string fallback;  // default, in command-line form
  std::string help;
  std::vector<std::string> choices;
  double minimum = -std::numeric_limits<double>::infinity();
  bool exclusive = false;  // value must exceed the minimum
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;

  const ParamSpec* find(const std::string& key) const {
    for (const auto& p : params)
      if (p.name == key) return &p;
    return nullptr;
  }
};

namespace detail {

inline ParamSpec integer(std::string name, std::string fallback, std::string help, double minimum = 0) {
  return {std::move(name), ParamType::integer, std::move(fallback), std::move(help), {}, minimum};
}
inline ParamSpec real(std::string name, std::string fallback, std::string help,
                      double minimum = -std::numeric_limits<double>::infinity()) {
  return {std::move(name), ParamType::real, std::move(fallback), std::move(help), {}, minimum};
}
inline ParamSpec positive(std::string name, std::string fallback, std::string help) {
  return {std::move(name), ParamType::real, std::move(fallback), std::move(help), {}, 0.0, true};
}
inline ParamSpec text(std::string name, std::string fallback, std::string help) {
  return {std::move(name), ParamType::text, std::move(fallback), std::move(help), {}};
}
inline ParamSpec choice(std::string name, std::string fallback, std::vector<std::string> choices, std::string help) {
  return {std::move(name), ParamType::choice, std::move(fallback), std::move(help), std::move(choices)};
}
inline ParamSpec flag(std::string name, std::string help) {
  return {std::move(name), ParamType::flag, "false", std::move(help), {}};
}

inline std::vector<ParamSpec> common_params() {
  return {integer("threads", "0", "worker threads, 0 = all hardware threads"),
          integer("seed", "42", "64-bit seed of the counter-based generator"),
          text("out", ".", "directory receiving the artifacts")};
}

inline std::vector<ParamSpec> map_params(bool analytic) {
  std::vector<std::string> kinds{"power", "z2c", "poly", "rational", "lattes", "file"};
  if (analytic) {
    kinds.push_back("cubic");
    kinds.push_back("per1");
  }
  std::vector<ParamSpec> v{
      choice("map", "z2c", kinds, "map family"),
      integer("d", "2", "degree of the power map", 2),
      text("c", "0", analytic ? "z2c: c as a rational or re,im; cubic: critical point c as re,im"
                              : "z2c: c as a rational such as -3/4"),
      text("coeffs", "0;0;1", "poly: rational coefficients a0;a1;...;ad"),
      text("P", "0;0;1", "rational: integer coefficients of P, x^0 y^d first"),
      text("Q", "1;0;0", "rational: integer coefficients of Q, x^0 y^d first"),
      text("map-file", "", "file: JSON {\"degree\": d, \"P\": [...], \"Q\": [...]}")};
  if (analytic) {
    v.push_back(text("a", "0", "cubic: a as re,im (P(0) = a^3)"));
    v.push_back(text("s", "2", "per1: s as re,im"));
    v.push_back(text("kappa", "4", "per1: multiplier of the fixed point 0, re,im"));
  }
  return v;
}

inline std::vector<ParamSpec> locus_params(bool with_disk) {
  std::vector<std::string> fam{"quadratic", "cubic-slice", "per1", "julia"};
  if (with_disk) fam.push_back("disk");
  return {choice("family", "quadratic", fam,
                 "quadratic: c of z^2+c; cubic-slice: a with c fixed; per1: s; julia: z for z^2+c"
                     + std::string(with_disk ? "; disk: indicator of |z| <= 1" : "")),
          text("box", "-2.5,1.5,-2,2", "re_min,re_max,im_min,im_max"),
          integer("width", "512", "pixels per row", 1),
          integer("height", "512", "pixel rows", 1),
          integer("depth", "500", "iteration cap per pixel", 1),
          text("c", "0", "cubic-slice: fixed c; julia: c of z^2+c; re,im"),
          text("kappa", "4", "per1: multiplier of the fixed point 0, re,im")};
}

template <class... V>
std::vector<ParamSpec> join(V&&... parts) {
  std::vector<ParamSpec> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

}  // namespace detail

inline const std::vector<CommandSpec>& command_table() {
  using namespace detail;
  static const std::vector<CommandSpec> table{
      {"green", "archimedean Green function G(z) of a map",
       join(map_params(true), std::vector{text("z", "0", "point as a rational, re,im or inf"),
                                          positive("tol", "1e-12", "absolute tolerance"),
                                          integer("max-depth", "1000000", "iteration cap", 1)},
            common_params())},
      {"green-padic", "p-adic Green function at a rational point, an exact rational multiple of log p",
       join(map_params(false), std::vector{text("x", "0", "point as a/b or inf"), text("p", "2", "prime"),
                                           integer("depth", "64", "iteration depth", 1),
                                           choice("normalization", "lift", {"lift", "affine"},
                                                  "lift: homogeneous lift; affine: log+|z|_p normalisation")},
            common_params())},
      {"height", "canonical height h_f(x) of a rational point",
       join(map_params(false),
            std::vector{text("x", "0", "point as a/b or inf"), positive("tol", "1e-10", "absolute tolerance"),
                        choice("method", "adelic", {"adelic", "global", "both"}, "algorithm")},
            common_params())},
      {"preper", "decide whether a rational point is preperiodic",
       join(map_params(false), std::vector{text("x", "0", "point as a/b or inf")}, common_params())},
      {"search", "all preperiodic rational points of naive height <= bound",
       join(map_params(false), std::vector{real("bound", "4.605170185988092", "naive height bound, natural log", 0),
                                           integer("budget", "20000000", "enumeration budget", 1)},
            common_params())},
      {"cloud", "sample the equilibrium measure by backward orbits or periodic points",
       join(map_params(true),
            std::vector{choice("kind", "backward", {"backward", "periodic"}, "sampler"),
                        text("z0", "0.3,0.2", "backward: start point re,im"),
                        integer("depth", "12", "backward: tree depth", 1),
                        integer("width", "0", "backward: random branches, 0 = full tree"),
                        integer("period", "8", "periodic: n of Fix(f^n)", 1)},
            common_params())},
      {"lyapunov", "Lyapunov exponent of the equilibrium measure by Birkhoff averages",
       join(map_params(true),
            std::vector{text("z0", "0.3,0.2", "start point re,im"), integer("depth", "30", "backward depth", 1),
                        integer("width", "2048", "backward branches", 1), integer("burn", "5", "burn-in steps"),
                        integer("avg", "20", "averaged steps", 1)},
            common_params())},
      {"compare", "largest potential gap between clouds on a probe ring",
       join(map_params(true),
            std::vector{text("starts", "0;5;0,2", "backward start points re,im separated by ;"),
                        integer("depth", "12", "backward depth", 1),
                        integer("width", "0", "backward branches, 0 = full tree"),
                        integer("period", "0", "also compare Fix(f^n) when positive"),
                        positive("radius", "3", "probe ring radius"), integer("probes", "20", "probe count", 1)},
            common_params())},
      {"mandelbrot", "Green function G_M(c) of the Mandelbrot set",
       join(std::vector{text("c", "0", "parameter re,im"), positive("tol", "1e-12", "absolute tolerance"),
                        integer("max-depth", "1000000", "iteration cap", 1)},
            common_params())},
      {"param-height", "adelic height of a rational parameter of z^2 + c",
       join(std::vector{text("c", "1/2", "parameter as a/b"), positive("tol", "1e-10", "absolute tolerance")},
            common_params())},
      {"percrit", "roots of f_c^n(0) = f_c^k(0) with multiplicity",
       join(std::vector{integer("n", "2", "orbit index n", 1), integer("k", "0", "orbit index k < n"),
                        integer("capacity", "4194304", "largest allowed degree", 1)},
            common_params())},
      {"equidist", "mean of log|c - c0| over Percrit roots against G_M(c0)",
       join(std::vector{integer("n", "12", "orbit index n", 1), integer("k", "0", "orbit index k < n"),
                        text("probes", "3", "probe parameters re,im separated by ;")},
            common_params())},
      {"cubic", "G(c, a) = max(G_P(0), G_P(c)) for P(z) = z^3/3 - c z^2/2 + a^3",
       join(std::vector{text("c", "0", "re,im"), text("a", "0", "re,im"), positive("tol", "1e-10", "absolute tolerance")},
            common_params())},
      {"per1", "G+(s) and G-(s) for f_s(z) = kappa (z - (s + 1/s) z^2 / 2 + z^3 / 3)",
       join(std::vector{text("s", "2", "re,im"), text("kappa", "4", "re,im"),
                        positive("tol", "1e-10", "absolute tolerance")},
            common_params())},
      {"locus", "escape-time grid of a parameter or dynamical plane with Green values",
       join(locus_params(false),
            std::vector{positive("gmax", "4", "Green value mapped to white"), flag("csv", "also write the pixel CSV")},
            common_params())},
      {"boxdim", "box-counting dimension of the boundary of a grid",
       join(locus_params(true), std::vector{text("scales", "2;4;8;16;32;64", "box sides in pixels")},
            common_params())},
      {"selftest", "run the acceptance criteria and write their artifacts",
       join(std::vector{text("criteria", "all", "criterion ids separated by ; or all")}, common_params())},
  };
  return table;
}

inline const CommandSpec& find_command(const std::string& name) {
  for (const auto& c : command_table())
    if (c.name == name) return c;
  throw ConfigError("unknown command '" + name + "'");
}

namespace detail {

inline std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

inline std::string raw_text(const ParamSpec& p, const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw ConfigError("parameter '" + p.name + "' must be a string, number or boolean");
}

}  // namespace detail

// Converts a command-line string or JSON scalar into the canonical typed JSON value.
inline Json typed_value(const ParamSpec& p, const Json& v) {
  const std::string s = detail::trim(detail::raw_text(p, v));
  const std::string where = "parameter '" + p.name + "'";
  switch (p.type) {
    case ParamType::integer: {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError(where + " must be a nonnegative integer, got '" + s + "'");
      std::uint64_t x = 0;
      try {
        x = std::stoull(s);
      } catch (const std::exception&) {
        throw ConfigError(where + " is out of range");
      }
      if (static_cast<double>(x) < p.minimum) throw ConfigError(where + " must be at least " + std::to_string(static_cast<long long>(p.minimum)));
      return Json(x);
    }
    case ParamType::real: {
      std::size_t used = 0;
      double x = 0;
      try {
        x = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() || s.empty() || !std::isfinite(x)) throw ConfigError(where + " must be a finite number");
      if (p.exclusive ? !(x > p.minimum) : x < p.minimum)
        throw ConfigError(where + " must be " + (p.exclusive ? "above " : "at least ") + Json(p.minimum).dump());
      return Json(x);
    }
    case ParamType::choice:
      for (const auto& c : p.choices)
        if (c == s) return Json(s);
      {
        std::string all;
        for (const auto& c : p.choices) all += (all.empty() ? "" : "|") + c;
        throw ConfigError(where + " must be one of " + all + ", got '" + s + "'");
      }
    case ParamType::flag:
      if (s == "true" || s == "1") return Json(true);
      if (s == "false" || s == "0") return Json(false);
      throw ConfigError(where + " must be true or false");
    case ParamType::text:
      return Json(s);
  }
  return Json(s);
}

// A fully resolved, validated configuration: every parameter of the command, in table order.
struct ResolvedConfig {
  std::string command;
  Json values = Json::object();

  std::uint64_t integer(const std::string& k) const { return values.at(k).get<std::uint64_t>(); }
  std::size_t size(const std::string& k) const { return static_cast<std::size_t>(integer(k)); }
  double real(const std::string& k) const { return values.at(k).get<double>(); }
  std::string text(const std::string& k) const { return values.at(k).get<std::string>(); }
  bool flag(const std::string& k) const { return values.at(k).get<bool>(); }

  Json to_json() const {
    Json j = Json::object();
    j["command"] = command;
    for (const auto& [k, v] : values.items()) j[k] = v;
    return j;
  }
};

// Command line beats config file beats default. The file may name the command; any key
// the command does not declare is rejected.
inline ResolvedConfig resolve_config(const CommandSpec& cmd, const std::map<std::string, std::string>& given,
                                     const Json& file = Json::object()) {
  if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : file.items()) {
    if (key == "command") {
      if (!value.is_string() || value.get<std::string>() != cmd.name)
        throw ConfigError("config file is for command " + value.dump() + ", not '" + cmd.name + "'");
      continue;
    }
    if (!cmd.find(key)) throw ConfigError("unknown field '" + key + "' for command '" + cmd.name + "'");
  }
  for (const auto& [key, _] : given)
    if (!cmd.find(key)) throw ConfigError("unknown option '" + key + "' for command '" + cmd.name + "'");
  ResolvedConfig r;
  r.command = cmd.name;
  for (const auto& p : cmd.params) {
    if (auto it = given.find(p.name); it != given.end())
      r.values[p.name] = typed_value(p, Json(it->second));
    else if (file.contains(p.name))
      r.values[p.name] = typed_value(p, file.at(p.name));
    else
      r.values[p.name] = typed_value(p, Json(p.fallback));
  }
  return r;
}

// JSON Schema (draft 2020-12) of a config file, generated from the command table.
inline Json config_schema() {
  Json names = Json::array();
  for (const auto& c : command_table()) names.push_back(c.name);
  Json branches = Json::array();
  for (const auto& c : command_table()) {
    Json props = Json::object();
    props["command"] = Json{{"const", c.name}};
    for (const auto& p : c.params) {
      Json s = Json::object();
      s["description"] = p.help;
      switch (p.type) {
        case ParamType::integer:
          s["type"] = Json::array({"integer", "string"});
          s["minimum"] = static_cast<std::uint64_t>(std::max(0.0, p.minimum));
          s["default"] = std::stoull(p.fallback);
          break;
        case ParamType::real:
          s["type"] = Json::array({"number", "string"});
          if (std::isfinite(p.minimum)) s[p.exclusive ? "exclusiveMinimum" : "minimum"] = p.minimum;
          s["default"] = std::stod(p.fallback);
          break;
        case ParamType::choice:
          s["enum"] = p.choices;
          s["default"] = p.fallback;
          break;
        case ParamType::flag:
          s["type"] = "boolean";
          s["default"] = false;
          break;
        case ParamType::text:
          s["type"] = "string";
          s["default"] = p.fallback;
          break;
      }
      props[p.name] = s;
    }
    branches.push_back(Json{{"if", {{"properties", {{"command", {{"const", c.name}}}}}}},
                            {"then", {{"properties", props}, {"additionalProperties", false}}}});
  }
  Json schema = Json::object();
  schema["$schema"] = "https://json-schema.org/draft/2020-12/schema";
  schema["title"] = "arithdyn experiment config";
  schema["description"] = "Logs are natural, tolerances absolute. Command-line options override file values.";
  schema["type"] = "object";
  schema["properties"] = Json{{"command", {{"enum", names}}}};
  schema["allOf"] = branches;
  return schema;
}

}  // namespace arithdyn::app
