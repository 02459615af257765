#pragma once

#include <complex>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/app/config.hpp"
#include "arithdyn/dynamics/serialize.hpp"
#include "arithdyn/parameter/families.hpp"

namespace arithdyn::app {

// Writes to a sibling temporary file and renames it over the target, so readers never
// see a half-written artifact.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os.flush()) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Collects artifacts under one directory and remembers their relative names.
class ArtifactSink {
 public:
  explicit ArtifactSink(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    write_atomic(dir_ / name, content);
    names_.push_back(name);
  }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> names_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(is), {});
}

inline Json read_json_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto end = s.find(sep, start);
    out.push_back(detail::trim(s.substr(start, end == std::string::npos ? std::string::npos : end - start)));
    if (end == std::string::npos) return out;
    start = end + 1;
  }
}

inline double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(x)) throw ConfigError(what + ": '" + s + "' is not a number");
  return x;
}

// "re,im", "re", or a rational "a/b".
inline Complex parse_complex(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() == 2) return {parse_real(parts[0], what), parse_real(parts[1], what)};
  if (parts.size() == 1) {
    if (s.find('/') != std::string::npos) {
      try {
        return Complex(BigRat::parse(s).to_double());
      } catch (const DomainError&) {
        throw ConfigError(what + ": '" + s + "' is not a number");
      }
    }
    return Complex(parse_real(s, what));
  }
  throw ConfigError(what + ": expected re,im, got '" + s + "'");
}

inline std::vector<Complex> parse_complex_list(const std::string& s, const std::string& what) {
  std::vector<Complex> out;
  for (const auto& item : split(s, ';')) out.push_back(parse_complex(item, what));
  return out;
}

// Integers, "a/b" and finite decimals such as -0.75, all exact.
inline BigRat parse_rational(const std::string& s, const std::string& what) {
  try {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return BigRat::parse(s);
    if (s.find_first_of("/eE") != std::string::npos) throw DomainError("mixed form");
    const std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (negative || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw DomainError("bad digits");
    BigRat r(parse_bigint(whole + frac), pow(BigInt(10), frac.size()));
    return negative ? -r : r;
  } catch (const DomainError&) {
    throw ConfigError(what + ": '" + s + "' is not a rational number");
  }
}

inline ProjPointQ parse_point_q(const std::string& s, const std::string& what) {
  if (s == "inf") return ProjPointQ::infinity();
  const BigRat r = parse_rational(s, what);
  return ProjPointQ(r.num(), r.den());
}

// A map as chosen on the command line: always an analytic model, plus the exact rational
// map when the coefficients are rational and the polynomial form when Q is a constant.
struct MapModel {
  std::string label;
  RationalMapC analytic;
  std::optional<RationalMapQ> exact;
  std::optional<PolyC> poly;

  const RationalMapQ& require_exact(const std::string& command) const {
    if (!exact) throw ConfigError(command + " needs a map with rational coefficients; '" + label + "' has none");
    return *exact;
  }
};

namespace detail {

inline std::optional<PolyC> polynomial_part(const RationalMapQ& f) {
  const auto& q = f.q().coeffs();
  for (std::size_t i = 1; i < q.size(); ++i)
    if (q[i] != 0) return std::nullopt;
  std::vector<Complex> c;
  for (const auto& a : f.p().coeffs()) c.push_back(Complex(ratio_to_double(a, q[0])));
  return PolyC(std::move(c));
}

inline MapModel exact_model(std::string label, RationalMapQ f) {
  auto poly = polynomial_part(f);
  if (poly) return MapModel{std::move(label), RationalMapC::polynomial(*poly), std::move(f), std::move(poly)};
  RationalMapC c(f);
  return MapModel{std::move(label), std::move(c), std::move(f), std::nullopt};
}

inline MapModel analytic_model(std::string label, PolyC p) {
  RationalMapC c = RationalMapC::polynomial(p);
  return MapModel{std::move(label), std::move(c), std::nullopt, std::move(p)};
}

inline HomPolyZ integer_form(const std::string& s, const std::string& what) {
  std::vector<BigInt> c;
  for (const auto& item : split(s, ';')) {
    try {
      c.push_back(parse_bigint(item));
    } catch (const DomainError&) {
      throw ConfigError(what + ": '" + item + "' is not an integer");
    }
  }
  return HomPolyZ(std::move(c));
}

}  // namespace detail

inline MapModel build_map(const ResolvedConfig& cfg) {
  const std::string kind = cfg.text("map");
  if (kind == "power") {
    const std::size_t d = cfg.size("d");
    return detail::exact_model("z^" + std::to_string(d), RationalMapQ::power(d));
  }
  if (kind == "z2c") {
    const std::string c = cfg.text("c");
    if (c.find(',') == std::string::npos) {
      const BigRat r = parse_rational(c, "c");
      return detail::exact_model("z^2+(" + r.str() + ")", RationalMapQ::quadratic(r));
    }
    const Complex z = parse_complex(c, "c");
    return detail::analytic_model("z^2+(" + c + ")", PolyC{z, Complex(0.0), Complex(1.0)});
  }
  if (kind == "poly") {
    std::vector<BigRat> a;
    for (const auto& item : split(cfg.text("coeffs"), ';')) a.push_back(parse_rational(item, "coeffs"));
    while (a.size() > 1 && a.back().is_zero()) a.pop_back();
    if (a.size() < 3) throw ConfigError("coeffs: a polynomial map needs degree at least 2");
    return detail::exact_model("poly[" + cfg.text("coeffs") + "]", RationalMapQ::polynomial(a));
  }
  if (kind == "rational") {
    HomPolyZ p = detail::integer_form(cfg.text("P"), "P"), q = detail::integer_form(cfg.text("Q"), "Q");
    if (p.coeffs().size() != q.coeffs().size()) throw ConfigError("P and Q need the same number of coefficients");
    return detail::exact_model("[" + cfg.text("P") + "]/[" + cfg.text("Q") + "]", RationalMapQ(std::move(p), std::move(q)));
  }
  if (kind == "lattes") return detail::exact_model("lattes", RationalMapQ::lattes());
  if (kind == "file") {
    if (cfg.text("map-file").empty()) throw ConfigError("map=file needs map-file");
    return detail::exact_model(cfg.text("map-file"), map_from_json(read_json_file(cfg.text("map-file"))));
  }
  if (kind == "cubic")
    return detail::analytic_model("cubic", cubic_poly({parse_complex(cfg.text("c"), "c"), parse_complex(cfg.text("a"), "a")}));
  if (kind == "per1")
    return detail::analytic_model("per1", per1_poly({parse_complex(cfg.text("s"), "s"), parse_complex(cfg.text("kappa"), "kappa")}));
  throw ConfigError("unknown map '" + kind + "'");
}

inline std::string complex_str(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
  return buf;
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json green_json(const GreenValue& g, const std::string& method) {
  Json j = Json::object();
  j["value"] = g.value;
  j["error"] = g.error;
  j["depth"] = g.depth;
  j["method"] = method;
  j["place"] = g.prime ? g.prime->get_str() : "inf";
  if (g.log_p_multiple) j["log_p_multiple"] = g.log_p_multiple->str();
  return j;
}

}  // namespace arithdyn::app
