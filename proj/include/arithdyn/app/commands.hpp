#pragma once

#include <cstdio>
#include <iostream>
#include <string>

#include "arithdyn/app/acceptance.hpp"
#include "arithdyn/app/io.hpp"

namespace arithdyn::app {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailedCheck = 1,
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitResource = 4,
};

struct CommandResult {
  Json summary = Json::object();
  int status = kExitOk;
};

namespace detail {

inline GreenValue green_at(const MapModel& m, const std::string& z, double tol, std::size_t max_depth, std::string& method) {
  if (z == "inf") {
    method = "homogeneous-lift";
    return green_arch(m.analytic, LiftC{Complex(1.0), Complex(0.0)}, tol, max_depth);
  }
  const Complex w = parse_complex(z, "z");
  if (m.poly) {
    method = "polynomial-escape";
    return green_poly(*m.poly, w, tol, max_depth);
  }
  method = "homogeneous-lift";
  return green_arch(m.analytic, LiftC{w, Complex(1.0)}, tol, max_depth);
}

inline Json height_json(const HeightValue& h) {
  return Json{{"value", h.value}, {"error", h.error}, {"depth", h.depth}, {"method", to_string(h.method)}, {"place", "all"}};
}

inline Json points_json(const std::vector<ProjPointQ>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p.str());
  return a;
}

inline Box parse_box(const std::string& text) {
  const auto b = split(text, ',');
  if (b.size() != 4) throw ConfigError("box: expected re_min,re_max,im_min,im_max");
  const Box box{parse_real(b[0], "box"), parse_real(b[1], "box"), parse_real(b[2], "box"), parse_real(b[3], "box")};
  if (!(box.re_min < box.re_max && box.im_min < box.im_max)) throw ConfigError("box: empty rectangle");
  return box;
}

inline LocusSpec locus_spec(const ResolvedConfig& cfg) {
  LocusSpec s;
  const std::string fam = cfg.text("family");
  if (fam == "quadratic") s.family = LocusFamily::quadratic;
  else if (fam == "cubic-slice") s.family = LocusFamily::cubic_slice;
  else if (fam == "per1") s.family = LocusFamily::per1;
  else s.family = LocusFamily::julia;
  s.box = parse_box(cfg.text("box"));
  s.width = cfg.size("width");
  s.height = cfg.size("height");
  if (s.width * s.height > (std::size_t{1} << 26)) throw ResourceError("locus: more than 2^26 pixels requested");
  s.max_depth = cfg.size("depth");
  s.kappa = parse_complex(cfg.text("kappa"), "kappa");
  const Complex c = parse_complex(cfg.text("c"), "c");
  s.fixed_c = c;
  s.julia_map = PolyC{c, Complex(0.0), Complex(1.0)};
  return s;
}

inline Json locus_counts(const LocusGrid& g) {
  return Json{{"escaped", g.count(PixelState::escaped)},
              {"interior", g.count(PixelState::interior)},
              {"undecided", g.count(PixelState::undecided)},
              {"boundary", g.boundary_count()},
              {"interior_area", g.area(PixelState::interior)}};
}

}  // namespace detail

// Runs one resolved command. Artifacts go under cfg "out"; the summary is the one-line
// JSON printed on standard output.
inline CommandResult run_command(const ResolvedConfig& cfg) {
  using namespace detail;
  const std::string& name = cfg.command;
  const unsigned threads = static_cast<unsigned>(cfg.integer("threads"));
  const std::uint64_t seed = cfg.integer("seed");
  ArtifactSink sink(cfg.text("out"));
  CommandResult r;
  Json& s = r.summary;
  s["command"] = name;
  s["status"] = "ok";

  if (name == "green") {
    const MapModel m = build_map(cfg);
    std::string method;
    const GreenValue g = green_at(m, cfg.text("z"), cfg.real("tol"), cfg.size("max-depth"), method);
    s["map"] = m.label;
    s.update(green_json(g, method));
  } else if (name == "green-padic") {
    const MapModel m = build_map(cfg);
    const RationalMapQ& f = m.require_exact(name);
    BigInt p;
    try {
      p = parse_bigint(cfg.text("p"));
    } catch (const DomainError&) {
      throw ConfigError("p: '" + cfg.text("p") + "' is not an integer");
    }
    const ProjPointQ x = parse_point_q(cfg.text("x"), "x");
    const bool affine = cfg.text("normalization") == "affine";
    const GreenValue g = affine ? green_padic_affine(f, p, x, cfg.size("depth")) : green_padic(f, p, x, cfg.size("depth"));
    s["map"] = m.label;
    s.update(green_json(g, affine ? "padic-affine" : "padic-lift"));
  } else if (name == "height") {
    const MapModel m = build_map(cfg);
    const RationalMapQ& f = m.require_exact(name);
    const ProjPointQ x = parse_point_q(cfg.text("x"), "x");
    const std::string method = cfg.text("method");
    s["map"] = m.label;
    s["x"] = x.str();
    const double tol = cfg.real("tol");
    if (method == "adelic" || method == "both") {
      const HeightValue h = canonical_height_adelic(f, x, tol);
      s.update(height_json(h));
    }
    if (method == "global" || method == "both") {
      const HeightValue h = canonical_height_global(f, x, tol);
      if (method == "global")
        s.update(height_json(h));
      else {
        s["global"] = height_json(h);
        s["agree"] = std::fabs(h.value - s["value"].get<double>()) <= h.error + s["error"].get<double>();
      }
    }
    s["naive"] = naive_height(x);
  } else if (name == "preper") {
    const MapModel m = build_map(cfg);
    const RationalMapQ& f = m.require_exact(name);
    const auto cert = is_preperiodic(f, parse_point_q(cfg.text("x"), "x"));
    s["map"] = m.label;
    s["verdict"] = to_string(cert.verdict);
    if (cert.verdict == Verdict::preperiodic) {
      s["tail"] = cert.tail;
      s["period"] = cert.period;
    } else {
      s["height_lower_bound"] = cert.height_lower_bound;
    }
    s["orbit"] = points_json(cert.orbit);
  } else if (name == "search") {
    const MapModel m = build_map(cfg);
    const auto pts = preperiodic_search(m.require_exact(name), cfg.real("bound"), cfg.size("budget"));
    std::string csv = "x,y\n";
    for (const auto& p : pts) csv += p.x().get_str() + "," + p.y().get_str() + "\n";
    sink.write("preperiodic.csv", csv);
    s["map"] = m.label;
    s["count"] = pts.size();
    s["points"] = points_json(pts);
  } else if (name == "cloud") {
    const MapModel m = build_map(cfg);
    const bool periodic = cfg.text("kind") == "periodic";
    const PointCloud c = periodic ? periodic_cloud(m.analytic, cfg.size("period"))
                                  : backward_cloud(m.analytic, parse_complex(cfg.text("z0"), "z0"), cfg.size("depth"),
                                                   cfg.size("width"), seed, threads);
    sink.write("cloud.csv", cloud_csv(c));
    sink.write("cloud.bin", cloud_binary(c));
    s["map"] = m.label;
    s["atoms"] = c.size();
    s["provenance"] = to_string(c.provenance);
  } else if (name == "lyapunov") {
    const MapModel m = build_map(cfg);
    const PointCloud c = backward_cloud(m.analytic, parse_complex(cfg.text("z0"), "z0"), cfg.size("depth"),
                                        cfg.size("width"), seed, threads);
    const LyapunovEstimate e = lyapunov(m.analytic, c, cfg.size("burn"), cfg.size("avg"), seed);
    s["map"] = m.label;
    s["value"] = e.value;
    s["standard_error"] = e.standard_error;
    s["samples"] = e.samples;
    s["resampled"] = e.resampled;
    s["lower_bound"] = std::log(static_cast<double>(m.analytic.degree())) / 2.0;
  } else if (name == "compare") {
    const MapModel m = build_map(cfg);
    std::vector<PointCloud> clouds;
    Json labels = Json::array();
    for (const Complex z0 : parse_complex_list(cfg.text("starts"), "starts")) {
      clouds.push_back(backward_cloud(m.analytic, z0, cfg.size("depth"), cfg.size("width"), seed, threads));
      labels.push_back("backward from " + complex_str(z0));
    }
    if (cfg.size("period") > 0) {
      clouds.push_back(periodic_cloud(m.analytic, cfg.size("period")));
      labels.push_back("periodic " + std::to_string(cfg.size("period")));
    }
    const auto ring = probe_ring(cfg.real("radius"), cfg.size("probes"));
    Json gaps = Json::array();
    double worst = 0.0;
    std::string csv = "i,j,gap\n";
    for (std::size_t i = 0; i < clouds.size(); ++i)
      for (std::size_t j = i + 1; j < clouds.size(); ++j) {
        const double g = compare_clouds(clouds[i], clouds[j], ring);
        worst = std::max(worst, g);
        gaps.push_back(Json{{"a", labels[i]}, {"b", labels[j]}, {"gap", g}});
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g\n", i, j, g);
        csv += buf;
      }
    sink.write("compare.csv", csv);
    s["map"] = m.label;
    s["max_gap"] = worst;
    s["pairs"] = gaps;
  } else if (name == "mandelbrot") {
    const GreenValue g = mandelbrot_green(parse_complex(cfg.text("c"), "c"), cfg.real("tol"), cfg.size("max-depth"));
    s.update(green_json(g, "critical-orbit-escape"));
  } else if (name == "param-height") {
    const BigRat c = parse_rational(cfg.text("c"), "c");
    const ParamHeight h = mandelbrot_param_height(c, cfg.real("tol"));
    s["c"] = c.str();
    s.update(height_json(h.height));
    s["archimedean"] = h.archimedean;
    Json fin = Json::array();
    for (const auto& g : h.finite) fin.push_back(green_json(g, "padic-affine"));
    s["finite"] = fin;
  } else if (name == "percrit") {
    const std::size_t n = cfg.size("n"), k = cfg.size("k");
    const PercritRoots pr = percrit_roots(n, k, cfg.size("capacity"));
    sink.write("percrit_" + std::to_string(n) + "_" + std::to_string(k) + ".csv", percrit_csv(pr));
    s["n"] = n;
    s["k"] = k;
    s["degree"] = pr.degree;
    s["roots"] = pr.roots.size();
    s["distinct"] = pr.clusters.size();
    s["residual"] = pr.residual;
  } else if (name == "equidist") {
    const auto rep = percrit_equidistribution_test(cfg.size("n"), cfg.size("k"),
                                                   parse_complex_list(cfg.text("probes"), "probes"));
    std::string csv = "re,im,mean_log,green,deviation\n";
    for (std::size_t i = 0; i < rep.probes.size(); ++i) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", rep.probes[i].real(), rep.probes[i].imag(),
                    rep.mean_log[i], rep.green[i], rep.deviation[i]);
      csv += buf;
    }
    sink.write("equidist.csv", csv);
    s["n"] = rep.n;
    s["k"] = rep.k;
    s["roots"] = rep.roots;
    s["max_deviation"] = rep.max_deviation;
  } else if (name == "cubic") {
    const CubicParam q{parse_complex(cfg.text("c"), "c"), parse_complex(cfg.text("a"), "a")};
    const CubicGreens g = cubic_green(q, cfg.real("tol"));
    s["value"] = g.value;
    s["error"] = g.error;
    s["at_zero"] = green_json(g.at_zero, "polynomial-escape");
    s["at_c"] = green_json(g.at_c, "polynomial-escape");
    s["log_max"] = std::log(std::max({1.0, std::abs(q.a), std::abs(q.c)}));
  } else if (name == "per1") {
    const Per1Param q{parse_complex(cfg.text("s"), "s"), parse_complex(cfg.text("kappa"), "kappa")};
    const Per1Greens g = per1_greens(q, cfg.real("tol"));
    s["plus"] = green_json(g.plus, "polynomial-escape");
    s["minus"] = green_json(g.minus, "polynomial-escape");
  } else if (name == "locus") {
    const LocusGrid g = locus_grid(locus_spec(cfg), threads);
    sink.write("locus.pgm", locus_pgm(g, cfg.real("gmax")));
    if (cfg.flag("csv")) sink.write("locus.csv", locus_csv(g));
    s["family"] = to_string(g.spec.family);
    s.update(locus_counts(g));
  } else if (name == "boxdim") {
    std::vector<std::size_t> scales;
    for (const auto& item : split(cfg.text("scales"), ';')) {
      const double v = parse_real(item, "scales");
      if (v < 1 || v != std::floor(v)) throw ConfigError("scales: '" + item + "' is not a positive integer");
      scales.push_back(static_cast<std::size_t>(v));
    }
    LocusGrid g;
    if (cfg.text("family") == "disk") {
      g = indicator_grid(parse_box(cfg.text("box")), cfg.size("width"), cfg.size("height"),
                         [](Complex z) { return std::abs(z) <= 1.0; });
    } else {
      g = locus_grid(locus_spec(cfg), threads);
    }
    const BoxDimension b = boundary_box_dimension(g, scales);
    std::string csv = "scale,count\n";
    for (std::size_t i = 0; i < b.scales.size(); ++i)
      csv += std::to_string(b.scales[i]) + "," + std::to_string(b.counts[i]) + "\n";
    sink.write("boxdim.csv", csv);
    s["family"] = cfg.text("family");
    s["estimate"] = b.estimate;
    s["fit_rms"] = b.residual;
    s["boundary"] = g.boundary_count();
  } else if (name == "selftest") {
    const SuiteContext ctx{seed, threads};
    Json results = Json::array();
    std::size_t passed = 0;
    for (int id : parse_criteria_ids(cfg.text("criteria"))) {
      const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
      const CriterionOutcome o = run_criterion(c, ctx);
      std::cerr << outcome_line(o) << std::endl;
      char stem[32];
      std::snprintf(stem, sizeof stem, "criterion_%02d", o.id);
      sink.write(std::string(stem) + ".json", outcome_json(o).dump(2) + "\n");
      for (const auto& [file, content] : o.files) sink.write(std::string(stem) + "_" + file, content);
      results.push_back(Json{{"id", o.id}, {"pass", o.pass}});
      if (o.passed()) ++passed;
      else r.status = kExitFailedCheck;
    }
    sink.write("summary.json", Json{{"seed", seed}, {"criteria", results}}.dump(2) + "\n");
    s["passed"] = passed;
    s["total"] = results.size();
    if (r.status != kExitOk) s["status"] = "failed";
  } else {
    throw ConfigError("unknown command '" + name + "'");
  }
  s["artifacts"] = sink.names();
  return r;
}

}  // namespace arithdyn::app
