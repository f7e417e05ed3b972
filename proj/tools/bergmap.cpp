// SPDX-License-Identifier: Apache-2.0
//
// bergmap: build Bergman kernels of planar domains, evaluate the
// representative coordinate, and run the theorem-check suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "bergmap/checks.hpp"
#include "bergmap/io_util.hpp"

using json = nlohmann::ordered_json;
using namespace bergmap;

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitBuildError = 3;

struct RunConfig {
  std::string domain_file;
  json domain_spec;
  Complex anchor{};
  int degree = 60;
  int panels = 12;
  int order = 16;
  double spacing = 0.1;
  double margin = 0.05;
  std::vector<std::string> checks;  // empty = all
  std::string out_dir;
  std::string source = "auto";
  std::string ppm_field;  // K | g | kappa, empty = none
  bool timings = false;

  std::string hash() const {
    json j;
    j["domain"] = domain_spec;
    j["anchor"] = {anchor.real(), anchor.imag()};
    j["degree"] = degree;
    j["panels"] = panels;
    j["order"] = order;
    j["spacing"] = spacing;
    j["margin"] = margin;
    j["checks"] = checks;
    j["source"] = source;
    return config_hash(j.dump());
  }
};

double require_number(const json& spec, const std::string& field) {
  if (!spec.contains(field))
    fail(ErrorKind::ConfigError,
         "domain spec is missing required field \"" + field + "\"");
  if (!spec[field].is_number())
    fail(ErrorKind::ConfigError, "field \"" + field + "\" must be a number");
  return spec[field].get<double>();
}

Domain domain_from_spec(const json& spec) {
  if (!spec.contains("type"))
    fail(ErrorKind::ConfigError, "domain spec is missing required field \"type\"");
  std::string type = spec["type"].get<std::string>();
  if (type == "disc") return Domain::disc(require_number(spec, "radius"));
  if (type == "annulus")
    return Domain::annulus(require_number(spec, "r"), require_number(spec, "R"));
  if (type == "sector_complement")
    return Domain::sector_complement(require_number(spec, "r_max"),
                                     require_number(spec, "theta_min"),
                                     require_number(spec, "theta_max"));
  if (type == "slit_disc")
    return Domain::slit_disc(require_number(spec, "slit_from"),
                             require_number(spec, "slit_to"));
  if (type == "conformal_image") {
    if (!spec.contains("map"))
      fail(ErrorKind::ConfigError,
           "domain spec is missing required field \"map\"");
    return map_domain(spec["map"].get<std::string>());
  }
  if (type == "ball")
    return Domain::ball(static_cast<int>(require_number(spec, "n")));
  if (type == "rect")
    return Domain::rect(require_number(spec, "xmin"), require_number(spec, "xmax"),
                        require_number(spec, "ymin"), require_number(spec, "ymax"));
  fail(ErrorKind::ConfigError, "unknown domain type \"" + type + "\"");
}

Complex parse_anchor(const std::string& s) {
  double re = 0, im = 0;
  size_t comma = s.find(',');
  try {
    re = std::stod(s.substr(0, comma));
    if (comma != std::string::npos) im = std::stod(s.substr(comma + 1));
  } catch (const std::exception&) {
    fail(ErrorKind::ConfigError, "bad --anchor format, expected re[,im]");
  }
  return {re, im};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json report_json(const CheckReport& rep, const std::string& hash,
                 bool timings) {
  json j;
  j["check_id"] = rep.check_id;
  j["domain"] = rep.domain_id;
  j["anchor"] = complex_json(rep.anchor);
  j["verdict"] = rep.verdict;
  j["expected"] = rep.expected;
  j["tolerance"] = rep.tolerance;
  j["residual_max"] = rep.residual_max;
  j["residual_argmax"] = complex_json(rep.residual_argmax);
  j["ladder"] = json::array();
  for (const auto& lp : rep.ladder)
    j["ladder"].push_back({{"param", lp.param}, {"value", lp.value}});
  j["stats"] = json::object();
  for (const auto& [k, v] : rep.stats) j["stats"][k] = v;
  j["notes"] = rep.notes;
  j["citation"] = rep.citation;
  j["source"] = rep.source_id;
  j["runtime_ms"] = timings ? rep.runtime_ms : 0;
  j["accounting"] = {{"points_attempted", rep.points_attempted},
                     {"points_evaluated", rep.points_evaluated},
                     {"guard_trips", rep.guard_trips},
                     {"margin_exclusions", rep.margin_exclusions}};
  j["config_hash"] = hash;
  return j;
}

std::shared_ptr<const KernelSource> make_source(const Domain& dom,
                                                const RunConfig& cfg) {
  bool want_oracle = cfg.source == "oracle";
  if (cfg.source == "auto")
    want_oracle = dom.tag().kind == DomainTag::SectorComplement ||
                  dom.tag().kind == DomainTag::Annulus;
  if (want_oracle) {
    auto oracle = analytic_oracle(dom);
    if (!oracle)
      fail(ErrorKind::UnsupportedDomain,
           "no analytic oracle for domain " + dom.id());
    return std::make_shared<AnalyticKernel>(*oracle);
  }
  return std::make_shared<KernelField>(
      build_field(dom, cfg.anchor, cfg.degree, cfg.panels, cfg.order));
}

// ---------------------------------------------------------------------------

int cmd_kernel(const RunConfig& cfg) {
  Domain dom = domain_from_spec(cfg.domain_spec);
  std::filesystem::create_directories(cfg.out_dir);
  std::string hash = cfg.hash();

  if (dom.tag().kind == DomainTag::Ball) {
    BallOracle ball(dom.tag().ball_n);
    int n = ball.dimension();
    std::ostringstream csv;
    csv << "# config " << hash << "\n";
    csv << "t,K_diag,g11,hol_sect_curvature\n";
    for (int i = 0; i <= 18; ++i) {
      double t = i * 0.05;
      BallOracle::Vec z = BallOracle::Vec::Zero(n);
      z[0] = t;
      csv << format_double(t) << ","
          << format_double(ball.kernel(z, z).real()) << ","
          << format_double(ball.metric(z)(0, 0).real()) << ","
          << format_double(ball.slice_gaussian_curvature(t) / 2.0) << "\n";
    }
    write_text_file(cfg.out_dir + "/kernel.csv", csv.str());
    json meta;
    meta["config_hash"] = hash;
    meta["mode"] = "analytic-ball";
    meta["n"] = n;
    BallOracle::Vec zero = BallOracle::Vec::Zero(n);
    meta["K_at_origin"] = ball.kernel(zero, zero).real();
    meta["c2"] = ball.c2();
    write_text_file(cfg.out_dir + "/meta.json", meta.dump(2) + "\n");
    return 0;
  }

  auto src = make_source(dom, cfg);
  auto grid = interior_grid(dom, cfg.spacing, cfg.margin);
  MetricPolicy pol;
  pol.boundary_margin = std::min(cfg.margin, 0.02);

  std::ostringstream csv;
  csv << "# config " << hash << "\n";
  csv << "re_z,im_z,re_K_zp,im_K_zp,K_zz,g,kappa\n";
  std::vector<double> raster_vals;
  for (Complex z : grid) {
    Complex kzp = src->kernel(z, cfg.anchor, 0, 0);
    MetricSample m = metric_sample(*src, z, pol);
    csv << format_double(z.real()) << "," << format_double(z.imag()) << ","
        << format_double(kzp.real()) << "," << format_double(kzp.imag()) << ","
        << format_double(m.K.real()) << "," << format_double(m.g) << ","
        << format_double(m.kappa) << "\n";
    if (cfg.ppm_field == "K")
      raster_vals.push_back(m.K.real());
    else if (cfg.ppm_field == "g")
      raster_vals.push_back(m.g);
    else if (cfg.ppm_field == "kappa")
      raster_vals.push_back(m.kappa);
  }
  write_text_file(cfg.out_dir + "/kernel.csv", csv.str());

  json meta;
  meta["config_hash"] = hash;
  meta["domain"] = dom.id();
  meta["anchor"] = complex_json(cfg.anchor);
  meta["source"] = src->source_id();
  meta["grid_points"] = grid.size();
  if (auto field = dynamic_cast<const KernelField*>(src.get())) {
    const OrthonormalBasis& basis = field->basis();
    json bj;
    bj["center"] = complex_json(basis.center());
    bj["N"] = basis.degree();
    bj["domain_id"] = basis.domain_id();
    bj["area"] = basis.area();
    if (basis.kind() == OrthonormalBasis::Kind::Arnoldi) {
      json h = json::array();
      const auto& H = basis.hessenberg();
      for (int i = 0; i < H.rows(); ++i)
        for (int jj = 0; jj < H.cols(); ++jj)
          h.push_back(complex_json(H(i, jj)));
      bj["hessenberg_row_major"] = std::move(h);
      bj["hessenberg_rows"] = H.rows();
      bj["hessenberg_cols"] = H.cols();
    } else {
      bj["laurent_min_power"] = basis.min_power();
      bj["laurent_norms"] = basis.laurent_norms();
    }
    bj["warnings"] = basis.warnings();
    meta["basis"] = std::move(bj);
    json probes;
    probes["orthonormality_residual_doubled_panels"] =
        orthonormality_residual(basis, dom, 2 * cfg.panels, cfg.order);
    json tp = json::array();
    for (Complex z : {Complex(0.3, 0.2), Complex(0.5, 0.0)}) {
      if (dom.contains(z))
        tp.push_back({{"z", complex_json(z)},
                      {"tail", field->truncation_probe(z)}});
    }
    probes["truncation"] = std::move(tp);
    meta["accuracy_probes"] = std::move(probes);
  }
  if (!cfg.ppm_field.empty()) {
    // raster over the interior grid bounding lattice, row-major top-down
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (Complex z : grid) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
    int W = static_cast<int>(std::lround((x1 - x0) / cfg.spacing)) + 1;
    int H = static_cast<int>(std::lround((y1 - y0) / cfg.spacing)) + 1;
    std::vector<double> raster(W * H, std::numeric_limits<double>::quiet_NaN());
    for (size_t i = 0; i < grid.size(); ++i) {
      int cx = static_cast<int>(std::lround((grid[i].real() - x0) / cfg.spacing));
      int cy = static_cast<int>(std::lround((grid[i].imag() - y0) / cfg.spacing));
      raster[(H - 1 - cy) * W + cx] = raster_vals[i];
    }
    auto [lo, hi] = write_pgm(cfg.out_dir + "/kernel.ppm", W, H, raster);
    meta["ppm"] = {{"field", cfg.ppm_field},
                   {"width", W},
                   {"height", H},
                   {"normalization_min", lo},
                   {"normalization_max", hi}};
  }
  write_text_file(cfg.out_dir + "/meta.json", meta.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_map(const RunConfig& cfg) {
  Domain dom = domain_from_spec(cfg.domain_spec);
  std::filesystem::create_directories(cfg.out_dir);
  std::string hash = cfg.hash();

  if (dom.tag().kind == DomainTag::Ball) {
    BallOracle ball(dom.tag().ball_n);
    int n = ball.dimension();
    BallOracle::Vec p = BallOracle::Vec::Zero(n);
    std::ostringstream csv;
    csv << "# config " << hash << "\n";
    csv << "re_z,im_z,re_w1,im_w1,phi\n";
    for (int i = 0; i <= 18; ++i) {
      double t = i * 0.05;
      BallOracle::Vec z = BallOracle::Vec::Zero(n);
      z[0] = t;
      auto w = ball.rep_coordinate(p, z);
      csv << format_double(t) << ",0," << format_double(w[0].real()) << ","
          << format_double(w[0].imag()) << ","
          << format_double(ball.diastasis(p, z)) << "\n";
    }
    write_text_file(cfg.out_dir + "/map.csv", csv.str());
    json meta;
    meta["config_hash"] = hash;
    meta["mode"] = "analytic-ball";
    meta["c2"] = ball.c2();
    meta["image_radius_metric"] = std::sqrt(2.0 / ball.c2());
    write_text_file(cfg.out_dir + "/map_meta.json", meta.dump(2) + "\n");
    return 0;
  }

  auto src = make_source(dom, cfg);
  RepCoordinate rc = RepCoordinate::build(src, cfg.anchor);
  auto grid = interior_grid(dom, cfg.spacing, cfg.margin);

  std::ostringstream csv;
  csv << "# config " << hash << "\n";
  csv << "re_z,im_z,re_w,im_w,re_T1,im_T1,phi,F\n";
  long guard_trips = 0;
  for (Complex z : grid) {
    try {
      Complex w = rc.map(z);
      Complex t1 = rc.derivative(z);
      DiastasisValue dv = rc.diastasis(z);
      double F = rc.constant_curvature() && z != cfg.anchor
                     ? rc.green(z)
                     : std::numeric_limits<double>::quiet_NaN();
      csv << format_double(z.real()) << "," << format_double(z.imag()) << ","
          << format_double(w.real()) << "," << format_double(w.imag()) << ","
          << format_double(t1.real()) << "," << format_double(t1.imag()) << ","
          << format_double(dv.phi) << "," << format_double(F) << "\n";
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NearKernelZero) {
        ++guard_trips;
        continue;
      }
      throw;
    }
  }
  write_text_file(cfg.out_dir + "/map.csv", csv.str());

  // round-trip residual over up to 50 grid samples
  double inv_res = 0;
  int inv_count = 0;
  for (size_t i = 0; i < grid.size() && inv_count < 50;
       i += std::max<size_t>(1, grid.size() / 50), ++inv_count) {
    try {
      Complex w = rc.map(grid[i]);
      Complex back = rc.invert(w, grid[i] + Complex(0.01, 0.01));
      inv_res = std::max(inv_res, std::abs(back - grid[i]));
    } catch (const Error&) {
      continue;
    }
  }
  json meta;
  meta["config_hash"] = hash;
  meta["domain"] = dom.id();
  meta["anchor"] = complex_json(cfg.anchor);
  meta["source"] = src->source_id();
  meta["image_radius"] = rc.image_radius();
  meta["c2"] = rc.c2();
  meta["constant_curvature"] = rc.constant_curvature();
  meta["anchor_metric"] = rc.anchor_metric();
  meta["capacity"] =
      rc.constant_curvature() ? json(rc.capacity()) : json(nullptr);
  meta["inverse_check_max_residual"] = inv_res;
  meta["guard_trips"] = guard_trips;
  write_text_file(cfg.out_dir + "/map_meta.json", meta.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_check(const RunConfig& cfg) {
  Domain dom = domain_from_spec(cfg.domain_spec);
  std::filesystem::create_directories(cfg.out_dir);
  std::string hash = cfg.hash();

  CheckSuiteConfig suite;
  suite.anchor = cfg.anchor;
  suite.basis_degree = cfg.degree;
  suite.panels = cfg.panels;
  suite.order = cfg.order;
  suite.spacing = cfg.spacing;
  suite.margin = cfg.margin;
  suite.source = cfg.source;
  suite.check_ids = cfg.checks;

  auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckReport> reports = run_checks(dom, suite);
  long total_ms = static_cast<long>(
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count());

  bool all_expected = true;
  json summary;
  summary["config_hash"] = hash;
  summary["domain"] = dom.id();
  summary["anchor"] = complex_json(cfg.anchor);
  summary["reports"] = json::array();
  json timings;
  timings["total_ms"] = total_ms;
  timings["per_check_ms"] = json::object();
  for (const CheckReport& rep : reports) {
    json j = report_json(rep, hash, cfg.timings);
    write_text_file(cfg.out_dir + "/check_" + rep.check_id + ".json",
                    j.dump(2) + "\n");
    if (!rep.ladder.empty()) {
      std::ostringstream lcsv;
      lcsv << "# config " << hash << "\n";
      lcsv << "param,value\n";
      for (const auto& lp : rep.ladder)
        lcsv << format_double(lp.param) << "," << format_double(lp.value)
             << "\n";
      write_text_file(cfg.out_dir + "/check_" + rep.check_id + "_ladder.csv",
                      lcsv.str());
    }
    summary["reports"].push_back({{"check_id", rep.check_id},
                                  {"verdict", rep.verdict},
                                  {"expected", rep.expected}});
    timings["per_check_ms"][rep.check_id] = rep.runtime_ms;
    all_expected = all_expected && rep.expected;
    std::cout << rep.check_id << ": " << rep.verdict
              << (rep.expected ? " (expected)" : " (UNEXPECTED)") << "\n";
  }
  summary["all_expected"] = all_expected;
  write_text_file(cfg.out_dir + "/summary.json", summary.dump(2) + "\n");
  if (cfg.timings)
    write_text_file(cfg.out_dir + "/timings.json", timings.dump(2) + "\n");
  return all_expected ? 0 : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman kernels, representative coordinates, and theorem "
               "checks for planar domains"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string anchor_str = "0,0";
  std::string checks_str = "all";

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--domain", cfg.domain_file, "domain spec JSON file")
        ->required();
    sub->add_option("--anchor", anchor_str, "anchor point re[,im]");
    sub->add_option("--degree", cfg.degree, "basis degree N");
    sub->add_option("--panels", cfg.panels, "quadrature panels per curve");
    sub->add_option("--order", cfg.order, "Gauss-Legendre order per panel");
    sub->add_option("--spacing", cfg.spacing, "interior grid spacing");
    sub->add_option("--margin", cfg.margin, "interior grid boundary margin");
    sub->add_option("--source", cfg.source,
                    "kernel source: auto | numeric | oracle");
    auto* out = sub->add_option("--out", cfg.out_dir, "output directory");
    if (needs_out) out->required();
  };

  CLI::App* kernel = app.add_subcommand("kernel", "kernel/metric field dump");
  add_common(kernel, true);
  kernel->add_option("--ppm", cfg.ppm_field,
                     "also write kernel.ppm of a field: K | g | kappa");

  CLI::App* map = app.add_subcommand("map", "representative-coordinate dump");
  add_common(map, true);

  CLI::App* check = app.add_subcommand("check", "run theorem checks");
  add_common(check, true);
  check->add_option("--checks", checks_str,
                    "comma-separated check ids, or \"all\"");
  check->add_flag("--timings", cfg.timings,
                  "record wall-clock runtimes (off keeps outputs byte-stable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParseError;
  }

  try {
    cfg.anchor = parse_anchor(anchor_str);
    std::ifstream in(cfg.domain_file);
    if (!in) fail(ErrorKind::ConfigError, "cannot open " + cfg.domain_file);
    try {
      in >> cfg.domain_spec;
    } catch (const std::exception& e) {
      fail(ErrorKind::ConfigError, std::string("bad domain JSON: ") + e.what());
    }
    if (checks_str != "all" && !checks_str.empty()) {
      std::stringstream ss(checks_str);
      std::string id;
      while (std::getline(ss, id, ',')) {
        if (id.empty()) continue;
        if (std::find(all_check_ids().begin(), all_check_ids().end(), id) ==
            all_check_ids().end())
          fail(ErrorKind::ConfigError, "unknown check id \"" + id + "\"");
        cfg.checks.push_back(id);
      }
    }
    // parse-time validation of the domain spec
    domain_from_spec(cfg.domain_spec);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  }

  try {
    if (app.got_subcommand(kernel)) return cmd_kernel(cfg);
    if (app.got_subcommand(map)) return cmd_map(cfg);
    if (app.got_subcommand(check)) return cmd_check(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigError ? kExitParseError
                                              : kExitBuildError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBuildError;
  }
  return 0;
}
