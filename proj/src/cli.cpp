#include "lemni/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "lemni/constructions.hpp"
#include "lemni/error.hpp"
#include "lemni/io.hpp"
#include "lemni/scene.hpp"
#include "lemni/tracer.hpp"
#include "lemni/verify.hpp"

namespace lemni {

namespace {

using nlohmann::json;
using std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::string_view rest = text;
  while (true) {
    const std::size_t comma = rest.find(',');
    const std::string_view token = rest.substr(0, comma);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw UsageError(std::string("malformed number in ") + what + ": '" + text + "'");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return values;
}

Point parse_point(const std::string& text, const char* what) {
  const auto v = parse_list(text, what);
  if (v.size() != 2) throw UsageError(std::string(what) + " expects x,y");
  return {v[0], v[1]};
}

double radians(double degrees) { return degrees * pi / 180.0; }

json point_json(Point p) { return json::array({p.x, p.y}); }

struct Common {
  std::string foci = "-1,0,1,0";
  std::optional<double> radius;
  std::string window;
  std::string grid;
  std::string out;
  std::string format;
  unsigned threads = 0;

  std::vector<Point> focus_list() const {
    const auto v = parse_list(foci, "--foci");
    if (v.empty() || v.size() % 2 != 0) throw UsageError("--foci expects x1,y1,x2,y2,...");
    std::vector<Point> pts;
    for (std::size_t k = 0; k < v.size(); k += 2) pts.push_back({v[k], v[k + 1]});
    return pts;
  }

  BernoulliConfig bernoulli() const {
    const auto pts = focus_list();
    if (pts.size() != 2) throw UsageError("this command needs exactly two foci");
    return {pts[0], pts[1]};
  }

  PolynomialLemniscate lemniscate() const {
    const auto pts = focus_list();
    if (radius) return {pts, *radius};
    if (pts.size() == 2) return BernoulliConfig(pts[0], pts[1]).lemniscate();
    return {pts, 1.0};
  }

  std::pair<int, int> grid_size(int fallback) const {
    if (grid.empty()) return {fallback, fallback};
    const auto v = parse_list(grid, "--grid");
    if (v.size() != 1 && v.size() != 2) throw UsageError("--grid expects N or NX,NY");
    const int nx = static_cast<int>(v[0]);
    const int ny = static_cast<int>(v.size() == 2 ? v[1] : v[0]);
    return {nx, ny};
  }

  TraceWindow trace_window(const PolynomialLemniscate& lem, int fallback_grid) const {
    const auto [nx, ny] = grid_size(fallback_grid);
    TraceWindow w;
    if (!window.empty()) {
      const auto v = parse_list(window, "--window");
      if (v.size() != 4) throw UsageError("--window expects xmin,xmax,ymin,ymax");
      w = {v[0], v[1], v[2], v[3], nx, ny};
    } else if (lem.focus_count() == 2) {
      w = default_bernoulli_window(BernoulliConfig(lem.foci()[0], lem.foci()[1]), nx);
      w.ny = ny;
    } else {
      // Some focal distance is at most `radius` at every point of the curve.
      double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
      for (Point f : lem.foci()) {
        xmin = std::min(xmin, f.x);
        xmax = std::max(xmax, f.x);
        ymin = std::min(ymin, f.y);
        ymax = std::max(ymax, f.y);
      }
      const double pad = 1.2 * lem.radius();
      w = {xmin - pad, xmax + pad, ymin - pad, ymax + pad, nx, ny};
    }
    w.validate();
    return w;
  }

  json config_json() const {
    json cfg;
    cfg["foci"] = json::array();
    for (Point f : focus_list()) cfg["foci"].push_back(point_json(f));
    if (radius) cfg["radius"] = *radius;
    return cfg;
  }

  void emit(const std::string& text, std::ostream& out_stream) const {
    if (out.empty()) {
      out_stream << text;
      return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + out + "'");
    file << text;
  }
};

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  if (format.empty()) return;
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("unsupported --format '" + format + "' for this command");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bernoulli lemniscate constructions, tracing and verification", "lemni"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--foci", common.foci, "focus coordinates x1,y1,x2,y2,...");
  app.add_option("--radius", common.radius, "lemniscate radius (n-th root of the distance product)");
  app.add_option("--window", common.window, "trace window xmin,xmax,ymin,ymax");
  app.add_option("--grid", common.grid, "grid cells N or NX,NY");
  app.add_option("--out", common.out, "write output to this path");
  app.add_option("--format", common.format, "svg|csv|json")->check(CLI::IsMember({"svg", "csv", "json"}));
  app.add_option("--threads", common.threads, "worker threads for tracing (0 = auto)");

  double theta_deg = 90.0;
  double phi_deg = 30.0;
  double alpha_deg = 60.0;
  std::string side = "opposite";
  std::string point_text;
  std::string preset;
  bool no_flip = false;
  std::size_t samples = 10000;

  auto* trace_cmd = app.add_subcommand("trace", "trace the lemniscate as polylines");
  auto* linkage_cmd = app.add_subcommand("linkage", "solve the three-stick linkage");
  linkage_cmd->add_option("--theta", theta_deg, "angle of stick F1A in degrees");
  linkage_cmd->add_option("--side", side, "opposite|same")->check(CLI::IsMember({"opposite", "same"}));
  auto* maclaurin_cmd = app.add_subcommand("maclaurin", "chord-length secant construction");
  maclaurin_cmd->add_option("--phi", phi_deg, "secant angle from O->F1 in degrees");
  auto* rightangle_cmd = app.add_subcommand("rightangle", "right-angle two-stick linkage");
  rightangle_cmd->add_option("--alpha", alpha_deg, "angle of A about F1 in degrees");
  auto* invert_cmd = app.add_subcommand("invert", "invert a point in the circle about O through the foci");
  invert_cmd->add_option("--point", point_text, "x,y")->required();
  auto* normal_cmd = app.add_subcommand("normal", "normal line by angle doubling");
  normal_cmd->add_option("--point", point_text, "x,y on the lemniscate")->required();
  auto* area_cmd = app.add_subcommand("area", "exact and traced area");
  auto* expand_cmd = app.add_subcommand("expand", "monomial coefficients of the lemniscate polynomial");
  auto* figure_cmd = app.add_subcommand("figure", "render a figure preset");
  figure_cmd->add_option("--preset", preset, "family3|lemniscate|threebar|maclaurin|rightangle|inversion|tangentcircle|normal")
      ->required();
  figure_cmd->add_option("--theta", theta_deg, "three-bar angle in degrees");
  figure_cmd->add_option("--phi", phi_deg, "secant angle in degrees");
  figure_cmd->add_option("--alpha", alpha_deg, "right-angle linkage angle in degrees");
  figure_cmd->add_flag("--no-flip", no_flip, "keep SVG pixel orientation (y down)");
  auto* verify_cmd = app.add_subcommand("verify", "run every invariant sweep");
  verify_cmd->add_option("--samples", samples, "samples per sweep");

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const std::string& format = common.format;
    std::ostringstream text;

    if (trace_cmd->parsed()) {
      require_format(format, {"svg", "csv", "json"});
      const PolynomialLemniscate lem = common.lemniscate();
      const TraceWindow w = common.trace_window(lem, 512);
      std::vector<Contour> contours;
      try {
        contours = trace(lem, w, {common.threads});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyTrace) throw;
        err << "note: " << e.what() << "\n";
      }
      if (format == "json") {
        double worst = 0.0;
        for (const Contour& c : contours) worst = std::max(worst, c.max_residual);
        json cfg = common.config_json();
        cfg["window"] = {w.xmin, w.xmax, w.ymin, w.ymax};
        cfg["grid"] = {w.nx, w.ny};
        common.emit(make_report(cfg, contours, {{"max_residual", worst}}).dump(2) + "\n", out);
      } else if (format == "svg") {
        Scene scene(w);
        for (const Contour& c : contours) scene.add(PolylineShape{c.points, c.closed}, {0.016, false, ""});
        common.emit(emit_svg(scene), out);
      } else {
        common.emit(contours_to_csv(contours), out);
      }
      return kExitOk;
    }

    if (linkage_cmd->parsed()) {
      require_format(format, {"json"});
      const BernoulliConfig cfg = common.bernoulli();
      const Branch branch = side == "same" ? Branch::Same : Branch::Opposite;
      const ThreeBarState s = three_bar_solve(cfg, radians(theta_deg), branch);
      json result{{"theta_deg", theta_deg}, {"side", side}, {"a", point_json(s.a)},
                  {"b", point_json(s.b)}, {"x", point_json(s.x)}};
      std::map<std::string, double> checks{
          {"field_residual", std::abs(lemniscate_field(cfg.lemniscate(), s.x))},
          {"ox_length", distance(cfg.center(), s.x)}};
      if (s.p && s.q) {
        result["p"] = point_json(*s.p);
        result["q"] = point_json(*s.q);
        checks["ox_times_oq"] = distance(cfg.center(), s.x) * distance(cfg.center(), *s.q);
        checks["hyperbola_residual_q"] = std::abs(hyperbola_residual({cfg.f1(), cfg.f2()}, *s.q));
      }
      if (format == "json") {
        json report = make_report(common.config_json(), {}, checks);
        report["result"] = result;
        common.emit(report.dump(2) + "\n", out);
      } else {
        text << "A = " << format_9(s.a.x) << "," << format_9(s.a.y) << "\n"
             << "B = " << format_9(s.b.x) << "," << format_9(s.b.y) << "\n"
             << "X = " << format_9(s.x.x) << "," << format_9(s.x.y) << "\n";
        if (s.p && s.q) {
          text << "P = " << format_9(s.p->x) << "," << format_9(s.p->y) << "\n"
               << "Q = " << format_9(s.q->x) << "," << format_9(s.q->y) << "\n";
        }
        for (const auto& [name, value] : checks) text << name << " = " << format_9(value) << "\n";
        common.emit(text.str(), out);
      }
      return kExitOk;
    }

    if (maclaurin_cmd->parsed()) {
      require_format(format, {"json"});
      const BernoulliConfig cfg = common.bernoulli();
      const MaclaurinSample m = maclaurin_sample(cfg, radians(phi_deg));
      const PolynomialLemniscate lem = cfg.lemniscate();
      std::map<std::string, double> checks{
          {"chord_length", distance(m.a, m.b)},
          {"field_residual_x", std::abs(lemniscate_field(lem, m.x))},
          {"field_residual_x_prime", std::abs(lemniscate_field(lem, m.x_prime))}};
      if (format == "json") {
        json report = make_report(common.config_json(), {}, checks);
        report["result"] = {{"phi_deg", phi_deg}, {"a", point_json(m.a)}, {"b", point_json(m.b)},
                            {"x", point_json(m.x)}, {"x_prime", point_json(m.x_prime)}};
        common.emit(report.dump(2) + "\n", out);
      } else {
        text << "A = " << format_9(m.a.x) << "," << format_9(m.a.y) << "\n"
             << "B = " << format_9(m.b.x) << "," << format_9(m.b.y) << "\n"
             << "X = " << format_9(m.x.x) << "," << format_9(m.x.y) << "\n"
             << "X' = " << format_9(m.x_prime.x) << "," << format_9(m.x_prime.y) << "\n";
        for (const auto& [name, value] : checks) text << name << " = " << format_9(value) << "\n";
        common.emit(text.str(), out);
      }
      return kExitOk;
    }

    if (rightangle_cmd->parsed()) {
      require_format(format, {"json"});
      const BernoulliConfig cfg = common.bernoulli();
      const RightAngleState s = right_angle_solve(cfg, radians(alpha_deg));
      const PolynomialLemniscate lem = cfg.lemniscate();
      std::map<std::string, double> checks{
          {"field_residual_x", std::abs(lemniscate_field(lem, s.x))},
          {"field_residual_y", std::abs(lemniscate_field(lem, s.y))}};
      if (format == "json") {
        json report = make_report(common.config_json(), {}, checks);
        report["result"] = {{"alpha_deg", alpha_deg}, {"a", point_json(s.a)}, {"b", point_json(s.b)},
                            {"c", point_json(s.c)}, {"x", point_json(s.x)}, {"y", point_json(s.y)}};
        common.emit(report.dump(2) + "\n", out);
      } else {
        text << "A = " << format_9(s.a.x) << "," << format_9(s.a.y) << "\n"
             << "X = " << format_9(s.x.x) << "," << format_9(s.x.y) << "\n"
             << "Y = " << format_9(s.y.x) << "," << format_9(s.y.y) << "\n";
        for (const auto& [name, value] : checks) text << name << " = " << format_9(value) << "\n";
        common.emit(text.str(), out);
      }
      return kExitOk;
    }

    if (invert_cmd->parsed()) {
      require_format(format, {"json"});
      const BernoulliConfig cfg = common.bernoulli();
      const Point p = parse_point(point_text, "--point");
      const Point image = invert_between(cfg, p);
      std::map<std::string, double> checks{
          {"field_residual_input", std::abs(lemniscate_field(cfg.lemniscate(), p))},
          {"hyperbola_residual_image", std::abs(hyperbola_residual({cfg.f1(), cfg.f2()}, image))}};
      if (format == "json") {
        json report = make_report(common.config_json(), {}, checks);
        report["result"] = {{"point", point_json(p)}, {"image", point_json(image)}};
        common.emit(report.dump(2) + "\n", out);
      } else {
        text << "image = " << format_9(image.x) << "," << format_9(image.y) << "\n";
        for (const auto& [name, value] : checks) text << name << " = " << format_9(value) << "\n";
        common.emit(text.str(), out);
      }
      return kExitOk;
    }

    if (normal_cmd->parsed()) {
      require_format(format, {"json"});
      const BernoulliConfig cfg = common.bernoulli();
      const Point x = parse_point(point_text, "--point");
      const Line normal = normal_by_angle(cfg, x);
      const Vec2 g = lemniscate_gradient(cfg.lemniscate(), x);
      const double deviation =
          std::asin(std::min(1.0, std::abs(cross(normal.direction(), normalized(g)))));
      const double angle_deg = std::atan2(normal.direction().y, normal.direction().x) * 180.0 / pi;
      if (format == "json") {
        json report = make_report(common.config_json(), {}, {{"gradient_deviation_rad", deviation}});
        report["result"] = {{"point", point_json(x)},
                            {"direction", point_json(normal.direction())},
                            {"direction_deg", angle_deg}};
        common.emit(report.dump(2) + "\n", out);
      } else {
        text << "direction = " << format_9(normal.direction().x) << "," << format_9(normal.direction().y)
             << "\n"
             << "direction_deg = " << format_9(angle_deg) << "\n"
             << "gradient_deviation_rad = " << format_9(deviation) << "\n";
        common.emit(text.str(), out);
      }
      return kExitOk;
    }

    if (area_cmd->parsed()) {
      require_format(format, {"json"});
      const BernoulliConfig cfg = common.bernoulli();
      const TraceWindow w = common.trace_window(cfg.lemniscate(), 512);
      double traced = 0.0;
      for (const Contour& c : trace(cfg.lemniscate(), w, {common.threads})) {
        if (c.closed) traced += contour_area(c);
      }
      const double exact = bernoulli_area(cfg);
      std::map<std::string, double> checks{{"exact_area", exact},
                                           {"traced_area", traced},
                                           {"relative_error", std::abs(traced / exact - 1.0)}};
      if (format == "json") {
        common.emit(make_report(common.config_json(), {}, checks).dump(2) + "\n", out);
      } else {
        for (const auto& [name, value] : checks) text << name << " = " << format_9(value) << "\n";
        common.emit(text.str(), out);
      }
      return kExitOk;
    }

    if (expand_cmd->parsed()) {
      require_format(format, {"json"});
      const PolynomialLemniscate lem = common.lemniscate();
      const CoefficientTable table = expand_coefficients(lem);
      json terms = json::array();
      for (std::size_t total = table.degree() + 1; total-- > 0;) {
        for (std::size_t i = total + 1; i-- > 0;) {
          const double c = table.coeff(i, total - i);
          if (c == 0.0) continue;
          terms.push_back({{"x", i}, {"y", total - i}, {"coeff", c}});
          text << format_9(c) << " x^" << i << " y^" << (total - i) << "\n";
        }
      }
      if (format == "json") {
        json report = make_report(common.config_json(), {},
                                  {{"degree", static_cast<double>(table.effective_degree())}});
        report["terms"] = terms;
        common.emit(report.dump(2) + "\n", out);
      } else {
        common.emit(text.str(), out);
      }
      return kExitOk;
    }

    if (figure_cmd->parsed()) {
      require_format(format, {"svg", "json"});
      const BernoulliConfig cfg = common.bernoulli();
      FigureParams params;
      params.theta = radians(theta_deg);
      params.phi = radians(phi_deg);
      params.alpha = radians(alpha_deg);
      params.grid = common.grid_size(256).first;
      params.threads = common.threads;
      const Scene scene = figure_scene(preset, cfg, params);
      if (format == "json") {
        std::vector<Contour> polylines;
        for (const Element& el : scene.elements()) {
          if (const auto* poly = std::get_if<PolylineShape>(&el.shape)) {
            polylines.push_back({poly->points, poly->closed, 0.0});
          }
        }
        json cfg_json = common.config_json();
        cfg_json["preset"] = preset;
        common.emit(make_report(cfg_json, polylines, {}).dump(2) + "\n", out);
      } else {
        common.emit(emit_svg(scene, !no_flip), out);
      }
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      require_format(format, {"json"});
      const BernoulliConfig cfg = common.bernoulli();
      VerifyOptions options;
      options.samples = samples;
      options.grid = common.grid_size(512).first;
      options.threads = common.threads;
      const auto results = run_verification(cfg, options);
      bool ok = true;
      std::map<std::string, double> checks;
      for (const CheckResult& r : results) {
        ok = ok && r.passed();
        checks[r.name] = r.max_residual;
        text << (r.passed() ? "PASS " : "FAIL ") << r.name << " max_residual=" << format_9(r.max_residual)
             << " threshold=" << format_9(r.threshold) << " samples=" << r.samples << "\n";
      }
      if (format == "json") {
        common.emit(make_report(common.config_json(), {}, checks).dump(2) + "\n", out);
      } else {
        common.emit(text.str(), out);
      }
      return ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lemni
