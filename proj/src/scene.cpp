#include "lemni/scene.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lemni/constructions.hpp"
#include "lemni/error.hpp"

namespace lemni {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

struct Box {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  void add(Point p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
};

Box bounds_of(const Shape& shape) {
  Box box;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PolylineShape>) {
          for (Point p : s.points) box.add(p);
        } else if constexpr (std::is_same_v<T, CircleShape>) {
          box.add(s.center - Vec2{s.radius, s.radius});
          box.add(s.center + Vec2{s.radius, s.radius});
        } else if constexpr (std::is_same_v<T, SegmentShape>) {
          box.add(s.a);
          box.add(s.b);
        } else {
          box.add(s.at);
        }
      },
      shape);
  return box;
}

Style thin(std::string label = {}) { return {0.008, false, std::move(label)}; }
Style bold(std::string label = {}) { return {0.016, false, std::move(label)}; }
Style dashed(std::string label = {}) { return {0.008, true, std::move(label)}; }

void add_marker(Scene& scene, Point p, std::string label) {
  scene.add(MarkerShape{p}, thin(std::move(label)));
}

void add_contours(Scene& scene, const PolynomialLemniscate& lem, const FigureParams& params,
                  const std::string& label) {
  TraceWindow w = scene.viewbox();
  w.nx = params.grid;
  w.ny = std::max(8, static_cast<int>(std::lround(params.grid * (w.ymax - w.ymin) / (w.xmax - w.xmin))));
  try {
    for (Contour& c : trace(lem, w, {params.threads})) {
      scene.add(PolylineShape{std::move(c.points), c.closed}, bold(label));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyTrace) throw;
  }
}

void add_bernoulli(Scene& scene, const BernoulliConfig& cfg, const FigureParams& params) {
  add_contours(scene, cfg.lemniscate(), params, "lemniscate");
  add_marker(scene, cfg.f1(), "F1");
  add_marker(scene, cfg.f2(), "F2");
  add_marker(scene, cfg.center(), "O");
}

// Both branches of the equilateral hyperbola with foci F1, F2, clipped to the
// viewbox.
void add_hyperbola(Scene& scene, const BernoulliConfig& cfg) {
  const EquilateralHyperbola h(cfg.f1(), cfg.f2());
  const TraceWindow& w = scene.viewbox();
  const double a = h.semi_axis();
  const double reach = std::hypot(w.xmax - w.xmin, w.ymax - w.ymin) + distance(cfg.center(), {
      0.5 * (w.xmin + w.xmax), 0.5 * (w.ymin + w.ymax)});
  const double tmax = std::acosh(std::max(1.0, reach / a));
  const Vec2 u = h.axis();
  constexpr int kSamples = 600;
  for (double branch : {-1.0, 1.0}) {
    std::vector<Point> run;
    const auto flush = [&] {
      if (run.size() >= 2) scene.add(PolylineShape{run, false}, thin("hyperbola"));
      run.clear();
    };
    for (int k = 0; k <= kSamples; ++k) {
      const double t = -tmax + 2.0 * tmax * k / kSamples;
      const Point p =
          h.center() + u * (branch * a * std::cosh(t)) + perp(u) * (a * std::sinh(t));
      if (w.contains(p)) {
        run.push_back(p);
      } else {
        flush();
      }
    }
    flush();
  }
}

// The circle as drawn: whole if it fits the scene guard, otherwise the arcs
// that cross the viewbox, sampled from X so the tangency point is a vertex.
void add_circle_or_arcs(Scene& scene, const Circle& circle, Point from, const Style& style) {
  if (scene.add(CircleShape{circle.center(), circle.radius()}, style)) return;
  const TraceWindow& w = scene.viewbox();
  const Vec2 radial = from - circle.center();
  // Only arcs within `reach` of X, measured along the circle, can meet the box.
  const Point mid{0.5 * (w.xmin + w.xmax), 0.5 * (w.ymin + w.ymax)};
  const double reach = std::hypot(w.xmax - w.xmin, w.ymax - w.ymin) + distance(from, mid);
  const double span = std::min(std::numbers::pi, reach / circle.radius());
  constexpr int kSamples = 720;
  std::vector<Point> run;
  const auto flush = [&] {
    if (run.size() >= 2) scene.add(PolylineShape{run, false}, style);
    run.clear();
  };
  for (int k = -kSamples; k <= kSamples; ++k) {
    const Point p = circle.center() + rotated(radial, span * k / kSamples);
    if (w.contains(p)) {
      run.push_back(p);
    } else {
      flush();
    }
  }
  flush();
}

std::string fixed3(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(3);
  os << v;
  return os.str();
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

Scene::Scene(TraceWindow viewbox) : viewbox_(viewbox) { viewbox_.validate(); }

bool Scene::within_bounds(const Shape& shape) const noexcept {
  const Box b = bounds_of(shape);
  if (!std::isfinite(b.xmin) || !std::isfinite(b.xmax) || !std::isfinite(b.ymin) ||
      !std::isfinite(b.ymax)) {
    return false;
  }
  const double hw = viewbox_.xmax - viewbox_.xmin;
  const double hh = viewbox_.ymax - viewbox_.ymin;
  return b.xmin >= viewbox_.xmin - 0.5 * hw && b.xmax <= viewbox_.xmax + 0.5 * hw &&
         b.ymin >= viewbox_.ymin - 0.5 * hh && b.ymax <= viewbox_.ymax + 0.5 * hh;
}

bool Scene::add(Shape shape, Style style) {
  if (!within_bounds(shape)) return false;
  elements_.push_back({std::move(shape), std::move(style)});
  return true;
}

namespace {
constexpr std::pair<Figure, std::string_view> kFigureNames[] = {
    {Figure::Family3, "family3"},       {Figure::Lemniscate, "lemniscate"},
    {Figure::ThreeBar, "threebar"},     {Figure::Maclaurin, "maclaurin"},
    {Figure::RightAngle, "rightangle"}, {Figure::Inversion, "inversion"},
    {Figure::TangentCircle, "tangentcircle"}, {Figure::Normal, "normal"},
};
}  // namespace

Figure parse_figure(std::string_view name) {
  for (const auto& [figure, text] : kFigureNames) {
    if (text == name) return figure;
  }
  throw Error(ErrorCode::UnknownPreset, "unknown figure preset '" + std::string(name) + "'");
}

std::string_view figure_name(Figure figure) noexcept {
  for (const auto& [f, text] : kFigureNames) {
    if (f == figure) return text;
  }
  return "unknown";
}

std::vector<Figure> all_figures() {
  std::vector<Figure> out;
  for (const auto& entry : kFigureNames) out.push_back(entry.first);
  return out;
}

namespace {

// Construction points a preset must show, beyond the lemniscate itself.
std::vector<Point> figure_extent(Figure figure, const BernoulliConfig& cfg, const FigureParams& params) {
  std::vector<Point> pts;
  switch (figure) {
    case Figure::ThreeBar:
    case Figure::Inversion:
    case Figure::TangentCircle:
    case Figure::Normal: {
      const ThreeBarState s = three_bar_solve(cfg, params.theta, Branch::Opposite);
      if (figure == Figure::ThreeBar) pts = {s.a, s.b};
      if (figure == Figure::Inversion && s.p) pts = {*s.p, *s.q};
      if (figure == Figure::TangentCircle && s.p) {
        const Circle circle = tangent_circle_at(s);
        const Vec2 r{circle.radius(), circle.radius()};
        pts = {circle.center() - r, circle.center() + r};
      }
      break;
    }
    case Figure::RightAngle: {
      const RightAngleState s = right_angle_solve(cfg, params.alpha);
      pts = {s.a};
      break;
    }
    default:
      break;
  }
  return pts;
}

// The default window grown to hold the extent points (those within 4c of O)
// with a margin.
TraceWindow figure_window(Figure figure, const BernoulliConfig& cfg, const FigureParams& params) {
  TraceWindow w = default_bernoulli_window(cfg, params.grid);
  const double c = cfg.c();
  const double margin = 0.15 * c;
  for (Point p : figure_extent(figure, cfg, params)) {
    if (!is_finite(p) || distance(p, cfg.center()) > 4.0 * c) continue;
    w.xmin = std::min(w.xmin, p.x - margin);
    w.xmax = std::max(w.xmax, p.x + margin);
    w.ymin = std::min(w.ymin, p.y - margin);
    w.ymax = std::max(w.ymax, p.y + margin);
  }
  return w;
}

}  // namespace

Scene figure_scene(std::string_view preset, const BernoulliConfig& cfg,
                   const FigureParams& params) {
  return figure_scene(parse_figure(preset), cfg, params);
}

Scene figure_scene(Figure figure, const BernoulliConfig& cfg, const FigureParams& params) {
  const double c = cfg.c();
  const Point o = cfg.center();

  if (figure == Figure::Family3) {
    // Foci on the circle of radius c about O; the critical radius is c.
    Scene scene({o.x - 2.0 * c, o.x + 2.0 * c, o.y - 2.0 * c, o.y + 2.0 * c, params.grid,
                 params.grid});
    std::vector<Point> foci;
    for (int k = 0; k < 3; ++k) foci.push_back(o + unit(pi / 2 + 2.0 * pi * k / 3.0) * c);
    for (int level = 0; level < 9; ++level) {
      const double radius = c * std::pow(1.08, level - 4);
      add_contours(scene, PolynomialLemniscate(foci, radius), params,
                   "radius " + format_9(radius));
    }
    for (Point f : foci) add_marker(scene, f, "F");
    return scene;
  }

  Scene scene(figure_window(figure, cfg, params));
  add_bernoulli(scene, cfg, params);

  switch (figure) {
    case Figure::Family3:
    case Figure::Lemniscate:
      break;
    case Figure::ThreeBar: {
      const ThreeBarState s = three_bar_solve(cfg, params.theta, Branch::Opposite);
      scene.add(SegmentShape{cfg.f1(), cfg.f2()}, dashed());
      scene.add(SegmentShape{cfg.f1(), s.a}, thin("F1A"));
      scene.add(SegmentShape{s.a, s.b}, thin("AB"));
      scene.add(SegmentShape{cfg.f2(), s.b}, thin("F2B"));
      add_marker(scene, s.a, "A");
      add_marker(scene, s.b, "B");
      add_marker(scene, s.x, "X");
      break;
    }
    case Figure::Maclaurin: {
      const MaclaurinSample m = maclaurin_sample(cfg, params.phi);
      scene.add(CircleShape{cfg.f1(), c / sqrt2}, thin("circle about F1"));
      const Vec2 dir = rotated(-cfg.axis(), params.phi);
      const double reach = std::max({distance(o, m.x), distance(o, m.a), distance(o, m.b)}) + 0.2 * c;
      scene.add(SegmentShape{o - dir * reach, o + dir * reach}, dashed("secant"));
      add_marker(scene, m.a, "A");
      add_marker(scene, m.b, "B");
      add_marker(scene, m.x, "X");
      add_marker(scene, m.x_prime, "X'");
      break;
    }
    case Figure::RightAngle: {
      const RightAngleState s = right_angle_solve(cfg, params.alpha);
      scene.add(CircleShape{cfg.f1(), c}, dashed());
      scene.add(SegmentShape{cfg.f1(), s.a}, thin("F1A"));
      scene.add(SegmentShape{s.a, s.x}, thin("AX"));
      scene.add(SegmentShape{s.a, s.y}, thin("AY"));
      scene.add(SegmentShape{o, s.b}, thin("OB"));
      scene.add(SegmentShape{o, s.c}, thin("OC"));
      add_marker(scene, s.a, "A");
      add_marker(scene, s.b, "B");
      add_marker(scene, s.c, "C");
      add_marker(scene, s.x, "X");
      add_marker(scene, s.y, "Y");
      break;
    }
    case Figure::Inversion: {
      scene.add(CircleShape{o, c}, dashed("inversion circle"));
      add_hyperbola(scene, cfg);
      const ThreeBarState s = three_bar_solve(cfg, params.theta, Branch::Opposite);
      add_marker(scene, s.x, "X");
      if (s.p && s.q) {
        scene.add(SegmentShape{o, *s.q}, thin("ray OX"));
        add_marker(scene, *s.q, "Q");
        add_marker(scene, *s.p, "P");
        const double product = distance(o, s.x) * distance(o, *s.q);
        const TraceWindow& w = scene.viewbox();
        scene.add(TextShape{{w.xmin + 0.05 * (w.xmax - w.xmin), w.ymax - 0.08 * (w.ymax - w.ymin)},
                            "|OX|*|OQ| = " + fixed3(product)},
                  thin());
      }
      break;
    }
    case Figure::TangentCircle: {
      const ThreeBarState s = three_bar_solve(cfg, params.theta, Branch::Opposite);
      add_marker(scene, s.x, "X");
      if (s.p) {
        const Circle circle = tangent_circle_at(s);
        add_circle_or_arcs(scene, circle, s.x, thin("tangent circle"));
        scene.add(SegmentShape{*s.p, s.x}, dashed("PX"));
        add_marker(scene, *s.p, "P");
      }
      break;
    }
    case Figure::Normal: {
      const ThreeBarState s = three_bar_solve(cfg, params.theta, Branch::Opposite);
      add_marker(scene, s.x, "X");
      if (distance(s.x, o) > kCoincidenceTol * std::max(1.0, c)) {
        const Line normal = normal_by_angle(cfg, s.x);
        scene.add(SegmentShape{normal.at(-c), normal.at(c)}, thin("normal"));
        scene.add(SegmentShape{o, s.x}, dashed("OX"));
      }
      break;
    }
  }
  return scene;
}

std::string format_exact(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_9(double value) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  std::string out(buf, res.ptr);
  return out == "-0" ? "0" : out;
}

std::string emit_svg(const Scene& scene, bool flip_y) {
  const TraceWindow& w = scene.viewbox();
  constexpr double kWidth = 800.0;
  const double s = kWidth / (w.xmax - w.xmin);
  const double height = s * (w.ymax - w.ymin);
  const auto px = [&](double x) { return format_9((x - w.xmin) * s); };
  const auto py = [&](double y) { return format_9(flip_y ? (w.ymax - y) * s : (y - w.ymin) * s); };
  const auto stroke = [&](const Style& st) {
    std::string out = " fill=\"none\" stroke=\"black\" stroke-width=\"" + format_9(st.stroke_width * s) + "\"";
    if (st.dashed) out += " stroke-dasharray=\"6,4\"";
    return out;
  };
  const auto close_tag = [](const Style& st) {
    return st.label.empty() ? std::string("/>\n")
                            : ("><title>" + xml_escape(st.label) + "</title></");
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + format_9(kWidth) +
         "\" height=\"" + format_9(height) + "\" viewBox=\"0 0 " + format_9(kWidth) + " " +
         format_9(height) + "\">\n";
  for (const Element& el : scene.elements()) {
    const Style& st = el.style;
    std::visit(
        [&](const auto& sh) {
          using T = std::decay_t<decltype(sh)>;
          if constexpr (std::is_same_v<T, PolylineShape>) {
            const char* tag = sh.closed ? "polygon" : "polyline";
            out += std::string("<") + tag + " points=\"";
            for (std::size_t k = 0; k < sh.points.size(); ++k) {
              if (k) out += ' ';
              out += px(sh.points[k].x) + "," + py(sh.points[k].y);
            }
            out += "\"" + stroke(st);
            out += close_tag(st);
            if (!st.label.empty()) out += std::string(tag) + ">\n";
          } else if constexpr (std::is_same_v<T, CircleShape>) {
            out += "<circle cx=\"" + px(sh.center.x) + "\" cy=\"" + py(sh.center.y) + "\" r=\"" +
                   format_9(sh.radius * s) + "\"" + stroke(st);
            out += close_tag(st);
            if (!st.label.empty()) out += "circle>\n";
          } else if constexpr (std::is_same_v<T, SegmentShape>) {
            out += "<line x1=\"" + px(sh.a.x) + "\" y1=\"" + py(sh.a.y) + "\" x2=\"" + px(sh.b.x) +
                   "\" y2=\"" + py(sh.b.y) + "\"" + stroke(st);
            out += close_tag(st);
            if (!st.label.empty()) out += "line>\n";
          } else if constexpr (std::is_same_v<T, MarkerShape>) {
            out += "<circle cx=\"" + px(sh.at.x) + "\" cy=\"" + py(sh.at.y) +
                   "\" r=\"3\" fill=\"black\"/>\n";
            if (!st.label.empty()) {
              out += "<text x=\"" + format_9((sh.at.x - w.xmin) * s + 5.0) + "\" y=\"" +
                     format_9((flip_y ? (w.ymax - sh.at.y) : (sh.at.y - w.ymin)) * s - 5.0) +
                     "\" font-family=\"serif\" font-size=\"14\">" + xml_escape(st.label) +
                     "</text>\n";
            }
          } else {
            out += "<text x=\"" + px(sh.at.x) + "\" y=\"" + py(sh.at.y) +
                   "\" font-family=\"serif\" font-size=\"14\">" + xml_escape(sh.text) + "</text>\n";
          }
        },
        el.shape);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace lemni
