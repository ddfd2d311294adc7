#pragma once

// Drawable scenes, figure presets and the SVG emitter.

#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lemni/curves.hpp"
#include "lemni/geometry.hpp"
#include "lemni/tracer.hpp"

namespace lemni {

struct Style {
  double stroke_width = 0.01;  // user units
  bool dashed = false;
  std::string label;
};

struct PolylineShape {
  std::vector<Point> points;
  bool closed = false;
};
struct CircleShape {
  Point center;
  double radius = 0.0;
};
struct SegmentShape {
  Point a;
  Point b;
};
struct MarkerShape {
  Point at;
};
struct TextShape {
  Point at;
  std::string text;
};

using Shape = std::variant<PolylineShape, CircleShape, SegmentShape, MarkerShape, TextShape>;

struct Element {
  Shape shape;
  Style style;
};

class Scene {
 public:
  explicit Scene(TraceWindow viewbox);

  const TraceWindow& viewbox() const noexcept { return viewbox_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }

  /// Appends the element unless its geometry leaves twice the viewbox, in
  /// which case nothing is added and false is returned.
  bool add(Shape shape, Style style = {});
  bool within_bounds(const Shape& shape) const noexcept;

 private:
  TraceWindow viewbox_;
  std::vector<Element> elements_;
};

enum class Figure { Family3, Lemniscate, ThreeBar, Maclaurin, RightAngle, Inversion, TangentCircle, Normal };

/// Throws UnknownPreset.
Figure parse_figure(std::string_view name);
std::string_view figure_name(Figure figure) noexcept;
std::vector<Figure> all_figures();

struct FigureParams {
  double theta = std::numbers::pi / 2;  // three-bar drive angle
  double phi = std::numbers::pi / 6;    // Maclaurin secant angle
  double alpha = std::numbers::pi / 3;  // right-angle linkage angle
  int grid = 256;
  unsigned threads = 0;
};

Scene figure_scene(Figure figure, const BernoulliConfig& cfg, const FigureParams& params = {});
Scene figure_scene(std::string_view preset, const BernoulliConfig& cfg,
                   const FigureParams& params = {});

/// SVG 1.1 document, 800 px wide. With flip_y the mathematical y axis points up.
std::string emit_svg(const Scene& scene, bool flip_y = true);

/// Locale-independent shortest round-trip decimal.
std::string format_exact(double value);
/// Locale-independent, 9 significant digits.
std::string format_9(double value);

}  // namespace lemni
