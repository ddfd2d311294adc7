#pragma once

// Grid-based extraction of polynomial lemniscates as refined polylines.

#include <span>
#include <vector>

#include "lemni/curves.hpp"
#include "lemni/geometry.hpp"

namespace lemni {

/// Axis-aligned sampling window with nx * ny cells.
struct TraceWindow {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;
  int nx = 64;
  int ny = 64;

  /// Throws InvalidArgument unless the bounds are finite and ordered and
  /// nx, ny >= 8.
  void validate() const;
  double cell_width() const noexcept { return (xmax - xmin) / nx; }
  double cell_height() const noexcept { return (ymax - ymin) / ny; }
  double cell_diagonal() const noexcept;
  bool contains(Point p) const noexcept;
};

/// 1.6 times the vertex distance sqrt(2) c along the focal axis and 0.8 times
/// across it, centered on O.
TraceWindow default_bernoulli_window(const BernoulliConfig& cfg, int grid = 512);

struct Contour {
  std::vector<Point> points;
  bool closed = false;
  double max_residual = 0.0;  // max |field| over points
};

struct TraceOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Marching squares with Newton-refined vertices; interior (field < 0) lies on
/// the left of every contour. Contours are split at singular points of the
/// curve. Throws EmptyTrace when the field has no sign change in the window.
std::vector<Contour> trace(const PolynomialLemniscate& lem, const TraceWindow& window,
                           const TraceOptions& options = {});

/// Residual target of refine(): 1e-12 * scale^(2n).
double refine_tolerance(const PolynomialLemniscate& lem) noexcept;

struct RefineReport {
  Point point;
  std::vector<double> residuals;  // |field| at the seed and after each step
};

/// Newton steps along the gradient. Throws SingularPoint when the gradient
/// vanishes and NoConvergence after 20 steps.
RefineReport refine_with_report(const PolynomialLemniscate& lem, Point p);
Point refine(const PolynomialLemniscate& lem, Point p);

/// Critical points of the field that lie on the curve (e.g. the Bernoulli
/// double point).
std::vector<Point> singular_points(const PolynomialLemniscate& lem);

double signed_area(std::span<const Point> polygon) noexcept;
/// Absolute shoelace area. Throws OpenContour.
double contour_area(const Contour& contour);

}  // namespace lemni
