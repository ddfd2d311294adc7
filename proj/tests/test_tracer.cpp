#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lemni/error.hpp"
#include "lemni/tracer.hpp"
#include "oracles.hpp"

namespace lemni {
namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

const BernoulliConfig kUnit({-1.0, 0.0}, {1.0, 0.0});
const TraceWindow kBernoulliWindow{-1.6, 1.6, -0.8, 0.8, 512, 512};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

double total_area(const std::vector<Contour>& contours) {
  double sum = 0.0;
  for (const Contour& c : contours) sum += contour_area(c);
  return sum;
}

std::vector<Point> triangle_foci() {
  return {unit(0.0), unit(2 * pi / 3), unit(4 * pi / 3)};
}

void expect_well_formed(const PolynomialLemniscate& lem, const std::vector<Contour>& contours) {
  const double bound = 1e-10 * std::pow(lem.scale(), 2.0 * static_cast<double>(lem.focus_count()));
  for (const Contour& c : contours) {
    ASSERT_TRUE(c.closed);
    ASSERT_GE(c.points.size(), 3u);
    EXPECT_LE(c.max_residual, bound);
    EXPECT_GT(signed_area(c.points), 0.0);
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      const Point p = c.points[k];
      ASSERT_LE(std::abs(lemniscate_field(lem, p)), bound);
      ASSERT_NE(p, c.points[(k + 1) % c.points.size()]);
    }
  }
}

TEST(Trace, UnitCircle) {
  const PolynomialLemniscate lem({{0, 0}}, 1.0);
  const auto contours = trace(lem, {-2, 2, -2, 2, 128, 128});
  ASSERT_EQ(contours.size(), 1u);
  expect_well_formed(lem, contours);
  EXPECT_NEAR(total_area(contours) / pi, 1.0, 1e-3);
}

TEST(Trace, BernoulliLobes) {
  const auto lem = kUnit.lemniscate();
  const auto contours = trace(lem, kBernoulliWindow);
  ASSERT_EQ(contours.size(), 2u);
  expect_well_formed(lem, contours);
  // Ordered by leftmost point: the F1 lobe comes first.
  EXPECT_LT(contours[0].points[0].x, 0.0 + 1e-12);
  EXPECT_NEAR(total_area(contours), 2.0, 2e-3);
  EXPECT_NEAR(total_area(contours) / bernoulli_area(kUnit), 1.0, 1e-3);
  // Both lobes pass through the double point.
  for (const Contour& c : contours) {
    const bool touches = std::any_of(c.points.begin(), c.points.end(),
                                     [](Point p) { return norm(p) <= 1e-12; });
    EXPECT_TRUE(touches);
  }
}

TEST(Trace, DefaultWindowCoversRotatedConfigurations) {
  const BernoulliConfig cfg({0.0, -1.5}, {0.0, 1.5});
  const auto contours = trace(cfg.lemniscate(), default_bernoulli_window(cfg, 256));
  ASSERT_EQ(contours.size(), 2u);
  EXPECT_NEAR(total_area(contours) / bernoulli_area(cfg), 1.0, 3e-3);
}

TEST(Trace, ThreeFociConnectivityFollowsCentroidSign) {
  const auto foci = triangle_foci();
  const TraceWindow window{-2, 2, -2, 2, 256, 256};
  for (double r : {0.8, 0.9, 0.95, 1.05, 1.1, 1.3}) {
    // Oracle: the centroid is the only critical point, so the curve is one
    // piece exactly when the centroid lies inside.
    const bool inside = oracle::product_field(foci, r, {0, 0}) < 0.0;
    const PolynomialLemniscate lem(foci, r);
    const auto contours = trace(lem, window);
    EXPECT_EQ(contours.size(), inside ? 1u : 3u) << "radius " << r;
    expect_well_formed(lem, contours);
  }
}

TEST(Trace, HigherDegreeAndScaledConfigurations) {
  const PolynomialLemniscate lem({{-3, -1}, {4, 2}, {1, 5}, {-2, 4}}, 3.4);
  const auto contours = trace(lem, {-8, 9, -5, 10, 300, 300});
  ASSERT_FALSE(contours.empty());
  expect_well_formed(lem, contours);
}

TEST(Trace, DeterministicAcrossThreadCounts) {
  const auto lem = kUnit.lemniscate();
  const auto one = trace(lem, kBernoulliWindow, {1});
  const auto four = trace(lem, kBernoulliWindow, {4});
  const auto again = trace(lem, kBernoulliWindow, {4});
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t k = 0; k < one.size(); ++k) {
    EXPECT_EQ(one[k].points, four[k].points);
    EXPECT_EQ(four[k].points, again[k].points);
  }
}

TEST(Trace, AreaConvergesMonotonically) {
  const auto lem = kUnit.lemniscate();
  double previous = INFINITY;
  for (int grid : {64, 128, 256, 512}) {
    TraceWindow w = kBernoulliWindow;
    w.nx = w.ny = grid;
    const double error = std::abs(total_area(trace(lem, w)) - 2.0);
    EXPECT_LE(error, previous) << "grid " << grid;
    previous = error;
  }
}

TEST(Trace, EmptyAndInvalidWindows) {
  const auto lem = kUnit.lemniscate();
  EXPECT_EQ(code_of([&] { trace(lem, {5, 6, 5, 6, 16, 16}); }), ErrorCode::EmptyTrace);
  EXPECT_EQ(code_of([&] { trace(lem, {-2, 2, -2, 2, 4, 16}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { trace(lem, {2, -2, -2, 2, 16, 16}); }), ErrorCode::InvalidArgument);
}

TEST(Trace, WindowClippedCurveGivesOpenContours) {
  const PolynomialLemniscate lem({{0, 0}}, 1.0);
  const auto contours = trace(lem, {0, 2, -2, 2, 64, 64});
  ASSERT_EQ(contours.size(), 1u);
  EXPECT_FALSE(contours[0].closed);
  EXPECT_EQ(code_of([&] { contour_area(contours[0]); }), ErrorCode::OpenContour);
}

TEST(Refine, Examples) {
  const auto lem = kUnit.lemniscate();
  const Point p = refine(lem, {1.42, 0.01});
  EXPECT_LE(std::abs(lemniscate_field(lem, p)), 1e-12);
  const Point on = bernoulli_polar_point(kUnit, 0.3);
  const Point same = refine(lem, on);
  EXPECT_LE(distance(same, on), 1e-12);
  EXPECT_EQ(code_of([&] { refine(lem, {0, 0}); }), ErrorCode::SingularPoint);
}

TEST(Refine, QuadraticConvergence) {
  const auto lem = kUnit.lemniscate();
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const double theta = oracle::uniform(-0.6, 0.6) + (k % 2 ? pi : 0.0);
    const Point on = bernoulli_polar_point(kUnit, theta);
    const Point seed = on + unit(oracle::uniform(0, 2 * pi)) * oracle::uniform(0.02, 0.05);
    const auto report = refine_with_report(lem, seed);
    std::vector<double> before;
    std::vector<double> after;
    for (std::size_t j = 0; j + 1 < report.residuals.size(); ++j) {
      if (report.residuals[j + 1] < 1e-13) break;
      before.push_back(report.residuals[j]);
      after.push_back(report.residuals[j + 1]);
    }
    if (before.size() > 3) {
      before.erase(before.begin(), before.end() - 3);
      after.erase(after.begin(), after.end() - 3);
    }
    if (before.size() < 2) continue;
    EXPECT_GE(oracle::loglog_slope(before, after), 1.9) << "seed " << seed.x << "," << seed.y;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(SingularPoints, BernoulliDoublePointOnly) {
  const auto pts = singular_points(kUnit.lemniscate());
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_LE(norm(pts[0]), 1e-12);
  EXPECT_TRUE(singular_points(PolynomialLemniscate({{-1, 0}, {1, 0}}, 0.5)).empty());
  EXPECT_EQ(singular_points(PolynomialLemniscate(triangle_foci(), 1.0)).size(), 1u);
}

TEST(ContourArea, Polygons) {
  Contour square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true, 0.0};
  EXPECT_DOUBLE_EQ(contour_area(square), 1.0);
  std::reverse(square.points.begin(), square.points.end());
  EXPECT_DOUBLE_EQ(contour_area(square), 1.0);
  EXPECT_DOUBLE_EQ(signed_area(square.points), -1.0);

  Contour polygon;
  polygon.closed = true;
  for (int k = 0; k < 4096; ++k) polygon.points.push_back(unit(2 * pi * k / 4096));
  EXPECT_NEAR(contour_area(polygon), pi, 1e-5);
}

}  // namespace
}  // namespace lemni
