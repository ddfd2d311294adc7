#pragma once

// Planar primitives: points, lines, circles, reflection, inversion and
// intersections. Everything is a value type; all functions are pure.

#include <cmath>
#include <optional>
#include <vector>

namespace lemni {

/// Coincidence threshold for points, in plane units.
inline constexpr double kCoincidenceTol = 1e-12;

/// A point (or free vector) of the Euclidean plane.
struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point& operator+=(Point o) noexcept { x += o.x; y += o.y; return *this; }
  constexpr Point& operator-=(Point o) noexcept { x -= o.x; y -= o.y; return *this; }
  constexpr Point& operator*=(double k) noexcept { x *= k; y *= k; return *this; }

  friend constexpr Point operator+(Point a, Point b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) noexcept { return {-a.x, -a.y}; }
  friend constexpr Point operator*(Point a, double k) noexcept { return {a.x * k, a.y * k}; }
  friend constexpr Point operator*(double k, Point a) noexcept { return {a.x * k, a.y * k}; }
  friend constexpr Point operator/(Point a, double k) noexcept { return {a.x / k, a.y / k}; }
  friend constexpr bool operator==(Point a, Point b) noexcept = default;
};

using Vec2 = Point;

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product; positive when b is counter-clockwise of a.
constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }
constexpr double norm2(Vec2 a) noexcept { return dot(a, a); }
inline double distance(Point a, Point b) noexcept { return norm(a - b); }
constexpr Point midpoint(Point a, Point b) noexcept { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
constexpr Vec2 perp(Vec2 a) noexcept { return {-a.y, a.x}; }  // +90 degrees
Vec2 normalized(Vec2 a);
Vec2 rotated(Vec2 a, double radians) noexcept;
/// Unit vector at the given polar angle.
Vec2 unit(double radians) noexcept;
bool is_finite(Point p) noexcept;

/// Line through `anchor` with unit `direction`.
class Line {
 public:
  /// Normalizes `direction`; throws InvalidArgument for a zero vector.
  Line(Point anchor, Vec2 direction);
  static Line through(Point a, Point b);

  Point anchor() const noexcept { return anchor_; }
  Vec2 direction() const noexcept { return direction_; }
  Vec2 normal() const noexcept { return perp(direction_); }
  Point at(double t) const noexcept { return anchor_ + direction_ * t; }
  /// Signed distance, positive on the left of the direction.
  double signed_distance(Point p) const noexcept { return cross(direction_, p - anchor_); }
  Point foot_of(Point p) const noexcept;

 private:
  Point anchor_;
  Vec2 direction_;
};

class Circle {
 public:
  /// Throws InvalidArgument unless radius > 0 and everything is finite.
  Circle(Point center, double radius);

  Point center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  /// |p - center|^2 - radius^2.
  double power(Point p) const noexcept { return norm2(p - center_) - radius_ * radius_; }

 private:
  Point center_;
  double radius_;
};

/// Inversion in the circle (center, radius).
class InversionMap {
 public:
  InversionMap(Point center, double radius);

  Point center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  Circle circle() const { return {center_, radius_}; }

 private:
  Point center_;
  double radius_;
};

/// Image of `p` on ray center->p at distance r^2/|center p|. Throws CenterSingular.
Point invert_point(const InversionMap& map, Point p);
Point reflect_across_line(const Line& l, Point p) noexcept;
/// Image of a line missing the center: the circle on diameter O A*, A the foot
/// of the perpendicular from O. Throws LineThroughCenter.
Circle invert_line(const InversionMap& map, const Line& l);

/// Zero, one (tangency) or two points. With d = c2 - c1, points on the right
/// of the directed center line (cross(d, p - c1) < 0) come first.
std::vector<Point> circle_circle_intersection(const Circle& c1, const Circle& c2);
/// Intersection points sorted by parameter along l.direction().
std::vector<Point> line_circle_intersection(const Line& l, const Circle& c);
/// Empty when the lines are parallel (|sin| <= 1e-12).
std::optional<Point> line_line_intersection(const Line& a, const Line& b) noexcept;

/// Unsigned angle a-vertex-b in [0, pi]. Throws DegenerateRay.
double angle_at(Point vertex, Point a, Point b);

}  // namespace lemni
