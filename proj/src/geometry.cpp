#include "lemni/geometry.hpp"

#include <algorithm>

#include "lemni/error.hpp"

namespace lemni {

namespace {

// Squared-offset slack (relative to radius^2) under which a near miss is
// still reported as a tangency.
constexpr double kTangencySlack = 1e-12;

}  // namespace

Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  return a / n;
}

Vec2 rotated(Vec2 a, double radians) noexcept {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

Vec2 unit(double radians) noexcept { return {std::cos(radians), std::sin(radians)}; }

bool is_finite(Point p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

Line::Line(Point anchor, Vec2 direction) : anchor_(anchor), direction_(normalized(direction)) {
  if (!is_finite(anchor)) {
    throw Error(ErrorCode::InvalidArgument, "line anchor must be finite");
  }
}

Line Line::through(Point a, Point b) { return Line(a, b - a); }

Point Line::foot_of(Point p) const noexcept {
  return anchor_ + direction_ * dot(p - anchor_, direction_);
}

Circle::Circle(Point center, double radius) : center_(center), radius_(radius) {
  if (!is_finite(center) || !std::isfinite(radius) || !(radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "circle needs a finite center and positive radius");
  }
}

InversionMap::InversionMap(Point center, double radius) : center_(center), radius_(radius) {
  if (!is_finite(center) || !std::isfinite(radius) || !(radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "inversion needs a finite center and positive radius");
  }
}

Point invert_point(const InversionMap& map, Point p) {
  const Vec2 d = p - map.center();
  const double d2 = norm2(d);
  if (std::sqrt(d2) <= kCoincidenceTol) {
    throw Error(ErrorCode::CenterSingular, "cannot invert the center of inversion");
  }
  return map.center() + d * (map.radius() * map.radius() / d2);
}

Point reflect_across_line(const Line& l, Point p) noexcept {
  const Point foot = l.foot_of(p);
  return foot * 2.0 - p;
}

Circle invert_line(const InversionMap& map, const Line& l) {
  if (std::abs(l.signed_distance(map.center())) <= kCoincidenceTol) {
    throw Error(ErrorCode::LineThroughCenter, "line through the inversion center maps to itself");
  }
  const Point foot_image = invert_point(map, l.foot_of(map.center()));
  return {midpoint(map.center(), foot_image), 0.5 * distance(map.center(), foot_image)};
}

std::vector<Point> circle_circle_intersection(const Circle& c1, const Circle& c2) {
  const Vec2 d = c2.center() - c1.center();
  const double dist = norm(d);
  if (dist <= kCoincidenceTol) {
    throw Error(ErrorCode::Concentric, "concentric circles");
  }
  const double r1 = c1.radius();
  const double r2 = c2.radius();
  const double big = std::max(r1, r2);
  const Vec2 axis = d / dist;
  const double along = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
  const double h2 = r1 * r1 - along * along;
  if (h2 < -kTangencySlack * big * big) {
    return {};
  }
  const Point base = c1.center() + axis * along;
  if (h2 <= 0.0) {
    return {base};
  }
  const Vec2 right{axis.y, -axis.x};
  const double h = std::sqrt(h2);
  return {base + right * h, base - right * h};
}

std::vector<Point> line_circle_intersection(const Line& l, const Circle& c) {
  const double r = c.radius();
  const double offset = l.signed_distance(c.center());
  const double h2 = r * r - offset * offset;
  if (h2 < -kTangencySlack * r * r) {
    return {};
  }
  const Point foot = l.foot_of(c.center());
  if (h2 <= 0.0) {
    return {foot};
  }
  const double h = std::sqrt(h2);
  return {foot - l.direction() * h, foot + l.direction() * h};
}

std::optional<Point> line_line_intersection(const Line& a, const Line& b) noexcept {
  const double s = cross(a.direction(), b.direction());
  if (std::abs(s) <= kCoincidenceTol) {
    return std::nullopt;
  }
  const double t = cross(b.anchor() - a.anchor(), b.direction()) / s;
  return a.at(t);
}

double angle_at(Point vertex, Point a, Point b) {
  const Vec2 va = a - vertex;
  const Vec2 vb = b - vertex;
  if (norm(va) <= kCoincidenceTol || norm(vb) <= kCoincidenceTol) {
    throw Error(ErrorCode::DegenerateRay, "angle ray has zero length");
  }
  return std::atan2(std::abs(cross(va, vb)), dot(va, vb));
}

}  // namespace lemni
