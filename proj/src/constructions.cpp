#include "lemni/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lemni/error.hpp"

namespace lemni {

namespace {

using std::numbers::sqrt2;

// Picks B among the circle-circle candidates: the crossed branch minimizes
// sA * sB (opposite sides of the focal line), the parallel branch maximizes it.
Point select_branch(const std::vector<Point>& candidates, const Line& focal, Point a,
                    Branch side, double c) {
  const double sa = focal.signed_distance(a);
  const double sign = side == Branch::Opposite ? 1.0 : -1.0;
  const double tie = 1e-12 * c * c;
  const Point* best = &candidates.front();
  for (const Point& cand : candidates) {
    const double key = sign * sa * focal.signed_distance(cand);
    const double best_key = sign * sa * focal.signed_distance(*best);
    if (key < best_key - tie) {
      best = &cand;
    } else if (std::abs(key - best_key) <= tie &&
               std::abs(focal.signed_distance(cand)) < std::abs(focal.signed_distance(*best))) {
      best = &cand;
    }
  }
  return *best;
}

}  // namespace

ThreeBarState three_bar_solve(const BernoulliConfig& cfg, double theta, Branch side) {
  const double c = cfg.c();
  const Vec2 u = cfg.axis();
  const Line focal = cfg.focal_line();

  ThreeBarState s;
  s.theta = theta;
  s.side = side;
  s.a = cfg.f1() + (u * std::cos(theta) + perp(u) * std::sin(theta)) * (c * sqrt2);

  const auto candidates =
      circle_circle_intersection(Circle(cfg.f2(), c * sqrt2), Circle(s.a, 2.0 * c));
  if (candidates.empty()) {
    throw Error(ErrorCode::NoSolution, "stick AB cannot reach the circle about F2");
  }
  s.b = select_branch(candidates, focal, s.a, side, c);
  s.x = midpoint(s.a, s.b);

  s.p = line_line_intersection(Line::through(cfg.f1(), s.a), Line::through(cfg.f2(), s.b));
  if (s.p) s.q = reflect_across_line(focal, *s.p);
  return s;
}

MaclaurinSample maclaurin_sample(const BernoulliConfig& cfg, double phi) {
  const Point o = cfg.center();
  const Vec2 dir = rotated(-cfg.axis(), phi);
  const Circle circle(cfg.f1(), cfg.c() / sqrt2);

  const auto chord = line_circle_intersection(Line(o, dir), circle);
  if (chord.empty()) {
    throw Error(ErrorCode::NoChord, "secant through O misses the circle");
  }
  MaclaurinSample m;
  m.phi = phi;
  m.a = chord.front();
  m.b = chord.back();
  const double length = distance(m.a, m.b);
  m.x = o + dir * length;
  m.x_prime = o - dir * length;
  return m;
}

RightAngleState right_angle_solve(const BernoulliConfig& cfg, double alpha) {
  const double c = cfg.c();
  const Point o = cfg.center();
  const Vec2 u = cfg.axis();
  if (std::cos(alpha) < -1e-12) {
    throw Error(ErrorCode::OutOfReach, "|OA| exceeds sqrt(2)|F1 O|");
  }
  RightAngleState s;
  s.alpha = alpha;
  s.a = cfg.f1() + rotated(u, alpha) * c;

  if (distance(s.a, o) <= kCoincidenceTol * std::max(1.0, c)) {
    // A = O: the direction of OX is fixed by continuity along the focal axis.
    s.x = o + u * (c * sqrt2);
    s.y = o - u * (c * sqrt2);
    s.b = midpoint(s.a, s.x);
    s.c = midpoint(s.a, s.y);
    return s;
  }

  // B and C are equidistant (c / sqrt 2) from O and from A.
  const double half = c / sqrt2;
  const auto mids = circle_circle_intersection(Circle(o, half), Circle(s.a, half));
  if (mids.empty()) {
    throw Error(ErrorCode::OutOfReach, "|OA| exceeds sqrt(2)|F1 O|");
  }
  // X follows polar angle alpha / 2 continuously, so it stays in the F2 lobe.
  const bool swap = dot(mids.front() * 2.0 - s.a - o, u) < 0.0;
  s.b = swap ? mids.back() : mids.front();
  s.c = swap ? mids.front() : mids.back();
  s.x = s.b * 2.0 - s.a;
  s.y = s.c * 2.0 - s.a;
  return s;
}

Point invert_between(const BernoulliConfig& cfg, Point p) {
  return invert_point(InversionMap(cfg.center(), cfg.c()), p);
}

Circle tangent_circle_at(const ThreeBarState& state) {
  if (!state.p || state.side != Branch::Opposite) {
    throw Error(ErrorCode::UndefinedCenter, "tangent circle needs the crossed-branch point P");
  }
  return {*state.p, distance(*state.p, state.x)};
}

Line normal_by_angle(const BernoulliConfig& cfg, Point x) {
  const Point o = cfg.center();
  const double c = cfg.c();
  if (distance(x, o) <= kCoincidenceTol * std::max(1.0, c)) {
    throw Error(ErrorCode::DoublePoint, "the double point has two normals");
  }
  const double tol = 1e-9 * std::max(1.0, c * c * c * c);
  if (std::abs(lemniscate_field(cfg.lemniscate(), x)) > tol) {
    throw Error(ErrorCode::NotOnCurve, "point is not on the lemniscate");
  }
  const double angle = angle_at(o, x, cfg.f1());
  const double sense = cross(cfg.f1() - o, x - o) < 0.0 ? -1.0 : 1.0;
  return Line(x, rotated(normalized(x - o), 2.0 * sense * angle));
}

}  // namespace lemni
