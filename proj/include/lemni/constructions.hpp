#pragma once

// The three Bernoulli-lemniscate mechanisms, the inversion correspondence with
// the equilateral hyperbola, the tangent circle and the angle-doubling normal.

#include <optional>

#include "lemni/curves.hpp"
#include "lemni/geometry.hpp"

namespace lemni {

/// Which circle-circle solution the coupler B takes relative to A.
enum class Branch {
  Opposite,  // crossed (antiparallelogram) configuration: the lemniscate
  Same,      // parallelogram configuration: a circle about O
};

/// Solved three-stick linkage F1-A, A-B, B-F2 at one drive angle.
struct ThreeBarState {
  double theta = 0.0;  // angle of stick F1A from the F1->F2 direction
  Point a;
  Point b;
  Point x;                // midpoint of AB
  std::optional<Point> p;  // lines F1A and F2B meet here (absent when parallel)
  std::optional<Point> q;  // reflection of p in the focal line
  Branch side = Branch::Opposite;
};

/// One secant through O of the circle about F1 with radius |F1 O| / sqrt 2.
struct MaclaurinSample {
  double phi = 0.0;  // secant direction, measured from O->F1
  Point a;
  Point b;
  Point x;        // O + |AB| along the secant direction
  Point x_prime;  // O - |AB| along the secant direction
};

/// The right-angle linkage: A on the circle through O about F1, sticks AX and
/// AY of length sqrt(2)|F1 O| whose midpoints are tied to O.
struct RightAngleState {
  double alpha = 0.0;  // angle of A about F1, from the F1->O direction
  Point a;
  Point b;  // midpoint of AX
  Point c;  // midpoint of AY
  Point x;  // on the F2 side of O
  Point y;  // on the F1 side of O
};

/// Throws NoSolution if the stick circles miss each other.
ThreeBarState three_bar_solve(const BernoulliConfig& cfg, double theta, Branch side);

/// Throws NoChord if the secant misses the circle.
MaclaurinSample maclaurin_sample(const BernoulliConfig& cfg, double phi);

/// Throws OutOfReach when cos(alpha) < 0 (|OA| > sqrt(2) c).
RightAngleState right_angle_solve(const BernoulliConfig& cfg, double alpha);

/// Inversion in the circle about O through the foci. Throws CenterSingular at O.
Point invert_between(const BernoulliConfig& cfg, Point p);

/// Circle about P through X and O, tangent to the lemniscate at X.
/// Throws UndefinedCenter when the state has no P or is on the same-side branch.
Circle tangent_circle_at(const ThreeBarState& state);

/// Normal at an on-curve point: line OX turned by twice the signed angle from
/// OF1 to OX. Throws DoublePoint at O and NotOnCurve off the curve.
Line normal_by_angle(const BernoulliConfig& cfg, Point x);

}  // namespace lemni
