#pragma once

// Implicit and parametric forms of polynomial lemniscates, the Bernoulli
// special case and the equilateral hyperbola.

#include <span>
#include <utility>
#include <vector>

#include "lemni/geometry.hpp"

namespace lemni {

/// Locus where the product of distances to the foci equals radius^n.
class PolynomialLemniscate {
 public:
  /// Throws InvalidArgument for an empty focus list, a non-positive radius or
  /// repeated foci.
  PolynomialLemniscate(std::vector<Point> foci, double radius);

  std::span<const Point> foci() const noexcept { return foci_; }
  std::size_t focus_count() const noexcept { return foci_.size(); }
  double radius() const noexcept { return radius_; }
  /// radius^(2n): the constant subtracted by the field.
  double level() const noexcept { return level_; }
  /// max(1, |F_i|, radius); residual thresholds scale with scale()^(2n).
  double scale() const noexcept;

 private:
  std::vector<Point> foci_;
  double radius_;
  double level_;
};

/// prod |p - F_i|^2 - radius^(2n); negative inside the lobes.
double lemniscate_field(const PolynomialLemniscate& lem, Point p) noexcept;
Vec2 lemniscate_gradient(const PolynomialLemniscate& lem, Point p) noexcept;

/// Two foci whose lemniscate passes through their midpoint.
class BernoulliConfig {
 public:
  BernoulliConfig(Point f1, Point f2);

  Point f1() const noexcept { return f1_; }
  Point f2() const noexcept { return f2_; }
  /// The double point.
  Point center() const noexcept { return midpoint(f1_, f2_); }
  /// Half the focal distance, |F1 O|.
  double c() const noexcept { return 0.5 * distance(f1_, f2_); }
  /// Unit vector from F1 towards F2.
  Vec2 axis() const noexcept { return (f2_ - f1_) / distance(f1_, f2_); }
  Line focal_line() const { return Line::through(f1_, f2_); }
  PolynomialLemniscate lemniscate() const { return {{f1_, f2_}, c()}; }

 private:
  Point f1_;
  Point f2_;
};

/// ||F1 X| - |F2 X|| = |F1 F2| / sqrt(2).
class EquilateralHyperbola {
 public:
  EquilateralHyperbola(Point f1, Point f2);

  Point f1() const noexcept { return f1_; }
  Point f2() const noexcept { return f2_; }
  Point center() const noexcept { return midpoint(f1_, f2_); }
  Vec2 axis() const noexcept { return (f2_ - f1_) / distance(f1_, f2_); }
  /// Semi-axis a = b = |F1 F2| / (2 sqrt 2).
  double semi_axis() const noexcept;
  /// s^2 - t^2 - a^2 in the frame centered at O with s along the focal axis.
  double quadratic_form(Point p) const noexcept;
  Vec2 quadratic_form_gradient(Point p) const noexcept;

 private:
  Point f1_;
  Point f2_;
};

double hyperbola_residual(const EquilateralHyperbola& h, Point p) noexcept;
/// Throws NotOnCurve if the residual exceeds 1e-8.
Line hyperbola_tangent_at(const EquilateralHyperbola& h, Point q);
/// Foci of y = 1/x.
std::pair<Point, Point> unit_hyperbola_foci() noexcept;

/// Point at polar angle `theta` (from O towards F2) on r^2 = 2 c^2 cos 2 theta.
/// Throws OutsideLobe when cos 2 theta < 0.
Point bernoulli_polar_point(const BernoulliConfig& b, double theta);
double bernoulli_area(const BernoulliConfig& b) noexcept;

/// Dense monomial coefficients of the lemniscate polynomial.
class CoefficientTable {
 public:
  explicit CoefficientTable(std::size_t focus_count);

  std::size_t focus_count() const noexcept { return n_; }
  /// Nominal total degree 2n.
  std::size_t degree() const noexcept { return 2 * n_; }
  /// Coefficient of x^i y^j; zero when i + j > degree().
  double coeff(std::size_t i, std::size_t j) const;
  double& coeff(std::size_t i, std::size_t j);
  /// Largest i + j carrying a non-zero coefficient.
  std::size_t effective_degree() const noexcept;
  double evaluate(Point p) const noexcept;

 private:
  std::size_t n_;
  std::size_t stride_;
  std::vector<double> coeffs_;
};

inline constexpr std::size_t kMaxExpansionFoci = 8;

/// Throws TooManyFoci for more than kMaxExpansionFoci foci.
CoefficientTable expand_coefficients(const PolynomialLemniscate& lem);

}  // namespace lemni
