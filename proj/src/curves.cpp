#include "lemni/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lemni/error.hpp"

namespace lemni {

PolynomialLemniscate::PolynomialLemniscate(std::vector<Point> foci, double radius)
    : foci_(std::move(foci)), radius_(radius) {
  if (foci_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a lemniscate needs at least one focus");
  }
  if (!std::isfinite(radius_) || !(radius_ > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "lemniscate radius must be positive");
  }
  for (std::size_t i = 0; i < foci_.size(); ++i) {
    if (!is_finite(foci_[i])) {
      throw Error(ErrorCode::InvalidArgument, "lemniscate foci must be finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (distance(foci_[i], foci_[j]) <= kCoincidenceTol) {
        throw Error(ErrorCode::InvalidArgument,
                    "foci " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
  level_ = std::pow(radius_, 2.0 * static_cast<double>(foci_.size()));
}

double PolynomialLemniscate::scale() const noexcept {
  double s = std::max(1.0, radius_);
  for (Point f : foci_) s = std::max(s, norm(f));
  return s;
}

double lemniscate_field(const PolynomialLemniscate& lem, Point p) noexcept {
  double product = 1.0;
  for (Point f : lem.foci()) product *= norm2(p - f);
  return product - lem.level();
}

Vec2 lemniscate_gradient(const PolynomialLemniscate& lem, Point p) noexcept {
  const auto foci = lem.foci();
  const std::size_t n = foci.size();
  // suffix[i] = prod_{j >= i} d_j
  std::vector<double> suffix(n + 1, 1.0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * norm2(p - foci[i]);
  Vec2 grad;
  double prefix = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d = p - foci[i];
    grad += d * (2.0 * prefix * suffix[i + 1]);
    prefix *= norm2(d);
  }
  return grad;
}

BernoulliConfig::BernoulliConfig(Point f1, Point f2) : f1_(f1), f2_(f2) {
  if (!is_finite(f1) || !is_finite(f2) || distance(f1, f2) <= kCoincidenceTol) {
    throw Error(ErrorCode::InvalidArgument, "Bernoulli foci must be finite and distinct");
  }
}

EquilateralHyperbola::EquilateralHyperbola(Point f1, Point f2) : f1_(f1), f2_(f2) {
  if (!is_finite(f1) || !is_finite(f2) || distance(f1, f2) <= kCoincidenceTol) {
    throw Error(ErrorCode::InvalidArgument, "hyperbola foci must be finite and distinct");
  }
}

double EquilateralHyperbola::semi_axis() const noexcept {
  return distance(f1_, f2_) / (2.0 * std::numbers::sqrt2);
}

double EquilateralHyperbola::quadratic_form(Point p) const noexcept {
  const Vec2 u = axis();
  const Vec2 d = p - center();
  const double s = dot(d, u);
  const double t = dot(d, perp(u));
  const double a = semi_axis();
  return s * s - t * t - a * a;
}

Vec2 EquilateralHyperbola::quadratic_form_gradient(Point p) const noexcept {
  const Vec2 u = axis();
  const Vec2 d = p - center();
  return u * (2.0 * dot(d, u)) - perp(u) * (2.0 * dot(d, perp(u)));
}

double hyperbola_residual(const EquilateralHyperbola& h, Point p) noexcept {
  return std::abs(distance(p, h.f1()) - distance(p, h.f2())) -
         distance(h.f1(), h.f2()) / std::numbers::sqrt2;
}

Line hyperbola_tangent_at(const EquilateralHyperbola& h, Point q) {
  if (std::abs(hyperbola_residual(h, q)) > 1e-8) {
    throw Error(ErrorCode::NotOnCurve, "point is not on the hyperbola");
  }
  const Vec2 g = h.quadratic_form_gradient(q);
  return Line(q, Vec2{g.y, -g.x});
}

std::pair<Point, Point> unit_hyperbola_foci() noexcept {
  constexpr double s = std::numbers::sqrt2;
  return {Point{s, s}, Point{-s, -s}};
}

Point bernoulli_polar_point(const BernoulliConfig& b, double theta) {
  const double cos2 = std::cos(2.0 * theta);
  if (cos2 < -1e-12) {
    throw Error(ErrorCode::OutsideLobe, "polar angle lies outside both lobes");
  }
  const double r = b.c() * std::sqrt(2.0 * std::max(0.0, cos2));
  const Vec2 u = b.axis();
  return b.center() + (u * std::cos(theta) + perp(u) * std::sin(theta)) * r;
}

double bernoulli_area(const BernoulliConfig& b) noexcept {
  return 0.5 * norm2(b.f2() - b.f1());
}

CoefficientTable::CoefficientTable(std::size_t focus_count)
    : n_(focus_count), stride_(2 * focus_count + 1), coeffs_(stride_ * stride_, 0.0) {}

double CoefficientTable::coeff(std::size_t i, std::size_t j) const {
  if (i >= stride_ || j >= stride_) return 0.0;
  return coeffs_[i * stride_ + j];
}

double& CoefficientTable::coeff(std::size_t i, std::size_t j) {
  if (i + j > degree()) {
    throw Error(ErrorCode::InvalidArgument, "monomial exceeds the table degree");
  }
  return coeffs_[i * stride_ + j];
}

std::size_t CoefficientTable::effective_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t i = 0; i < stride_; ++i) {
    for (std::size_t j = 0; i + j < stride_; ++j) {
      if (coeffs_[i * stride_ + j] != 0.0) best = std::max(best, i + j);
    }
  }
  return best;
}

double CoefficientTable::evaluate(Point p) const noexcept {
  double result = 0.0;
  for (std::size_t i = stride_; i-- > 0;) {
    double inner = 0.0;
    for (std::size_t j = stride_ - i; j-- > 0;) inner = inner * p.y + coeffs_[i * stride_ + j];
    result = result * p.x + inner;
  }
  return result;
}

CoefficientTable expand_coefficients(const PolynomialLemniscate& lem) {
  const std::size_t n = lem.focus_count();
  if (n > kMaxExpansionFoci) {
    throw Error(ErrorCode::TooManyFoci,
                "coefficient expansion supports at most " + std::to_string(kMaxExpansionFoci) +
                    " foci");
  }
  CoefficientTable table(n);
  table.coeff(0, 0) = 1.0;
  std::size_t deg = 0;
  for (Point f : lem.foci()) {
    // (x - a)^2 + (y - b)^2 = x^2 + y^2 - 2a x - 2b y + (a^2 + b^2)
    struct Term {
      std::size_t i, j;
      double c;
    };
    const Term factor[] = {{2, 0, 1.0}, {0, 2, 1.0}, {1, 0, -2.0 * f.x}, {0, 1, -2.0 * f.y},
                           {0, 0, norm2(f)}};
    CoefficientTable next(n);
    for (std::size_t i = 0; i <= deg; ++i) {
      for (std::size_t j = 0; i + j <= deg; ++j) {
        const double c = table.coeff(i, j);
        if (c == 0.0) continue;
        for (const Term& t : factor) {
          if (t.c != 0.0) next.coeff(i + t.i, j + t.j) += c * t.c;
        }
      }
    }
    table = std::move(next);
    deg += 2;
  }
  table.coeff(0, 0) -= lem.level();
  return table;
}

}  // namespace lemni
