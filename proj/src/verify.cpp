#include "lemni/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lemni/constructions.hpp"
#include "lemni/tracer.hpp"

namespace lemni {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

// k-th of n midpoints of [lo, hi]; avoids landing on the interval ends.
double sample(double lo, double hi, std::size_t k, std::size_t n) {
  return lo + (hi - lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
}

class Tracker {
 public:
  Tracker(std::string name, double threshold) : result_{std::move(name), 0.0, threshold, 0} {}
  void add(double residual) {
    result_.max_residual = std::isfinite(residual) ? std::max(result_.max_residual, residual)
                                                   : INFINITY;
    ++result_.samples;
  }
  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

// F1 A F2 B is an isosceles trapezoid: bases A F2 and F1 B are parallel, legs
// F1 A and F2 B are equal, and so are the diagonals F1 F2 and A B.
double trapezoid_residual(const BernoulliConfig& cfg, const ThreeBarState& s) {
  const double c = cfg.c();
  const double bases = std::abs(cross(normalized(cfg.f2() - s.a), normalized(s.b - cfg.f1())));
  const double legs = std::abs(distance(cfg.f1(), s.a) - distance(cfg.f2(), s.b)) / c;
  const double diagonals = std::abs(distance(cfg.f1(), cfg.f2()) - distance(s.a, s.b)) / c;
  return std::max({bases, legs, diagonals});
}

double line_angle_between(Vec2 a, Vec2 b) {
  return std::asin(std::min(1.0, std::abs(cross(normalized(a), normalized(b)))));
}

}  // namespace

std::vector<CheckResult> run_verification(const BernoulliConfig& cfg, const VerifyOptions& options) {
  const std::size_t n = std::max<std::size_t>(options.samples, 8);
  const double c = cfg.c();
  const double c2 = c * c;
  const double c4 = c2 * c2;
  const Point o = cfg.center();
  const PolynomialLemniscate lem = cfg.lemniscate();
  const EquilateralHyperbola hyp(cfg.f1(), cfg.f2());
  std::vector<CheckResult> out;

  {
    Tracker t("defining_relation", 1e-10);
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = sample(-pi / 4, pi / 4, k / 2, (n + 1) / 2) + (k % 2 ? pi : 0.0);
      const Point x = bernoulli_polar_point(cfg, theta);
      t.add(std::abs(distance(x, cfg.f1()) * distance(x, cfg.f2()) / c2 - 1.0));
    }
    out.push_back(t.result());
  }

  {
    Tracker field("three_bar_field", 1e-8);
    Tracker trapezoid("isosceles_trapezoid", 1e-9);
    Tracker pq("hyperbola_p_q", 1e-8);
    Tracker product("inversion_product", 1e-8);
    Tracker ray("q_on_ray_ox", 1e-8);
    Tracker same("same_side_circle", 1e-8);
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = sample(0.0, 2.0 * pi, k, n);
      const ThreeBarState s = three_bar_solve(cfg, theta, Branch::Opposite);
      field.add(std::abs(lemniscate_field(lem, s.x)) / c4);
      trapezoid.add(trapezoid_residual(cfg, s));
      if (s.p && s.q) {
        pq.add(std::max(std::abs(hyperbola_residual(hyp, *s.p)), std::abs(hyperbola_residual(hyp, *s.q))) / c);
        const double ox = distance(o, s.x);
        const double oq = distance(o, *s.q);
        product.add(std::abs(ox * oq / c2 - 1.0));
        const double side = cross(s.x - o, *s.q - o) / (ox * oq);
        ray.add(dot(s.x - o, *s.q - o) > 0.0 ? std::abs(side) : INFINITY);
      }
      const ThreeBarState parallel = three_bar_solve(cfg, theta, Branch::Same);
      same.add(std::abs(distance(o, parallel.x) / c - sqrt2));
    }
    for (const Tracker* t : {&field, &trapezoid, &pq, &product, &ray, &same}) out.push_back(t->result());
  }

  {
    // Hyperbola points pulled back through the inversion.
    Tracker t("hyperbola_to_lemniscate", 1e-8);
    const std::size_t m = std::max<std::size_t>(n / 10, 4);
    const Vec2 u = hyp.axis();
    const double a = hyp.semi_axis();
    for (std::size_t k = 0; k < m; ++k) {
      const double tau = sample(-4.0, 4.0, k / 2, (m + 1) / 2);
      const double branch = k % 2 ? -1.0 : 1.0;
      const Point q = hyp.center() + u * (branch * a * std::cosh(tau)) + perp(u) * (a * std::sinh(tau));
      t.add(std::abs(lemniscate_field(lem, invert_between(cfg, q))) / c4);
    }
    out.push_back(t.result());
  }

  {
    Tracker t("maclaurin_field", 1e-8);
    for (std::size_t k = 0; k < n; ++k) {
      const MaclaurinSample m = maclaurin_sample(cfg, sample(-pi / 4, pi / 4, k, n));
      t.add(std::max(std::abs(lemniscate_field(lem, m.x)), std::abs(lemniscate_field(lem, m.x_prime))) / c4);
    }
    out.push_back(t.result());
  }

  {
    Tracker t("right_angle_field", 1e-8);
    for (std::size_t k = 0; k < n; ++k) {
      const RightAngleState s = right_angle_solve(cfg, sample(-pi / 2, pi / 2, k, n));
      t.add(std::max(std::abs(lemniscate_field(lem, s.x)), std::abs(lemniscate_field(lem, s.y))) / c4);
    }
    out.push_back(t.result());
  }

  {
    Tracker t("tangent_circle_cross", 1e-8);
    const std::size_t m = std::max<std::size_t>(n / 10, 4);
    for (std::size_t k = 0; k < m; ++k) {
      const ThreeBarState s = three_bar_solve(cfg, sample(0.0, 2.0 * pi, k, m), Branch::Opposite);
      if (!s.p) continue;
      const Circle circle = tangent_circle_at(s);
      t.add(std::abs(cross(normalized(s.x - circle.center()), normalized(lemniscate_gradient(lem, s.x)))));
    }
    out.push_back(t.result());
  }

  {
    Tracker t("normal_angle", 1e-8);
    const std::size_t m = std::max<std::size_t>(n / 10, 4);
    for (std::size_t k = 0; k < m; ++k) {
      const double theta = sample(-pi / 4, pi / 4, k / 2, (m + 1) / 2) + (k % 2 ? pi : 0.0);
      const Point x = bernoulli_polar_point(cfg, theta);
      const Line normal = normal_by_angle(cfg, x);
      t.add(line_angle_between(normal.direction(), lemniscate_gradient(lem, x)));
    }
    out.push_back(t.result());
  }

  {
    Tracker t("lemma1_line_inversion", 1e-9);
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    const std::size_t m = std::max<std::size_t>(n / 10, 4);
    for (std::size_t k = 0; k < m; ++k) {
      const InversionMap map({coord(rng), coord(rng)}, radius(rng));
      const Line l({coord(rng), coord(rng)}, unit(angle(rng)));
      if (std::abs(l.signed_distance(map.center())) < 0.05) continue;
      const Circle image = invert_line(map, l);
      const double scale = image.radius();
      for (int j = 0; j < 50; ++j) {
        const Point p = invert_point(map, l.at(-10.0 + 20.0 * j / 49.0));
        t.add(std::abs(distance(p, image.center()) - image.radius()) / scale);
      }
      const Point predicted = invert_point(map, reflect_across_line(l, map.center()));
      t.add(distance(predicted, image.center()) / scale);
    }
    out.push_back(t.result());
  }

  {
    Tracker t("coefficient_expansion", 1e-9);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> focus(-2.0, 2.0);
    std::uniform_real_distribution<double> point(-3.0, 3.0);
    for (std::size_t count : {1u, 2u, 3u, 5u}) {
      std::vector<Point> foci;
      for (std::size_t k = 0; k < count; ++k) foci.push_back({focus(rng), focus(rng)});
      const PolynomialLemniscate poly(foci, 1.0);
      const CoefficientTable table = expand_coefficients(poly);
      t.add(table.effective_degree() == 2 * count ? 0.0 : INFINITY);
      for (int k = 0; k < 100; ++k) {
        const Point p{point(rng), point(rng)};
        const double product = lemniscate_field(poly, p) + poly.level();
        t.add(std::abs(table.evaluate(p) - lemniscate_field(poly, p)) /
              std::max({1.0, product, poly.level()}));
      }
    }
    out.push_back(t.result());
  }

  {
    Tracker t("unit_hyperbola", 1e-9);
    const auto [f1, f2] = unit_hyperbola_foci();
    const EquilateralHyperbola unit_hyp(f1, f2);
    for (int k = 0; k < 100; ++k) {
      const double x = 0.1 + 9.9 * k / 99.0;
      t.add(std::abs(hyperbola_residual(unit_hyp, {x, 1.0 / x})));
    }
    out.push_back(t.result());
  }

  {
    Tracker t("traced_area", 1e-3);
    TraceWindow w = default_bernoulli_window(cfg, options.grid);
    double area = 0.0;
    for (const Contour& contour : trace(lem, w, {options.threads})) {
      if (contour.closed) area += contour_area(contour);
    }
    t.add(std::abs(area / bernoulli_area(cfg) - 1.0));
    out.push_back(t.result());
  }
  return out;
}

}  // namespace lemni
