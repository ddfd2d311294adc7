// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Canonical configuration is foci (+-1, 0) unless noted.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lemni/cli.hpp"
#include "lemni/constructions.hpp"
#include "lemni/tracer.hpp"
#include "oracles.hpp"

namespace {

using namespace lemni;
using std::numbers::pi;
using std::numbers::sqrt2;

const BernoulliConfig kCfg({-1.0, 0.0}, {1.0, 0.0});
constexpr int kSweep = 10000;

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Collects named maxima against their thresholds.
class Report {
 public:
  void max(const std::string& name, double value, double threshold) {
    std::ostringstream ss;
    ss << name << "=" << value << " (<= " << threshold << ")";
    add(ss.str(), value <= threshold);
  }
  void min(const std::string& name, double value, double threshold) {
    std::ostringstream ss;
    ss << name << "=" << value << " (>= " << threshold << ")";
    add(ss.str(), value >= threshold);
  }
  void check(const std::string& name, bool ok) { add(name + (ok ? " ok" : " violated"), ok); }
  Outcome outcome() const { return out_; }

 private:
  void add(const std::string& text, bool ok) {
    if (!out_.detail.empty()) out_.detail += "; ";
    out_.detail += text;
    out_.passed = out_.passed && ok;
  }
  Outcome out_;
};

double field(Point p) { return oracle::product_field({kCfg.f1(), kCfg.f2()}, 1.0, p); }

double midpoint_grid(double lo, double hi, int k, int n) { return lo + (hi - lo) * (k + 0.5) / n; }

double lobe_angle(int k, int n) { return midpoint_grid(-pi / 4, pi / 4, k / 2, (n + 1) / 2) + (k % 2 ? pi : 0.0); }

double traced_area(int grid) {
  const TraceWindow w{-1.6, 1.6, -0.8, 0.8, grid, grid};
  double sum = 0.0;
  for (const Contour& c : trace(kCfg.lemniscate(), w)) sum += contour_area(c);
  return sum;
}

Outcome defining_relation() {
  double worst = 0.0;
  for (int k = 0; k < kSweep; ++k) {
    const Point x = bernoulli_polar_point(kCfg, lobe_angle(k, kSweep));
    worst = std::max(worst, std::abs(distance(x, kCfg.f1()) * distance(x, kCfg.f2()) - 1.0));
  }
  Report r;
  r.max("max|product-1|", worst, 1e-10);
  return r.outcome();
}

Outcome area() {
  const double e512 = std::abs(traced_area(512) / 2.0 - 1.0);
  const double e1024 = std::abs(traced_area(1024) / 2.0 - 1.0);
  Report r;
  r.max("rel_err@512", e512, 1e-3);
  r.max("rel_err@1024", e1024, 3e-4);
  r.check("monotone", e1024 <= e512);
  return r.outcome();
}

Outcome construction_sweep() {
  double worst_field = 0.0;
  double worst_trapezoid = 0.0;
  for (int k = 0; k < kSweep; ++k) {
    const auto s = three_bar_solve(kCfg, midpoint_grid(0, 2 * pi, k, kSweep), Branch::Opposite);
    worst_field = std::max(worst_field, std::abs(field(s.x)));
    // Isosceles trapezoid F1 A F2 B: parallel bases A F2 and F1 B, equal legs
    // F1 A and F2 B, equal diagonals F1 F2 and A B.
    const double parallel = std::abs(cross(normalized(kCfg.f2() - s.a), normalized(s.b - kCfg.f1())));
    const double legs = std::abs(distance(kCfg.f1(), s.a) - distance(kCfg.f2(), s.b));
    const double diagonals = std::abs(distance(kCfg.f1(), kCfg.f2()) - distance(s.a, s.b));
    worst_trapezoid = std::max({worst_trapezoid, parallel, legs, diagonals});
  }
  const auto pinned = three_bar_solve(kCfg, pi / 2, Branch::Opposite);
  Report r;
  r.max("field", worst_field, 1e-8);
  r.max("trapezoid", worst_trapezoid, 1e-9);
  r.max("|X(pi/2)-(-2/3,sqrt2/3)|", distance(pinned.x, {-2.0 / 3.0, sqrt2 / 3.0}), 1e-12);
  return r.outcome();
}

Outcome inversion_theorem() {
  const EquilateralHyperbola hyp(kCfg.f1(), kCfg.f2());
  double worst_product = 0.0;
  double worst_hyperbola = 0.0;
  bool on_ray = true;
  for (int k = 0; k < kSweep; ++k) {
    const auto s = three_bar_solve(kCfg, midpoint_grid(0, 2 * pi, k, kSweep), Branch::Opposite);
    if (!s.q) continue;
    worst_product = std::max(worst_product, std::abs(norm(s.x) * norm(*s.q) - 1.0));
    worst_hyperbola = std::max(worst_hyperbola, std::abs(hyperbola_residual(hyp, *s.q)));
    on_ray = on_ray && dot(s.x, *s.q) > 0.0;
  }
  // Inverse direction: points of x^2 - y^2 = 1/2 map onto the lemniscate.
  double worst_inverse = 0.0;
  const double a = 1.0 / sqrt2;
  for (int k = 0; k < 1000; ++k) {
    const double tau = midpoint_grid(-4, 4, k / 2, 500);
    const Point q{(k % 2 ? -a : a) * std::cosh(tau), a * std::sinh(tau)};
    worst_inverse = std::max(worst_inverse, std::abs(field(invert_between(kCfg, q))));
  }
  Report r;
  r.max("||OX||OQ|-1|", worst_product, 1e-8);
  r.max("hyperbola(Q)", worst_hyperbola, 1e-8);
  r.check("Q on ray OX", on_ray);
  r.max("field(inverted hyperbola)", worst_inverse, 1e-8);
  return r.outcome();
}

Outcome maclaurin() {
  double worst = 0.0;
  for (int k = 0; k < kSweep; ++k) {
    const auto m = maclaurin_sample(kCfg, midpoint_grid(-pi / 4, pi / 4, k, kSweep));
    worst = std::max({worst, std::abs(field(m.x)), std::abs(field(m.x_prime))});
  }
  const auto axis = maclaurin_sample(kCfg, 0.0);
  const double vertex_err = std::max(distance(axis.x, {-sqrt2, 0}), distance(axis.x_prime, {sqrt2, 0}));
  Report r;
  r.max("field", worst, 1e-8);
  r.max("axis vertices", vertex_err, 1e-12);
  return r.outcome();
}

Outcome right_angle() {
  double worst = 0.0;
  bool disjoint = true;
  for (int k = 0; k < kSweep; ++k) {
    const auto s = right_angle_solve(kCfg, midpoint_grid(-pi / 2, pi / 2, k, kSweep));
    worst = std::max({worst, std::abs(field(s.x)), std::abs(field(s.y))});
    disjoint = disjoint && s.x.x > 0.0 && s.y.x < 0.0;
  }
  const auto pinned = right_angle_solve(kCfg, pi / 3);
  Report r;
  r.max("field", worst, 1e-8);
  r.max("|X(pi/3)-(sqrt3/2,1/2)|", distance(pinned.x, {std::sqrt(3.0) / 2.0, 0.5}), 1e-12);
  r.check("X and Y in disjoint lobes", disjoint);
  return r.outcome();
}

Outcome tangent_circle() {
  const auto lem = kCfg.lemniscate();
  double worst_cross = 0.0;
  double worst_slope = INFINITY;
  double worst_theta = 0.0;
  double worst_ox = 0.0;
  double separated_slope = INFINITY;  // states with |OX| >= 10 * max offset
  const std::vector<double> offsets{1e-2, 1e-3, 1e-4};
  for (int k = 0; k < 1000; ++k) {
    const double theta = midpoint_grid(0, 2 * pi, k, 1000);
    const auto s = three_bar_solve(kCfg, theta, Branch::Opposite);
    if (!s.p) continue;
    const Circle circle = tangent_circle_at(s);
    worst_cross = std::max(
        worst_cross, std::abs(cross(normalized(s.x - circle.center()), normalized(lemniscate_gradient(lem, s.x)))));
    // Field along the circle at arc offsets s from X on both sides.
    const Vec2 radial = s.x - circle.center();
    for (double sign : {-1.0, 1.0}) {
      std::vector<double> values;
      for (double ds : offsets) {
        const Point p = circle.center() + rotated(radial, sign * ds / circle.radius());
        values.push_back(std::abs(field(p)));
      }
      const double slope = oracle::loglog_slope(offsets, values);
      if (slope < worst_slope) {
        worst_slope = slope;
        worst_theta = theta;
        worst_ox = norm(s.x);
      }
      if (norm(s.x) >= 10 * offsets.front()) separated_slope = std::min(separated_slope, slope);
    }
  }
  Report r;
  r.max("radius x gradient", worst_cross, 1e-8);
  r.min("min contact slope", worst_slope, 1.9);
  std::ostringstream info;
  info << "worst at theta=" << worst_theta << " |OX|=" << worst_ox
       << ", min slope over |OX|>=0.1 is " << separated_slope << " [informational]";
  r.check(info.str(), true);
  return r.outcome();
}

Outcome normal() {
  const auto lem = kCfg.lemniscate();
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Point x = bernoulli_polar_point(kCfg, lobe_angle(k, 1000));
    const Line n = normal_by_angle(kCfg, x);
    worst = std::max(worst, std::asin(std::min(1.0, std::abs(cross(n.direction(), normalized(lemniscate_gradient(lem, x)))))));
  }
  Report r;
  r.max("deviation rad", worst, 1e-8);
  return r.outcome();
}

Outcome lemma1() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> coord(-3, 3);
  std::uniform_real_distribution<double> radius(0.3, 3);
  std::uniform_real_distribution<double> angle(0, 2 * pi);
  double worst_sample = 0.0;
  double worst_center = 0.0;
  int pairs = 0;
  while (pairs < 1000) {
    const Point center{coord(rng), coord(rng)};
    const double r = radius(rng);
    const Line l({coord(rng), coord(rng)}, unit(angle(rng)));
    if (std::abs(l.signed_distance(center)) < 0.05) continue;
    ++pairs;
    const InversionMap map(center, r);
    const Circle image = invert_line(map, l);
    for (int j = 0; j < 50; ++j) {
      const Point q = oracle::invert_by_definition(center, r, l.at(-10 + 20.0 * j / 49));
      worst_sample = std::max(worst_sample, std::abs(distance(q, image.center()) - image.radius()));
    }
    // Center of the image: inversion of the reflection of the center in l.
    const Point foot = l.foot_of(center);
    const Point reflected = foot * 2.0 - center;
    worst_center = std::max(worst_center,
                            distance(oracle::invert_by_definition(center, r, reflected), image.center()));
  }
  Report r;
  r.max("samples off circle", worst_sample, 1e-9);
  r.max("center mismatch", worst_center, 1e-9);
  return r.outcome();
}

Outcome coefficients() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> coord(-2, 2);
  std::uniform_real_distribution<double> point(-3, 3);
  double worst = 0.0;
  bool degree_ok = true;
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    std::vector<Point> foci;
    for (std::size_t k = 0; k < n; ++k) foci.push_back({coord(rng), coord(rng)});
    const PolynomialLemniscate lem(foci, 1.0);
    const CoefficientTable table = expand_coefficients(lem);
    degree_ok = degree_ok && table.degree() == 2 * n && table.effective_degree() == 2 * n;
    for (int k = 0; k < 100; ++k) {
      const Point p{point(rng), point(rng)};
      const double expected = oracle::product_field(foci, 1.0, p);
      worst = std::max(worst, std::abs(table.evaluate(p) - expected) / std::max(1.0, expected + 1.0));
    }
  }
  Report r;
  r.max("relative mismatch", worst, 1e-9);
  r.check("degree 2n", degree_ok);
  return r.outcome();
}

Outcome unit_hyperbola() {
  const auto [f1, f2] = unit_hyperbola_foci();
  const EquilateralHyperbola hyp(f1, f2);
  double worst_residual = 0.0;
  double worst_midpoint = 0.0;
  const Line x_axis({0, 0}, {1, 0});
  const Line y_axis({0, 0}, {0, 1});
  for (int k = 0; k < 100; ++k) {
    const double t = 0.1 + 9.9 * k / 99.0;
    const Point q{t, 1.0 / t};
    worst_residual = std::max(worst_residual, std::abs(hyperbola_residual(hyp, q)));
    // The tangent at Q cuts the asymptotes in R and S with Q = midpoint(R, S).
    const Line tangent = hyperbola_tangent_at(hyp, q);
    const auto rp = line_line_intersection(tangent, x_axis);
    const auto sp = line_line_intersection(tangent, y_axis);
    worst_midpoint = std::max(worst_midpoint, rp && sp ? distance(midpoint(*rp, *sp), q) : INFINITY);
  }
  Report r;
  r.max("residual", worst_residual, 1e-9);
  r.max("|Q-mid(R,S)|", worst_midpoint, 1e-12);
  return r.outcome();
}

Outcome same_side() {
  double worst = 0.0;
  for (int k = 0; k < kSweep; ++k) {
    const auto s = three_bar_solve(kCfg, midpoint_grid(0, 2 * pi, k, kSweep), Branch::Same);
    worst = std::max(worst, std::abs(norm(s.x) - sqrt2));
  }
  Report r;
  r.max("||OX|-sqrt2| (conjectured circle locus)", worst, 1e-8);
  return r.outcome();
}

std::string capture(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  std::vector<std::string> argv{"lemni"};
  argv.insert(argv.end(), args.begin(), args.end());
  code = run_cli(argv, out, err);
  return out.str();
}

Outcome determinism() {
  Report r;
  const std::vector<std::vector<std::string>> commands{
      {"trace"},
      {"trace", "--format", "svg"},
      {"trace", "--foci", "1,0,-0.5,0.866025403784,-0.5,-0.866025403784", "--radius", "1.05",
       "--window", "-2,2,-2,2"},
      {"figure", "--preset", "family3"},
      {"figure", "--preset", "threebar"},
      {"figure", "--preset", "inversion"},
      {"figure", "--preset", "rightangle"},
  };
  for (const auto& command : commands) {
    std::string label;
    for (const auto& part : command) label += (label.empty() ? "" : " ") + part;
    std::vector<std::string> outputs;
    bool ok = true;
    for (const char* threads : {"1", "1", "4", "4"}) {
      auto args = command;
      args.push_back("--threads");
      args.push_back(threads);
      int code = 0;
      outputs.push_back(capture(args, code));
      ok = ok && code == kExitOk && !outputs.back().empty();
    }
    for (const auto& o : outputs) ok = ok && o == outputs.front();
    r.check("'" + label + "' identical", ok);
  }
  return r.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"defining relation", defining_relation},
      {"area", area},
      {"three-stick sweep", construction_sweep},
      {"inversion theorem", inversion_theorem},
      {"secant construction", maclaurin},
      {"right-angle linkage", right_angle},
      {"tangent circle", tangent_circle},
      {"normal by angle doubling", normal},
      {"line inversion", lemma1},
      {"coefficient expansion", coefficients},
      {"y = 1/x", unit_hyperbola},
      {"same-side locus", same_side},
      {"determinism", determinism},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.passed ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria failed (%.2f s)\n", failures, criteria.size(), seconds);
  return failures == 0 ? 0 : 1;
}
