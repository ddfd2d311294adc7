#include "lemni/tracer.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <thread>

#include "lemni/error.hpp"

namespace lemni {

namespace {

constexpr int kMaxNewtonSteps = 20;
constexpr double kSingularGradient = 1e-12;

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

class Grid {
 public:
  explicit Grid(const TraceWindow& w)
      : w_(w), nx_(static_cast<std::size_t>(w.nx)), ny_(static_cast<std::size_t>(w.ny)) {}

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t node_count() const { return (nx_ + 1) * (ny_ + 1); }
  std::size_t node_index(std::size_t i, std::size_t j) const { return j * (nx_ + 1) + i; }
  Point node(std::size_t i, std::size_t j) const {
    return {w_.xmin + (w_.xmax - w_.xmin) * static_cast<double>(i) / static_cast<double>(nx_),
            w_.ymin + (w_.ymax - w_.ymin) * static_cast<double>(j) / static_cast<double>(ny_)};
  }
  Point node(std::size_t index) const { return node(index % (nx_ + 1), index / (nx_ + 1)); }

  // Horizontal edges (i,j)-(i+1,j) come first, then vertical (i,j)-(i,j+1).
  std::size_t horizontal_count() const { return nx_ * (ny_ + 1); }
  std::size_t edge_count() const { return horizontal_count() + (nx_ + 1) * ny_; }
  std::size_t hedge(std::size_t i, std::size_t j) const { return j * nx_ + i; }
  std::size_t vedge(std::size_t i, std::size_t j) const {
    return horizontal_count() + j * (nx_ + 1) + i;
  }
  std::pair<std::size_t, std::size_t> edge_nodes(std::size_t e) const {
    if (e < horizontal_count()) {
      const std::size_t i = e % nx_;
      const std::size_t j = e / nx_;
      return {node_index(i, j), node_index(i + 1, j)};
    }
    const std::size_t k = e - horizontal_count();
    const std::size_t i = k % (nx_ + 1);
    const std::size_t j = k / (nx_ + 1);
    return {node_index(i, j), node_index(i, j + 1)};
  }

  std::optional<std::pair<std::size_t, std::size_t>> cell_of(Point p) const {
    if (!w_.contains(p)) return std::nullopt;
    const auto clamp_index = [](double v, std::size_t n) {
      return static_cast<std::size_t>(std::clamp(std::floor(v), 0.0, static_cast<double>(n - 1)));
    };
    return std::pair{clamp_index((p.x - w_.xmin) / w_.cell_width(), nx_),
                     clamp_index((p.y - w_.ymin) / w_.cell_height(), ny_)};
  }

 private:
  TraceWindow w_;
  std::size_t nx_;
  std::size_t ny_;
};

struct Segment {
  std::size_t from_edge;
  std::size_t to_edge;
  std::optional<Point> via;  // singular point the segment is routed through
};

// Newton when it stays near the seed, otherwise bisection on the bracketing edge.
Point refine_crossing(const PolynomialLemniscate& lem, Point pa, double fa, Point pb, double fb,
                      double reach) {
  if (fa == 0.0) return pa;
  if (fb == 0.0) return pb;
  const double t0 = fa / (fa - fb);
  const Point seed = pa + (pb - pa) * t0;
  try {
    const Point p = refine(lem, seed);
    if (distance(p, seed) <= reach) return p;
  } catch (const Error&) {
  }
  double lo = 0.0;
  double hi = 1.0;
  Point best = seed;
  double best_f = std::abs(lemniscate_field(lem, seed));
  for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const Point p = pa + (pb - pa) * mid;
    const double f = lemniscate_field(lem, p);
    if (std::abs(f) < best_f) {
      best = p;
      best_f = std::abs(f);
    }
    if (f == 0.0) break;
    if ((f < 0.0) == (fa < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

// Collapses every run of vertices within `radius` of `s` to `s` itself.
std::vector<Point> snap_runs(const std::vector<Point>& pts, bool closed, Point s, double radius) {
  const auto near = [&](Point p) { return distance(p, s) <= radius; };
  std::size_t start = 0;
  if (closed) {
    const auto it = std::find_if_not(pts.begin(), pts.end(), near);
    if (it == pts.end()) return pts;
    start = static_cast<std::size_t>(it - pts.begin());
  }
  std::vector<Point> out;
  out.reserve(pts.size());
  bool in_run = false;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Point p = pts[(start + k) % pts.size()];
    if (near(p)) {
      if (!in_run) out.push_back(s);
      in_run = true;
    } else {
      out.push_back(p);
      in_run = false;
    }
  }
  return out;
}

void drop_repeats(std::vector<Point>& pts, bool closed) {
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  while (closed && pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
}

// Splits a polyline at repeated visits of `s` so each lobe meeting there
// becomes its own closed contour.
std::vector<Contour> split_at(const Contour& c, Point s) {
  std::vector<std::size_t> hits;
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    if (c.points[k] == s) hits.push_back(k);
  }
  if (hits.size() < 2) return {c};
  std::vector<Contour> out;
  const auto loop = [&](std::size_t from, std::size_t to) {
    Contour piece;
    piece.closed = true;
    for (std::size_t k = from; k != to; k = (k + 1) % c.points.size()) {
      piece.points.push_back(c.points[k]);
    }
    out.push_back(std::move(piece));
  };
  for (std::size_t h = 0; h + 1 < hits.size(); ++h) loop(hits[h], hits[h + 1]);
  if (c.closed) {
    loop(hits.back(), hits.front());
  } else {
    Contour rest;
    rest.points.assign(c.points.begin(), c.points.begin() + static_cast<long>(hits.front()) + 1);
    rest.points.insert(rest.points.end(), c.points.begin() + static_cast<long>(hits.back()) + 1,
                       c.points.end());
    out.push_back(std::move(rest));
  }
  return out;
}

Point leftmost_lowest(const Contour& c) {
  return *std::min_element(c.points.begin(), c.points.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
}

}  // namespace

void TraceWindow::validate() const {
  if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) ||
      !std::isfinite(ymax) || !(xmax > xmin) || !(ymax > ymin)) {
    throw Error(ErrorCode::InvalidArgument, "trace window bounds must be finite and ordered");
  }
  if (nx < 8 || ny < 8) {
    throw Error(ErrorCode::InvalidArgument, "trace window needs at least 8 cells per axis");
  }
}

double TraceWindow::cell_diagonal() const noexcept {
  return std::hypot(cell_width(), cell_height());
}

bool TraceWindow::contains(Point p) const noexcept {
  return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
}

TraceWindow default_bernoulli_window(const BernoulliConfig& cfg, int grid) {
  const double vertex = std::numbers::sqrt2 * cfg.c();
  const Vec2 u = cfg.axis();
  const double hx = vertex * (1.6 * std::abs(u.x) + 0.8 * std::abs(u.y));
  const double hy = vertex * (1.6 * std::abs(u.y) + 0.8 * std::abs(u.x));
  const Point o = cfg.center();
  return {o.x - hx, o.x + hx, o.y - hy, o.y + hy, grid, grid};
}

double refine_tolerance(const PolynomialLemniscate& lem) noexcept {
  return 1e-12 * std::pow(lem.scale(), 2.0 * static_cast<double>(lem.focus_count()));
}

RefineReport refine_with_report(const PolynomialLemniscate& lem, Point p) {
  const double tol = refine_tolerance(lem);
  RefineReport report;
  double f = lemniscate_field(lem, p);
  report.residuals.push_back(std::abs(f));
  for (int step = 0;; ++step) {
    const Vec2 g = lemniscate_gradient(lem, p);
    if (norm(g) <= kSingularGradient) {
      throw Error(ErrorCode::SingularPoint, "gradient vanishes; Newton step undefined");
    }
    if (std::abs(f) <= tol) break;
    if (step == kMaxNewtonSteps) {
      throw Error(ErrorCode::NoConvergence, "Newton refinement did not converge in 20 steps");
    }
    p -= g * (f / norm2(g));
    f = lemniscate_field(lem, p);
    report.residuals.push_back(std::abs(f));
  }
  report.point = p;
  return report;
}

Point refine(const PolynomialLemniscate& lem, Point p) { return refine_with_report(lem, p).point; }

std::vector<Point> singular_points(const PolynomialLemniscate& lem) {
  using Complex = std::complex<double>;
  const auto foci = lem.foci();
  const std::size_t n = foci.size();
  if (n < 2) return {};

  // Monic coefficients of prod (z - F_k), lowest degree first.
  std::vector<Complex> poly{Complex(1.0)};
  for (Point f : foci) {
    const Complex root(f.x, f.y);
    std::vector<Complex> next(poly.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= root * poly[k];
    }
    poly = std::move(next);
  }
  // Critical points of |p| are the roots of p', i.e. eigenvalues of the
  // companion matrix of p' / n.
  const std::size_t m = n - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m),
                                                      static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const Complex coeff = poly[k + 1] * static_cast<double>(k + 1) / static_cast<double>(n);
    companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m - 1)) = -coeff;
    if (k > 0) companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);

  const double tol = 1e-10 * std::pow(lem.scale(), 2.0 * static_cast<double>(n));
  std::vector<Point> out;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const Complex z = solver.eigenvalues()[k];
    const Point w{z.real(), z.imag()};
    if (std::abs(lemniscate_field(lem, w)) > tol) continue;
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](Point q) { return distance(q, w) <= 1e-6 * lem.scale(); });
    if (!seen) out.push_back(w);
  }
  std::sort(out.begin(), out.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return out;
}

std::vector<Contour> trace(const PolynomialLemniscate& lem, const TraceWindow& window,
                           const TraceOptions& options) {
  window.validate();
  const Grid grid(window);
  const double reach = window.cell_diagonal();

  std::vector<double> field(grid.node_count());
  parallel_for(field.size(), options.threads,
               [&](std::size_t k) { field[k] = lemniscate_field(lem, grid.node(k)); });
  const auto inside = [&](std::size_t node) { return field[node] < 0.0; };

  // Edge crossings, refined onto the curve.
  std::vector<std::size_t> crossing_edges;
  for (std::size_t e = 0; e < grid.edge_count(); ++e) {
    const auto [a, b] = grid.edge_nodes(e);
    if (inside(a) != inside(b)) crossing_edges.push_back(e);
  }
  if (crossing_edges.empty()) {
    throw Error(ErrorCode::EmptyTrace, "field has no sign change inside the window");
  }
  std::vector<Point> crossing(grid.edge_count());
  parallel_for(crossing_edges.size(), options.threads, [&](std::size_t k) {
    const std::size_t e = crossing_edges[k];
    const auto [a, b] = grid.edge_nodes(e);
    crossing[e] = refine_crossing(lem, grid.node(a), field[a], grid.node(b), field[b], reach);
  });

  // Cells hosting a singular point route their crossings through it.
  const std::vector<Point> singular = singular_points(lem);
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Point>> singular_cells;
  for (Point s : singular) {
    if (auto cell = grid.cell_of(s)) singular_cells.push_back({*cell, s});
  }

  std::vector<Segment> segments;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const std::array<std::size_t, 4> corner{grid.node_index(i, j), grid.node_index(i + 1, j),
                                              grid.node_index(i + 1, j + 1),
                                              grid.node_index(i, j + 1)};
      const std::array<std::size_t, 4> edge{grid.hedge(i, j), grid.vedge(i + 1, j),
                                            grid.hedge(i, j + 1), grid.vedge(i, j)};
      std::array<bool, 4> in{};
      int count = 0;
      for (int k = 0; k < 4; ++k) {
        in[k] = inside(corner[k]);
        count += in[k] ? 1 : 0;
      }
      if (count == 0 || count == 4) continue;

      std::optional<Point> via;
      for (const auto& [cell, s] : singular_cells) {
        if (cell.first == i && cell.second == j) via = s;
      }

      // Edge k runs counter-clockwise from corner k to corner k+1; a segment
      // goes from the edge leaving the interior to the edge entering it.
      const bool saddle = count == 2 && in[0] == in[2];
      if (!saddle) {
        std::size_t leave = 0;
        std::size_t enter = 0;
        for (std::size_t k = 0; k < 4; ++k) {
          const bool a = in[k];
          const bool b = in[(k + 1) % 4];
          if (a && !b) leave = k;
          if (!a && b) enter = k;
        }
        segments.push_back({edge[leave], edge[enter], via});
        continue;
      }
      bool joined = false;
      if (!via) {
        const Point mid = midpoint(grid.node(i, j), grid.node(i + 1, j + 1));
        joined = lemniscate_field(lem, mid) < 0.0;
      }
      for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t prev = (k + 3) % 4;
        if (joined && !in[k]) segments.push_back({edge[prev], edge[k], via});
        if (!joined && in[k]) segments.push_back({edge[k], edge[prev], via});
      }
    }
  }

  std::vector<long> start_of(grid.edge_count(), -1);
  std::vector<bool> has_incoming(grid.edge_count(), false);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    start_of[segments[k].from_edge] = static_cast<long>(k);
    has_incoming[segments[k].to_edge] = true;
  }

  std::vector<bool> visited(segments.size(), false);
  std::vector<Contour> raw;
  const auto walk = [&](std::size_t first) {
    Contour c;
    std::size_t cur = first;
    while (true) {
      visited[cur] = true;
      const Segment& seg = segments[cur];
      c.points.push_back(crossing[seg.from_edge]);
      if (seg.via) c.points.push_back(*seg.via);
      const long next = start_of[seg.to_edge];
      if (next == static_cast<long>(first)) {
        c.closed = true;
        break;
      }
      if (next < 0 || visited[static_cast<std::size_t>(next)]) {
        c.points.push_back(crossing[seg.to_edge]);
        break;
      }
      cur = static_cast<std::size_t>(next);
    }
    raw.push_back(std::move(c));
  };
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (!visited[k] && !has_incoming[segments[k].from_edge]) walk(k);
  }
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (!visited[k]) walk(k);
  }

  std::vector<Contour> contours;
  for (Contour& c : raw) {
    std::vector<Contour> pieces{std::move(c)};
    for (const auto& entry : singular_cells) {
      const Point s = entry.second;
      std::vector<Contour> next;
      for (Contour& piece : pieces) {
        piece.points = snap_runs(piece.points, piece.closed, s, reach);
        drop_repeats(piece.points, piece.closed);
        for (Contour& part : split_at(piece, s)) next.push_back(std::move(part));
      }
      pieces = std::move(next);
    }
    for (Contour& piece : pieces) {
      drop_repeats(piece.points, piece.closed);
      if (piece.points.size() < (piece.closed ? 3u : 2u)) continue;
      for (Point p : piece.points) {
        piece.max_residual = std::max(piece.max_residual, std::abs(lemniscate_field(lem, p)));
      }
      contours.push_back(std::move(piece));
    }
  }
  if (contours.empty()) {
    throw Error(ErrorCode::EmptyTrace, "no contour survived assembly");
  }
  std::stable_sort(contours.begin(), contours.end(), [](const Contour& a, const Contour& b) {
    const Point pa = leftmost_lowest(a);
    const Point pb = leftmost_lowest(b);
    return pa.x < pb.x || (pa.x == pb.x && pa.y < pb.y);
  });
  return contours;
}

double signed_area(std::span<const Point> polygon) noexcept {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t k = 0; k < n; ++k) {
    twice += cross(polygon[k], polygon[(k + 1) % n]);
  }
  return 0.5 * twice;
}

double contour_area(const Contour& contour) {
  if (!contour.closed) {
    throw Error(ErrorCode::OpenContour, "area of an open contour is undefined");
  }
  return std::abs(signed_area(contour.points));
}

}  // namespace lemni
