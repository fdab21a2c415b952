#include "ngwp/datasets.hpp"

#include "delaunay.hpp"
#include "ngwp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace ngwp {

namespace {

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void require_coords(const Graph& g) {
  if (!g.has_coords()) throw Error(ErrorCode::InvalidArgument, "graph has no node coordinates");
}

}  // namespace

Graph gen_path(Index n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "path graph needs n >= 2");
  std::vector<Edge> edges;
  std::vector<Point2> coords;
  for (Index i = 0; i < n; ++i) {
    coords.push_back({static_cast<double>(i), 0.0});
    if (i + 1 < n) edges.push_back({i, i + 1, 1.0});
  }
  return Graph(n, std::move(edges), std::move(coords));
}

Point2 sunflower_point(Index i, double scale) {
  // theta grows like i, so the angle is reduced in extended precision; in
  // double the rounding of i * 2 pi / phi^2 alone shifts outer nodes by ~1e-12.
  constexpr long double phi = std::numbers::phi_v<long double>;
  constexpr long double golden_angle = 2.0L * std::numbers::pi_v<long double> / (phi * phi);
  const long double theta =
      std::remainder(static_cast<long double>(i) * golden_angle, 2.0L * std::numbers::pi_v<long double>);
  const double r = scale * std::sqrt(static_cast<double>(i));
  return {r * static_cast<double>(std::cos(theta)), r * static_cast<double>(std::sin(theta))};
}

Graph gen_sunflower(const SunflowerSpec& spec) {
  if (spec.n_nodes < 13) throw Error(ErrorCode::InvalidArgument, "sunflower graph needs n >= 13");
  if (!(spec.scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "sunflower scale must be positive");
  std::vector<Point2> coords;
  coords.reserve(static_cast<std::size_t>(spec.n_nodes));
  for (Index i = 1; i <= spec.n_nodes; ++i) coords.push_back(sunflower_point(i, spec.scale));

  std::vector<Edge> edges;
  for (const auto& [a, b] : detail::delaunay_edges(coords)) {
    edges.push_back({a, b, 1.0 / distance(coords[a], coords[b])});
  }
  return Graph(spec.n_nodes, std::move(edges), std::move(coords));
}

Eigen::VectorXd sample_image(const Graph& g, const ImageGrid& img, const ImageWindow& window) {
  require_coords(g);
  if (img.rows < 1 || img.cols < 1 ||
      img.pixels.size() != static_cast<std::size_t>(img.rows * img.cols)) {
    throw Error(ErrorCode::InvalidArgument, "image grid is malformed");
  }
  const auto [lo, hi] = std::minmax_element(img.pixels.begin(), img.pixels.end());
  if (!std::isfinite(*lo) || !std::isfinite(*hi)) {
    throw Error(ErrorCode::InvalidArgument, "image has non-finite pixels");
  }

  const auto& pts = g.coords();
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Point2& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  auto unit = [](double v, double a, double b) { return b > a ? (v - a) / (b - a) : 0.5; };

  constexpr double slack = 1e-9;
  Eigen::VectorXd f(g.num_nodes());
  for (Index i = 0; i < g.num_nodes(); ++i) {
    const double c = window.col_min + unit(pts[i].x, xmin, xmax) * (window.col_max - window.col_min);
    const double r = window.row_min + unit(ymax - pts[i].y, 0.0, ymax - ymin) *
                                          (window.row_max - window.row_min);
    if (c < -slack || r < -slack || c > static_cast<double>(img.cols - 1) + slack ||
        r > static_cast<double>(img.rows - 1) + slack) {
      throw Error(ErrorCode::InvalidArgument,
                  "node " + std::to_string(i) + " maps outside the image");
    }
    const double cc = std::clamp(c, 0.0, static_cast<double>(img.cols - 1));
    const double rr = std::clamp(r, 0.0, static_cast<double>(img.rows - 1));
    const Index c0 = std::min<Index>(static_cast<Index>(std::floor(cc)), img.cols - 1);
    const Index r0 = std::min<Index>(static_cast<Index>(std::floor(rr)), img.rows - 1);
    const Index c1 = std::min<Index>(c0 + 1, img.cols - 1);
    const Index r1 = std::min<Index>(r0 + 1, img.rows - 1);
    const double tc = cc - static_cast<double>(c0);
    const double tr = rr - static_cast<double>(r0);
    const double top = (1.0 - tc) * img.at(r0, c0) + tc * img.at(r0, c1);
    const double bottom = (1.0 - tc) * img.at(r1, c0) + tc * img.at(r1, c1);
    f(i) = std::clamp((1.0 - tr) * top + tr * bottom, *lo, *hi);
  }
  return f;
}

Graph road_network(std::vector<Point2> coords, const std::vector<std::pair<Index, Index>>& links) {
  const auto n = static_cast<Index>(coords.size());
  std::set<std::pair<Index, Index>> seen;
  std::vector<Edge> edges;
  for (const auto& [a, b] : links) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw Error(ErrorCode::InvalidArgument,
                  "link (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");
    }
    if (a == b) continue;
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) continue;
    const double len = distance(coords[a], coords[b]);
    if (!(len > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "link (" + std::to_string(a) + ", " +
                                                  std::to_string(b) + ") has zero length");
    }
    edges.push_back({a, b, 1.0 / len});
  }
  return Graph(n, std::move(edges), std::move(coords));
}

double longest_edge_length(const Graph& g) {
  require_coords(g);
  double longest = 0.0;
  for (const Edge& e : g.edges()) {
    longest = std::max(longest, distance(g.coords()[e.i], g.coords()[e.j]));
  }
  return longest;
}

Eigen::VectorXd density_signal(const Graph& g, std::optional<double> radius) {
  require_coords(g);
  const double r = radius.value_or(longest_edge_length(g));
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be nonnegative");
  const auto& pts = g.coords();
  const double limit = r * (1.0 + 1e-12);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(g.num_nodes());
  for (Index i = 0; i < g.num_nodes(); ++i) {
    for (Index j = 0; j < g.num_nodes(); ++j) {
      if (distance(pts[i], pts[j]) <= limit) f(i) += 1.0;
    }
  }
  return f;
}

}  // namespace ngwp
