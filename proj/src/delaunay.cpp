#include "delaunay.hpp"

#include "ngwp/error.hpp"

#include <boost/polygon/voronoi.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

namespace ngwp::detail {

namespace {

struct GridPoint {
  std::int32_t x;
  std::int32_t y;
};

}  // namespace

}  // namespace ngwp::detail

namespace boost::polygon {

template <>
struct geometry_concept<ngwp::detail::GridPoint> {
  using type = point_concept;
};

template <>
struct point_traits<ngwp::detail::GridPoint> {
  using coordinate_type = std::int32_t;
  static coordinate_type get(const ngwp::detail::GridPoint& p, orientation_2d orient) {
    return orient == HORIZONTAL ? p.x : p.y;
  }
};

}  // namespace boost::polygon

namespace ngwp::detail {

std::vector<std::pair<Index, Index>> delaunay_edges(const std::vector<Point2>& points) {
  if (points.size() < 2) return {};
  double xmin = points[0].x, xmax = points[0].x, ymin = points[0].y, ymax = points[0].y;
  for (const Point2& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double extent = std::max(xmax - xmin, ymax - ymin);
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw Error(ErrorCode::InvalidArgument, "triangulation needs distinct finite points");
  }
  const double scale = static_cast<double>(1 << 30) / extent;

  std::vector<GridPoint> grid;
  grid.reserve(points.size());
  std::set<std::pair<std::int32_t, std::int32_t>> occupied;
  for (const Point2& p : points) {
    const auto gx = static_cast<std::int32_t>(std::llround((p.x - xmin) * scale));
    const auto gy = static_cast<std::int32_t>(std::llround((p.y - ymin) * scale));
    if (!occupied.emplace(gx, gy).second) {
      throw Error(ErrorCode::InvalidArgument, "triangulation input has coincident points");
    }
    grid.push_back({gx, gy});
  }

  boost::polygon::voronoi_diagram<double> vd;
  boost::polygon::construct_voronoi(grid.begin(), grid.end(), &vd);

  std::vector<std::pair<Index, Index>> edges;
  for (const auto& e : vd.edges()) {
    const auto a = static_cast<Index>(e.cell()->source_index());
    const auto b = static_cast<Index>(e.twin()->cell()->source_index());
    if (a < b) edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace ngwp::detail
