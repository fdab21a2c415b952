#pragma once

#include "ngwp/graph.hpp"

#include <utility>
#include <vector>

namespace ngwp::detail {

/// Edges of the Delaunay triangulation of `points` as (i, j) with i < j,
/// sorted. Built as the dual of the Voronoi diagram of the points snapped to
/// a 2^30 integer grid; throws ErrorCode::InvalidArgument when two points
/// snap to the same grid cell.
std::vector<std::pair<Index, Index>> delaunay_edges(const std::vector<Point2>& points);

}  // namespace ngwp::detail
