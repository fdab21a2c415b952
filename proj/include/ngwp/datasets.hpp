#pragma once

#include "ngwp/graph.hpp"

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

namespace ngwp {

/// Unweighted path P_n with nodes at (i, 0).
Graph gen_path(Index n);

struct SunflowerSpec {
  Index n_nodes = 400;
  /// Radius of node i (1-based) is scale * sqrt(i).
  double scale = 1.0;
};

/// Golden-angle position of the i-th sunflower node (1-based):
/// r = scale * sqrt(i), theta = i * 2 pi / phi^2.
Point2 sunflower_point(Index i, double scale = 1.0);

/// Sunflower graph: Delaunay triangulation of the golden-angle spiral,
/// edge weights 1 / Euclidean length.
Graph gen_sunflower(const SunflowerSpec& spec = {});

/// Grayscale image, row-major, row 0 at the top.
struct ImageGrid {
  Index rows = 0;
  Index cols = 0;
  std::vector<double> pixels;

  double at(Index r, Index c) const { return pixels[static_cast<std::size_t>(r * cols + c)]; }
};

/// Rectangle in pixel coordinates (pixel centers at integers) onto which the
/// bounding box of the node coordinates is mapped. Larger y maps to smaller
/// row indices.
struct ImageWindow {
  double col_min = 0.0;
  double row_min = 0.0;
  double col_max = 0.0;
  double row_max = 0.0;
};

/// Bilinear interpolation of the image at every node position.
Eigen::VectorXd sample_image(const Graph& g, const ImageGrid& img, const ImageWindow& window);

/// Road network from node coordinates and undirected links (0-based).
/// Self-loops are dropped, repeated links keep their first occurrence and
/// weights are reciprocal Euclidean lengths. Throws ErrorCode::Disconnected
/// listing component sizes.
Graph road_network(std::vector<Point2> coords, const std::vector<std::pair<Index, Index>>& links);

/// Number of nodes within Euclidean distance `radius` of each node (self
/// included). The default radius is the longest edge length.
Eigen::VectorXd density_signal(const Graph& g, std::optional<double> radius = std::nullopt);

/// Longest Euclidean edge length.
double longest_edge_length(const Graph& g);

}  // namespace ngwp
