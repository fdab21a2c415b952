#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <utility>
#include <vector>

namespace ngwp {

using Index = Eigen::Index;

struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 1.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Undirected, weighted, simple, connected graph. Node indices are 0-based.
/// Validated on construction and immutable afterwards.
class Graph {
 public:
  Graph(Index n_nodes, std::vector<Edge> edges, std::vector<Point2> coords = {});

  Index num_nodes() const { return n_nodes_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_coords() const { return !coords_.empty(); }
  const std::vector<Point2>& coords() const { return coords_; }

  /// Dense symmetric weight matrix W.
  Eigen::MatrixXd weight_matrix() const;
  /// Weighted degrees, D_ii = sum_j W_ij.
  Eigen::VectorXd degrees() const;

 private:
  Index n_nodes_;
  std::vector<Edge> edges_;
  std::vector<Point2> coords_;
};

enum class LaplacianKind { Unnormalized, RandomWalk, Symmetric };

/// D - W, D^-1 L or D^-1/2 L D^-1/2 of a dense symmetric weight matrix.
Eigen::MatrixXd build_laplacian(const Eigen::MatrixXd& weights, LaplacianKind kind);
Eigen::MatrixXd build_laplacian(const Graph& g, LaplacianKind kind);

/// Oriented incidence matrix Q (N x M) with Q Q^T = L.
struct IncidenceMatrix {
  Eigen::SparseMatrix<double> q;
  /// (head, tail) per edge column; the head carries -sqrt(w).
  std::vector<std::pair<Index, Index>> orientation;

  Index num_nodes() const { return q.rows(); }
  Index num_edges() const { return q.cols(); }
};

/// Default orientation: the smaller node index of each edge is the head.
IncidenceMatrix build_incidence(const Graph& g);
/// Same, with edge k reversed wherever flip[k] is true.
IncidenceMatrix build_incidence(const Graph& g, const std::vector<bool>& flip);

/// Flips every column so that its largest-magnitude entry is positive
/// (ties go to the lowest row index).
void apply_sign_convention(Eigen::MatrixXd& vectors);
void apply_sign_convention(Eigen::Ref<Eigen::VectorXd> v);

struct Bipartition {
  std::vector<Index> left;
  std::vector<Index> right;
};

/// Splits by the sign of the Fiedler vector of L_rw. Nonpositive entries go
/// left; an all-one-sign vector is split at its median instead.
Bipartition fiedler_bipartition(const Eigen::MatrixXd& weights);
Bipartition fiedler_bipartition(const Graph& g);

/// True when the weight matrix describes a connected graph.
bool is_connected(const Eigen::MatrixXd& weights);

/// Sizes of the connected components of an edge list over n nodes.
std::vector<Index> component_sizes(Index n_nodes, const std::vector<Edge>& edges);

}  // namespace ngwp
