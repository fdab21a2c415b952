#pragma once

#include "ngwp/graph.hpp"
#include "ngwp/spectral.hpp"

#include <Eigen/Core>

namespace ngwp {

/// |grad| phi = |Q^T phi|, one entry per edge.
Eigen::VectorXd abs_gradient(const IncidenceMatrix& q, const Eigen::VectorXd& phi);

/// Absolute-gradient features of every column of `phi`, as an M x N matrix.
Eigen::MatrixXd abs_gradient_features(const IncidenceMatrix& q, const Eigen::MatrixXd& phi);

/// DAG pseudometric || |grad| phi_i - |grad| phi_j ||_2.
double dag_distance(const IncidenceMatrix& q, const Eigen::VectorXd& phi_i,
                    const Eigen::VectorXd& phi_j);

/// All pairwise DAG distances between the eigenvectors of `es`.
Eigen::MatrixXd dag_distance_matrix(const EigenSystem& es, const IncidenceMatrix& q);

/// Complete graph on the eigenvector indices with weights 1/dist.
struct DualGraph {
  Eigen::MatrixXd dist;
  Eigen::MatrixXd weights;

  Index size() const { return dist.rows(); }
};

/// Distances at or below this fraction of the largest distance are treated
/// as coincident features.
inline constexpr double kCoincidentDistance = 1e-12;
/// Weight multiplier (over the largest finite weight) used for coincident pairs.
inline constexpr double kCoincidentWeightFactor = 1e12;

/// Builds the dual graph from any symmetric pseudometric matrix.
DualGraph build_dual_graph(const Eigen::MatrixXd& dist);

/// Builds the dual graph under the DAG pseudometric.
DualGraph build_dual_graph(const EigenSystem& es, const IncidenceMatrix& q);

}  // namespace ngwp
