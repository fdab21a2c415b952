#include "ngwp/dual_geometry.hpp"

#include "ngwp/error.hpp"
#include "ngwp/parallel.hpp"

#include <algorithm>
#include <string>

namespace ngwp {

Eigen::VectorXd abs_gradient(const IncidenceMatrix& q, const Eigen::VectorXd& phi) {
  if (phi.size() != q.num_nodes()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector length " + std::to_string(phi.size()) + " does not match " +
                    std::to_string(q.num_nodes()) + " graph nodes");
  }
  return (q.q.transpose() * phi).cwiseAbs();
}

Eigen::MatrixXd abs_gradient_features(const IncidenceMatrix& q, const Eigen::MatrixXd& phi) {
  if (phi.rows() != q.num_nodes()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvector rows do not match graph nodes");
  }
  return (q.q.transpose() * phi).cwiseAbs();
}

double dag_distance(const IncidenceMatrix& q, const Eigen::VectorXd& phi_i,
                    const Eigen::VectorXd& phi_j) {
  return (abs_gradient(q, phi_i) - abs_gradient(q, phi_j)).norm();
}

Eigen::MatrixXd dag_distance_matrix(const EigenSystem& es, const IncidenceMatrix& q) {
  const Eigen::MatrixXd features = abs_gradient_features(q, es.vectors);
  const Index n = features.cols();
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t col) {
    const auto i = static_cast<Index>(col);
    for (Index j = i + 1; j < n; ++j) {
      dist(j, i) = (features.col(i) - features.col(j)).norm();
    }
  });
  dist.triangularView<Eigen::StrictlyUpper>() = dist.transpose();
  return dist;
}

DualGraph build_dual_graph(const Eigen::MatrixXd& dist) {
  if (dist.rows() != dist.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "distance matrix must be square");
  }
  const Index n = dist.rows();
  DualGraph dual{dist, Eigen::MatrixXd::Zero(n, n)};
  const double scale = n > 1 ? dist.maxCoeff() : 0.0;
  const double coincident = kCoincidentDistance * scale;

  double max_weight = 0.0;
  bool degenerate = false;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) continue;
      if (dist(i, j) > coincident) {
        dual.weights(i, j) = 1.0 / dist(i, j);
        max_weight = std::max(max_weight, dual.weights(i, j));
      } else {
        degenerate = true;
      }
    }
  }
  if (degenerate) {
    const double capped = kCoincidentWeightFactor * (max_weight > 0.0 ? max_weight : 1.0);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        if (i != j && dist(i, j) <= coincident) dual.weights(i, j) = capped;
      }
    }
  }
  return dual;
}

DualGraph build_dual_graph(const EigenSystem& es, const IncidenceMatrix& q) {
  return build_dual_graph(dag_distance_matrix(es, q));
}

}  // namespace ngwp
