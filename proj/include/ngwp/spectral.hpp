#pragma once

#include "ngwp/graph.hpp"

#include <Eigen/Core>

namespace ngwp {

/// Eigenpairs of the unnormalized Laplacian, eigenvalues ascending. Column k
/// of `vectors` pairs with `values(k)` and follows the sign convention.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  Index size() const { return values.size(); }
};

EigenSystem eigendecompose(const Graph& g);

/// Eigendecomposition of an arbitrary symmetric matrix with the same
/// ordering and sign convention.
EigenSystem eigendecompose_symmetric(const Eigen::MatrixXd& sym);

/// Graph Fourier transform, Phi^T f.
Eigen::VectorXd gft(const EigenSystem& es, const Eigen::VectorXd& f);
/// Inverse graph Fourier transform, Phi c.
Eigen::VectorXd igft(const EigenSystem& es, const Eigen::VectorXd& c);

}  // namespace ngwp
