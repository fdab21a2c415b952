#include "ngwp/spectral.hpp"

#include "ngwp/error.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace ngwp {

EigenSystem eigendecompose_symmetric(const Eigen::MatrixXd& sym) {
  if (sym.rows() != sym.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "eigendecomposition needs a square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "symmetric eigensolver did not converge");
  }
  // Eigen returns eigenvalues in increasing order already.
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  apply_sign_convention(es.vectors);
  return es;
}

EigenSystem eigendecompose(const Graph& g) {
  EigenSystem es = eigendecompose_symmetric(build_laplacian(g, LaplacianKind::Unnormalized));
  // The nullspace of a connected Laplacian is exactly the constant vector, so
  // lambda_0 is 0; round-off leaves it at +-1e-16 or so.
  es.values(0) = 0.0;
  return es;
}

namespace {

void check_length(const EigenSystem& es, Index n, const char* what) {
  if (n != es.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " length " + std::to_string(n) +
                    " does not match eigensystem size " + std::to_string(es.size()));
  }
}

}  // namespace

Eigen::VectorXd gft(const EigenSystem& es, const Eigen::VectorXd& f) {
  check_length(es, f.size(), "signal");
  return es.vectors.transpose() * f;
}

Eigen::VectorXd igft(const EigenSystem& es, const Eigen::VectorXd& c) {
  check_length(es, c.size(), "coefficient vector");
  return es.vectors * c;
}

}  // namespace ngwp
