#pragma once

#include "ngwp/dictionary.hpp"
#include "ngwp/partition_tree.hpp"
#include "ngwp/spectral.hpp"

#include <Eigen/Core>

#include <vector>

namespace ngwp {

struct VarimaxOptions {
  int maxit = 1000;
  double tol = 1e-12;
  /// Record the objective and rotation orthogonality after every iteration.
  bool record_trace = false;
};

struct VarimaxResult {
  Eigen::MatrixXd rotated;
  /// Orthogonal T with rotated = a * T.
  Eigen::MatrixXd rotation;
  int iterations = 0;
  bool converged = false;
  /// objective[0] is the input's objective, objective[i] the value after
  /// iteration i. Filled only with record_trace.
  std::vector<double> objective;
  /// max |T^T T - I| per iteration. Filled only with record_trace.
  std::vector<double> rotation_defect;
};

/// Sum of fourth powers of all entries.
double varimax_objective(const Eigen::MatrixXd& b);

/// Basic singular value varimax: repeatedly replaces the rotation with the
/// polar factor U V^T of the objective gradient until the nuclear norm of
/// the gradient settles. Throws ErrorCode::Precondition unless the columns
/// of `a` are orthonormal to 1e-8.
VarimaxResult varimax(const Eigen::MatrixXd& a, const VarimaxOptions& options = {});

Eigen::MatrixXd varimax_rotate(const Eigen::MatrixXd& a, int maxit = 1000, double tol = 1e-12);

/// One varimax-rotated block per tree node; singleton blocks are copied.
PacketDictionary build_vm_dictionary(const EigenSystem& es, const BipartitionTree& tree,
                                     const BuildParams& params = {});

}  // namespace ngwp
