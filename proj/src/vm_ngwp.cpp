#include "ngwp/vm_ngwp.hpp"

#include "ngwp/error.hpp"
#include "ngwp/parallel.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace ngwp {

namespace {

constexpr double kOrthonormalTol = 1e-8;

double identity_defect(const Eigen::MatrixXd& gram) {
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& phi, const std::vector<Index>& idx) {
  Eigen::MatrixXd out(phi.rows(), static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Index>(c)) = phi.col(idx[c]);
  return out;
}

}  // namespace

double varimax_objective(const Eigen::MatrixXd& b) {
  return b.array().square().square().sum();
}

VarimaxResult varimax(const Eigen::MatrixXd& a, const VarimaxOptions& options) {
  const Index n = a.rows();
  const Index m = a.cols();
  if (m < 1 || m > n) {
    throw Error(ErrorCode::Precondition, "varimax needs 1 <= columns <= rows");
  }
  if (options.maxit < 1 || !(options.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "varimax needs maxit >= 1 and tol > 0");
  }
  if (identity_defect(a.transpose() * a) > kOrthonormalTol) {
    throw Error(ErrorCode::Precondition, "varimax input columns are not orthonormal");
  }

  VarimaxResult result;
  result.rotated = a;
  result.rotation = Eigen::MatrixXd::Identity(m, m);
  if (options.record_trace) result.objective.push_back(varimax_objective(a));

  const double scale = static_cast<double>(n);
  double nuclear = 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd;
  for (int it = 1; it <= options.maxit; ++it) {
    const double previous = nuclear;
    const Eigen::MatrixXd& b = result.rotated;
    // d/dR of sum (A R)^4, up to the factor 4/N. For orthonormal columns the
    // kurtosis-style gradient A^T (N B^3 - B diag(B^T B)) differs from it by
    // the current rotation only, which leaves the stationary points alone but
    // can overshoot; the convex fourth-moment gradient makes every step an
    // ascent step.
    const Eigen::MatrixXd gradient = a.transpose() * (scale * b.array().cube().matrix());
    svd.compute(gradient, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
      throw Error(ErrorCode::NumericalFailure, "SVD failed inside varimax");
    }
    result.rotation = svd.matrixU() * svd.matrixV().transpose();
    nuclear = svd.singularValues().sum();
    result.rotated = a * result.rotation;
    result.iterations = it;

    if (options.record_trace) {
      result.objective.push_back(varimax_objective(result.rotated));
      result.rotation_defect.push_back(
          identity_defect(result.rotation.transpose() * result.rotation));
    }
    if (nuclear == 0.0 || std::abs(nuclear - previous) / nuclear < options.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

Eigen::MatrixXd varimax_rotate(const Eigen::MatrixXd& a, int maxit, double tol) {
  return varimax(a, {maxit, tol, false}).rotated;
}

PacketDictionary build_vm_dictionary(const EigenSystem& es, const BipartitionTree& tree,
                                     const BuildParams& params) {
  if (tree.size() != es.size()) {
    throw Error(ErrorCode::DimensionMismatch, "tree and eigensystem sizes differ");
  }
  const auto& nodes = tree.nodes();
  std::vector<Eigen::MatrixXd> blocks(nodes.size());
  const VarimaxOptions options{params.maxit, params.tol, false};
  parallel_for(nodes.size(), [&](std::size_t i) {
    Eigen::MatrixXd block = columns(es.vectors, nodes[i].members);
    if (block.cols() > 1) block = varimax(block, options).rotated;
    blocks[i] = std::move(block);
  });
  return PacketDictionary(DictionaryKind::VM, tree, std::move(blocks), params);
}

}  // namespace ngwp
