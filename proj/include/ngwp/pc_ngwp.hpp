#pragma once

#include "ngwp/dictionary.hpp"
#include "ngwp/partition_tree.hpp"
#include "ngwp/spectral.hpp"

#include <Eigen/Core>

#include <vector>

namespace ngwp {

/// alpha(V_k, V*_k): squared Frobenius norm of the sub-block of Phi with rows
/// `nodes` and columns `eigs`.
double affinity(const std::vector<Index>& nodes, const std::vector<Index>& eigs,
                const EigenSystem& es);

struct NodeSplit {
  std::vector<Index> left;
  std::vector<Index> right;
};

/// Two-way pair clustering: ranks every node of the pool by
/// alpha({l}, left) - alpha({l}, right) and gives the top |left| nodes to the
/// left cluster (ties to the smaller node index). Both outputs ascending.
NodeSplit pair_cluster_two(const std::vector<Index>& node_pool, const std::vector<Index>& eig_left,
                           const std::vector<Index>& eig_right, const EigenSystem& es);

/// Greedy K-way pair clustering: fills the clusters in the given order, each
/// time taking the remaining nodes with the largest affinity to that
/// cluster's eigenvectors. Returns one ascending node list per cluster.
std::vector<std::vector<Index>> pair_cluster(const std::vector<Index>& node_pool,
                                             const std::vector<std::vector<Index>>& eig_clusters,
                                             const EigenSystem& es);

/// Dual tree plus the graph-node set paired with each of its nodes.
struct PairedTree {
  BipartitionTree dual_tree;
  /// Aligned with dual_tree.nodes(); ascending node indices.
  std::vector<std::vector<Index>> node_sets;
};

PairedTree build_paired_tree(const EigenSystem& es, const BipartitionTree& dual_tree);

/// Modified Gram-Schmidt with l^p pivoting. Each step orthogonalizes the
/// remaining candidate of smallest l^p norm; candidates whose residual l2
/// norm falls below tol are dropped. Returns an N x r matrix, r = numerical
/// rank. Throws ErrorCode::InvalidArgument unless 0 < p < 2.
Eigen::MatrixXd mgslp(const Eigen::MatrixXd& vectors, double p = 1.0, double tol = 1e-12);

/// As mgslp, but the orthonormal columns of `basis` are kept first and the
/// candidates are orthogonalized against them.
Eigen::MatrixXd mgslp_extend(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& vectors,
                             double p = 1.0, double tol = 1e-12);

/// Projects each paired delta onto its node's eigenvector span and
/// orthonormalizes the projections with mgslp.
PacketDictionary build_pc_dictionary(const EigenSystem& es, const PairedTree& paired,
                                     const BuildParams& params = {});

}  // namespace ngwp
