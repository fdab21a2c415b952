#pragma once

#include "ngwp/dictionary.hpp"

#include <Eigen/Core>

#include <vector>

namespace ngwp {

/// Expansion coefficients Psi^T f of every block, aligned with tree nodes.
struct CoefficientTable {
  std::vector<Eigen::VectorXd> blocks;
};

CoefficientTable analyze(const PacketDictionary& dict, const Eigen::VectorXd& f);

/// Additive l^p cost sum |c|^p with 0 < p <= 1.
class CostFunction {
 public:
  explicit CostFunction(double p = 1.0);

  double p() const { return p_; }
  double operator()(const Eigen::VectorXd& coeffs) const;

 private:
  double p_;
};

struct ColumnLabel {
  NodeId node;
  Index column = 0;
};

/// An orthonormal basis assembled from an antichain of dictionary blocks
/// whose members cover every index exactly once.
struct BasisSelection {
  /// Tree node indices in (level, position) order.
  std::vector<std::size_t> nodes;
  std::vector<NodeId> node_ids;
  /// N x N; the blocks of `nodes` side by side.
  Eigen::MatrixXd basis;
  std::vector<ColumnLabel> labels;
  /// Total cost under the selecting cost function (0 for explicit picks).
  double cost = 0.0;
};

/// Validates the antichain cover and stacks the blocks.
BasisSelection select_basis(const PacketDictionary& dict, std::vector<std::size_t> nodes);
BasisSelection select_basis(const PacketDictionary& dict, const std::vector<NodeId>& ids);

/// Bottom-up best-basis search. A parent is kept when its cost is no larger
/// than the best total of its children. Returns the chosen node indices in
/// (level, position) order.
std::vector<std::size_t> best_basis_nodes(const BipartitionTree& tree,
                                          const CoefficientTable& table,
                                          const CostFunction& cost);

BasisSelection best_basis(const PacketDictionary& dict, const CoefficientTable& table,
                          const CostFunction& cost = CostFunction{});

/// Total cost of an antichain, summed over nodes in the given order.
double selection_cost(const CoefficientTable& table, const std::vector<std::size_t>& nodes,
                      const CostFunction& cost);

/// The graph Shannon wavelet basis: the odd child at every level along the
/// even-child spine from the root, plus the terminal even leaf.
BasisSelection shannon_wavelet_basis(const PacketDictionary& dict);

/// All singleton leaves; for a VM dictionary this is the eigenbasis.
BasisSelection leaf_basis(const PacketDictionary& dict);

Eigen::VectorXd coefficients(const BasisSelection& sel, const Eigen::VectorXd& f);
Eigen::VectorXd reconstruct(const BasisSelection& sel, const Eigen::VectorXd& coeffs);

}  // namespace ngwp
