#include "ngwp/best_basis.hpp"

#include "ngwp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ngwp {

CoefficientTable analyze(const PacketDictionary& dict, const Eigen::VectorXd& f) {
  if (f.size() != dict.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "signal length " + std::to_string(f.size()) + " does not match dictionary size " +
                    std::to_string(dict.dimension()));
  }
  CoefficientTable table;
  table.blocks.reserve(dict.blocks().size());
  for (const auto& b : dict.blocks()) table.blocks.push_back(b.transpose() * f);
  return table;
}

CostFunction::CostFunction(double p) : p_(p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "l^p cost needs 0 < p <= 1");
  }
}

double CostFunction::operator()(const Eigen::VectorXd& coeffs) const {
  if (p_ == 1.0) return coeffs.lpNorm<1>();
  return coeffs.array().abs().pow(p_).sum();
}

BasisSelection select_basis(const PacketDictionary& dict, std::vector<std::size_t> nodes) {
  const BipartitionTree& tree = dict.tree();
  const auto& tn = tree.nodes();
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<int> hits(static_cast<std::size_t>(dict.dimension()), 0);
  for (std::size_t i : nodes) {
    if (i >= tn.size()) throw Error(ErrorCode::NotFound, "selected node index out of range");
    for (Index m : tn[i].members) ++hits[m];
  }
  for (int h : hits) {
    if (h != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "selected nodes are not a disjoint cover of all indices");
    }
  }

  BasisSelection sel;
  sel.nodes = nodes;
  sel.basis.resize(dict.dimension(), dict.dimension());
  Index col = 0;
  for (std::size_t i : nodes) {
    const Eigen::MatrixXd& b = dict.block(i);
    sel.basis.middleCols(col, b.cols()) = b;
    col += b.cols();
    sel.node_ids.push_back(tn[i].id);
    for (Index c = 0; c < b.cols(); ++c) sel.labels.push_back({tn[i].id, c});
  }
  return sel;
}

BasisSelection select_basis(const PacketDictionary& dict, const std::vector<NodeId>& ids) {
  std::vector<std::size_t> nodes;
  for (const NodeId& id : ids) {
    const auto idx = dict.tree().find(id);
    if (!idx) {
      throw Error(ErrorCode::NotFound, "no tree node (" + std::to_string(id.level) + ", " +
                                           std::to_string(id.position) + ")");
    }
    nodes.push_back(*idx);
  }
  return select_basis(dict, std::move(nodes));
}

double selection_cost(const CoefficientTable& table, const std::vector<std::size_t>& nodes,
                      const CostFunction& cost) {
  double total = 0.0;
  for (std::size_t i : nodes) total += cost(table.blocks.at(i));
  return total;
}

std::vector<std::size_t> best_basis_nodes(const BipartitionTree& tree,
                                          const CoefficientTable& table,
                                          const CostFunction& cost) {
  const auto& nodes = tree.nodes();
  if (table.blocks.size() != nodes.size()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient table does not match the tree");
  }
  std::vector<double> best(nodes.size());
  std::vector<bool> keep(nodes.size(), true);
  // Children always sort after their parent, so a reverse sweep is bottom-up.
  for (std::size_t i = nodes.size(); i-- > 0;) {
    const double own = cost(table.blocks[i]);
    if (nodes[i].is_leaf()) {
      best[i] = own;
      continue;
    }
    const double children = best[*nodes[i].left] + best[*nodes[i].right];
    keep[i] = own <= children;
    best[i] = keep[i] ? own : children;
  }

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> pending{0};
  while (!pending.empty()) {
    const std::size_t i = pending.back();
    pending.pop_back();
    if (keep[i]) {
      chosen.push_back(i);
    } else {
      pending.push_back(*nodes[i].right);
      pending.push_back(*nodes[i].left);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

BasisSelection best_basis(const PacketDictionary& dict, const CoefficientTable& table,
                          const CostFunction& cost) {
  BasisSelection sel = select_basis(dict, best_basis_nodes(dict.tree(), table, cost));
  sel.cost = selection_cost(table, sel.nodes, cost);
  return sel;
}

BasisSelection shannon_wavelet_basis(const PacketDictionary& dict) {
  const auto& nodes = dict.tree().nodes();
  std::vector<std::size_t> chosen;
  std::size_t cur = 0;
  while (!nodes[cur].is_leaf()) {
    chosen.push_back(*nodes[cur].right);
    cur = *nodes[cur].left;
  }
  chosen.push_back(cur);
  return select_basis(dict, std::move(chosen));
}

BasisSelection leaf_basis(const PacketDictionary& dict) {
  return select_basis(dict, dict.tree().leaves());
}

Eigen::VectorXd coefficients(const BasisSelection& sel, const Eigen::VectorXd& f) {
  if (f.size() != sel.basis.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "signal length does not match basis");
  }
  return sel.basis.transpose() * f;
}

Eigen::VectorXd reconstruct(const BasisSelection& sel, const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != sel.basis.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient length does not match basis");
  }
  return sel.basis * coeffs;
}

}  // namespace ngwp
