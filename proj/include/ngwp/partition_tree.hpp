#pragma once

#include "ngwp/dual_geometry.hpp"
#include "ngwp/graph.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace ngwp {

/// Level and position of a tree node; the children of (j, k) are
/// (j + 1, 2k) and (j + 1, 2k + 1).
struct NodeId {
  int level = 0;
  std::int64_t position = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct TreeNode {
  NodeId id;
  /// Eigenvector indices, ascending.
  std::vector<Index> members;
  /// Indices into BipartitionTree::nodes(), absent for leaves.
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  std::optional<std::size_t> parent;

  bool is_leaf() const { return !left.has_value(); }
  Index size() const { return static_cast<Index>(members.size()); }
};

/// Binary tree of index sets. Nodes are stored in (level, position)
/// lexicographic order, so nodes()[0] is the root.
class BipartitionTree {
 public:
  /// Assembles and validates a tree from (id, members) records, e.g. when
  /// loading a dictionary file. Records may come in any order.
  static BipartitionTree from_records(std::vector<std::pair<NodeId, std::vector<Index>>> records);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  /// Throws ErrorCode::NotFound for a missing (j, k).
  const TreeNode& node(int level, std::int64_t position) const;
  std::optional<std::size_t> find(NodeId id) const;

  /// Number of indices at the root.
  Index size() const { return root().size(); }
  int max_level() const { return max_level_; }
  std::vector<std::size_t> leaves() const;

  /// True if node `a` is `b` or one of its ancestors.
  bool is_ancestor_or_self(std::size_t a, std::size_t b) const;

 private:
  void link_and_validate();

  std::vector<TreeNode> nodes_;
  std::map<NodeId, std::size_t> lookup_;
  int max_level_ = 0;
};

/// Recursive Fiedler bipartition of the dual graph down to singletons. The
/// part holding the smallest index becomes the even child.
BipartitionTree build_dual_tree(const DualGraph& dual);

/// Same recursion over an arbitrary symmetric nonnegative weight matrix.
BipartitionTree build_bipartition_tree(const Eigen::MatrixXd& weights);

}  // namespace ngwp
