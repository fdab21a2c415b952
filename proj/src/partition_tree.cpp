#include "ngwp/partition_tree.hpp"

#include "ngwp/error.hpp"

#include <algorithm>
#include <string>

namespace ngwp {

namespace {

constexpr int kMaxDepth = 62;

std::string id_text(NodeId id) {
  return "(" + std::to_string(id.level) + ", " + std::to_string(id.position) + ")";
}

}  // namespace

BipartitionTree BipartitionTree::from_records(
    std::vector<std::pair<NodeId, std::vector<Index>>> records) {
  if (records.empty()) throw Error(ErrorCode::InvalidArgument, "empty bipartition tree");
  BipartitionTree tree;
  tree.nodes_.reserve(records.size());
  for (auto& [id, members] : records) {
    TreeNode node;
    node.id = id;
    node.members = std::move(members);
    tree.nodes_.push_back(std::move(node));
  }
  std::sort(tree.nodes_.begin(), tree.nodes_.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.id < b.id; });
  tree.link_and_validate();
  return tree;
}

void BipartitionTree::link_and_validate() {
  lookup_.clear();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!lookup_.emplace(nodes_[i].id, i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate tree node " + id_text(nodes_[i].id));
    }
  }
  if (nodes_.front().id != NodeId{0, 0}) {
    throw Error(ErrorCode::InvalidArgument, "tree has no root node (0, 0)");
  }
  max_level_ = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    TreeNode& node = nodes_[i];
    if (node.members.empty()) {
      throw Error(ErrorCode::InvalidArgument, "tree node " + id_text(node.id) + " is empty");
    }
    if (!std::is_sorted(node.members.begin(), node.members.end())) {
      std::sort(node.members.begin(), node.members.end());
    }
    max_level_ = std::max(max_level_, node.id.level);
    if (node.id.level >= kMaxDepth) {
      throw Error(ErrorCode::InvalidArgument, "tree deeper than supported");
    }
    const auto l = find({node.id.level + 1, 2 * node.id.position});
    const auto r = find({node.id.level + 1, 2 * node.id.position + 1});
    if (l.has_value() != r.has_value()) {
      throw Error(ErrorCode::InvalidArgument,
                  "tree node " + id_text(node.id) + " has exactly one child");
    }
    if (l) {
      node.left = l;
      node.right = r;
      nodes_[*l].parent = i;
      nodes_[*r].parent = i;
    } else if (node.members.size() != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "leaf " + id_text(node.id) + " holds more than one index");
    }
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!nodes_[i].parent) {
      throw Error(ErrorCode::InvalidArgument,
                  "tree node " + id_text(nodes_[i].id) + " has no parent");
    }
  }
  for (const TreeNode& node : nodes_) {
    if (node.is_leaf()) continue;
    std::vector<Index> merged;
    const auto& a = nodes_[*node.left].members;
    const auto& b = nodes_[*node.right].members;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
    if (merged != node.members) {
      throw Error(ErrorCode::InvalidArgument,
                  "children of " + id_text(node.id) + " do not partition it");
    }
  }
}

const TreeNode& BipartitionTree::node(int level, std::int64_t position) const {
  const auto idx = find({level, position});
  if (!idx) throw Error(ErrorCode::NotFound, "no tree node " + id_text({level, position}));
  return nodes_[*idx];
}

std::optional<std::size_t> BipartitionTree::find(NodeId id) const {
  const auto it = lookup_.find(id);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> BipartitionTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) out.push_back(i);
  }
  return out;
}

bool BipartitionTree::is_ancestor_or_self(std::size_t a, std::size_t b) const {
  std::optional<std::size_t> cur = b;
  while (cur) {
    if (*cur == a) return true;
    cur = nodes_[*cur].parent;
  }
  return false;
}

BipartitionTree build_bipartition_tree(const Eigen::MatrixXd& weights) {
  const Index n = weights.rows();
  if (n < 1 || weights.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "tree input must be a non-empty square matrix");
  }
  std::vector<std::pair<NodeId, std::vector<Index>>> records;
  std::vector<Index> all(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) all[i] = i;

  std::vector<std::pair<NodeId, std::vector<Index>>> pending;
  pending.emplace_back(NodeId{0, 0}, std::move(all));
  while (!pending.empty()) {
    auto [id, members] = std::move(pending.back());
    pending.pop_back();
    if (members.size() >= 2) {
      if (id.level + 1 >= kMaxDepth) {
        throw Error(ErrorCode::NumericalFailure,
                    "bipartition tree exceeds depth " + std::to_string(kMaxDepth));
      }
      Bipartition part;
      if (members.size() == 2) {
        part.left = {0};
        part.right = {1};
      } else {
        const auto m = static_cast<Index>(members.size());
        Eigen::MatrixXd sub(m, m);
        for (Index c = 0; c < m; ++c) {
          for (Index r = 0; r < m; ++r) sub(r, c) = weights(members[r], members[c]);
        }
        part = fiedler_bipartition(sub);
      }
      std::vector<Index> a;
      std::vector<Index> b;
      for (Index i : part.left) a.push_back(members[i]);
      for (Index i : part.right) b.push_back(members[i]);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (b.front() < a.front()) std::swap(a, b);
      pending.emplace_back(NodeId{id.level + 1, 2 * id.position + 1}, std::move(b));
      pending.emplace_back(NodeId{id.level + 1, 2 * id.position}, std::move(a));
    }
    records.emplace_back(id, std::move(members));
  }
  return BipartitionTree::from_records(std::move(records));
}

BipartitionTree build_dual_tree(const DualGraph& dual) {
  return build_bipartition_tree(dual.weights);
}

}  // namespace ngwp
