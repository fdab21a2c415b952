#include "ngwp/dictionary.hpp"

#include "ngwp/error.hpp"

#include <algorithm>

namespace ngwp {

std::string to_string(DictionaryKind kind) {
  return kind == DictionaryKind::VM ? "VM" : "PC";
}

DictionaryKind parse_dictionary_kind(const std::string& text) {
  if (text == "VM" || text == "vm") return DictionaryKind::VM;
  if (text == "PC" || text == "pc") return DictionaryKind::PC;
  throw Error(ErrorCode::Parse, "unknown dictionary kind '" + text + "'");
}

PacketDictionary::PacketDictionary(DictionaryKind kind, BipartitionTree tree,
                                   std::vector<Eigen::MatrixXd> blocks, BuildParams params,
                                   std::optional<std::vector<std::vector<Index>>> node_sets)
    : kind_(kind),
      tree_(std::move(tree)),
      blocks_(std::move(blocks)),
      params_(params),
      node_sets_(std::move(node_sets)) {
  const auto& nodes = tree_.nodes();
  if (blocks_.size() != nodes.size()) {
    throw Error(ErrorCode::DimensionMismatch, "dictionary needs one block per tree node");
  }
  dimension_ = blocks_.front().rows();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (blocks_[i].rows() != dimension_ || blocks_[i].cols() != nodes[i].size()) {
      throw Error(ErrorCode::DimensionMismatch, "block shape does not match its tree node");
    }
  }
  if (tree_.size() != dimension_) {
    throw Error(ErrorCode::DimensionMismatch, "tree root size does not match block rows");
  }
  if (node_sets_) {
    if (node_sets_->size() != nodes.size()) {
      throw Error(ErrorCode::DimensionMismatch, "node sets must align with tree nodes");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (static_cast<Index>((*node_sets_)[i].size()) != nodes[i].size()) {
        throw Error(ErrorCode::DimensionMismatch, "paired node set size differs from its block");
      }
    }
  }
}

const Eigen::MatrixXd& PacketDictionary::block(int level, std::int64_t position) const {
  const auto idx = tree_.find({level, position});
  if (!idx) throw Error(ErrorCode::NotFound, "dictionary has no block at requested node");
  return blocks_[*idx];
}

double PacketDictionary::max_orthonormality_defect() const {
  double worst = 0.0;
  for (const auto& b : blocks_) {
    const Eigen::MatrixXd gram = b.transpose() * b;
    worst = std::max(worst, (gram - Eigen::MatrixXd::Identity(b.cols(), b.cols()))
                                .cwiseAbs()
                                .maxCoeff());
  }
  return worst;
}

}  // namespace ngwp
