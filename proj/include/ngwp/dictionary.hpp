#pragma once

#include "ngwp/partition_tree.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace ngwp {

enum class DictionaryKind { VM, PC };

std::string to_string(DictionaryKind kind);
DictionaryKind parse_dictionary_kind(const std::string& text);

/// Parameters recorded with a dictionary. Defaults follow the varimax and
/// MGSLp defaults: tolerance 1e-12, 1000 iterations, p = 1.
struct BuildParams {
  double tol = 1e-12;
  int maxit = 1000;
  double p = 1.0;

  friend bool operator==(const BuildParams&, const BuildParams&) = default;
};

/// One orthonormal block per tree node, aligned with tree().nodes().
class PacketDictionary {
 public:
  PacketDictionary(DictionaryKind kind, BipartitionTree tree, std::vector<Eigen::MatrixXd> blocks,
                   BuildParams params,
                   std::optional<std::vector<std::vector<Index>>> node_sets = std::nullopt);

  DictionaryKind kind() const { return kind_; }
  const BipartitionTree& tree() const { return tree_; }
  const BuildParams& params() const { return params_; }
  /// Signal length N.
  Index dimension() const { return dimension_; }

  const std::vector<Eigen::MatrixXd>& blocks() const { return blocks_; }
  const Eigen::MatrixXd& block(std::size_t node_index) const { return blocks_.at(node_index); }
  const Eigen::MatrixXd& block(int level, std::int64_t position) const;

  /// Graph-node sets paired with each tree node (PC dictionaries only).
  const std::optional<std::vector<std::vector<Index>>>& node_sets() const { return node_sets_; }

  /// Largest |Psi^T Psi - I| entry over all blocks.
  double max_orthonormality_defect() const;

 private:
  DictionaryKind kind_;
  BipartitionTree tree_;
  std::vector<Eigen::MatrixXd> blocks_;
  BuildParams params_;
  std::optional<std::vector<std::vector<Index>>> node_sets_;
  Index dimension_ = 0;
};

}  // namespace ngwp
