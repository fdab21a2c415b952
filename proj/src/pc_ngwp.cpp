#include "ngwp/pc_ngwp.hpp"

#include "ngwp/error.hpp"
#include "ngwp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ngwp {

namespace {

double row_energy(const EigenSystem& es, Index node, const std::vector<Index>& eigs) {
  double s = 0.0;
  for (Index m : eigs) s += es.vectors(node, m) * es.vectors(node, m);
  return s;
}

void check_indices(const std::vector<Index>& idx, Index n, const char* what) {
  for (Index i : idx) {
    if (i < 0 || i >= n) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + " index " + std::to_string(i) + " out of range");
    }
  }
}

/// Indices of the `count` largest scores; ties favor the smaller node index.
std::vector<std::size_t> top_scores(const std::vector<Index>& nodes,
                                    const std::vector<double>& scores, std::size_t count) {
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return nodes[a] < nodes[b];
  });
  order.resize(count);
  return order;
}

double lp_norm(const Eigen::VectorXd& v, double p) {
  return std::pow(v.array().abs().pow(p).sum(), 1.0 / p);
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& phi, const std::vector<Index>& idx) {
  Eigen::MatrixXd out(phi.rows(), static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Index>(c)) = phi.col(idx[c]);
  return out;
}

std::string id_text(NodeId id) {
  return "(" + std::to_string(id.level) + ", " + std::to_string(id.position) + ")";
}

}  // namespace

double affinity(const std::vector<Index>& nodes, const std::vector<Index>& eigs,
                const EigenSystem& es) {
  check_indices(nodes, es.size(), "node");
  check_indices(eigs, es.size(), "eigenvector");
  double total = 0.0;
  for (Index l : nodes) total += row_energy(es, l, eigs);
  return total;
}

NodeSplit pair_cluster_two(const std::vector<Index>& node_pool, const std::vector<Index>& eig_left,
                           const std::vector<Index>& eig_right, const EigenSystem& es) {
  if (node_pool.size() != eig_left.size() + eig_right.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "node pool size must equal the total eigenvector cluster size");
  }
  check_indices(node_pool, es.size(), "node");
  check_indices(eig_left, es.size(), "eigenvector");
  check_indices(eig_right, es.size(), "eigenvector");

  std::vector<double> scores(node_pool.size());
  for (std::size_t i = 0; i < node_pool.size(); ++i) {
    scores[i] = row_energy(es, node_pool[i], eig_left) - row_energy(es, node_pool[i], eig_right);
  }
  const auto chosen = top_scores(node_pool, scores, eig_left.size());
  std::vector<bool> in_left(node_pool.size(), false);
  for (std::size_t i : chosen) in_left[i] = true;

  NodeSplit split;
  for (std::size_t i = 0; i < node_pool.size(); ++i) {
    (in_left[i] ? split.left : split.right).push_back(node_pool[i]);
  }
  std::sort(split.left.begin(), split.left.end());
  std::sort(split.right.begin(), split.right.end());
  return split;
}

std::vector<std::vector<Index>> pair_cluster(const std::vector<Index>& node_pool,
                                             const std::vector<std::vector<Index>>& eig_clusters,
                                             const EigenSystem& es) {
  std::size_t total = 0;
  for (const auto& c : eig_clusters) total += c.size();
  if (total != node_pool.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "node pool size must equal the total eigenvector cluster size");
  }
  check_indices(node_pool, es.size(), "node");

  std::vector<Index> remaining = node_pool;
  std::vector<std::vector<Index>> out;
  out.reserve(eig_clusters.size());
  for (const auto& eigs : eig_clusters) {
    check_indices(eigs, es.size(), "eigenvector");
    std::vector<double> scores(remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      scores[i] = row_energy(es, remaining[i], eigs);
    }
    const auto chosen = top_scores(remaining, scores, eigs.size());
    std::vector<bool> taken(remaining.size(), false);
    std::vector<Index> cluster;
    for (std::size_t i : chosen) {
      taken[i] = true;
      cluster.push_back(remaining[i]);
    }
    std::sort(cluster.begin(), cluster.end());
    out.push_back(std::move(cluster));

    std::vector<Index> rest;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (!taken[i]) rest.push_back(remaining[i]);
    }
    remaining = std::move(rest);
  }
  return out;
}

PairedTree build_paired_tree(const EigenSystem& es, const BipartitionTree& dual_tree) {
  if (dual_tree.size() != es.size()) {
    throw Error(ErrorCode::DimensionMismatch, "tree and eigensystem sizes differ");
  }
  const auto& nodes = dual_tree.nodes();
  PairedTree paired{dual_tree, std::vector<std::vector<Index>>(nodes.size())};
  paired.node_sets[0].resize(static_cast<std::size_t>(es.size()));
  std::iota(paired.node_sets[0].begin(), paired.node_sets[0].end(), Index{0});

  // Lexicographic (level, position) order visits parents before children.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const TreeNode& node = nodes[i];
    if (node.is_leaf()) continue;
    NodeSplit split = pair_cluster_two(paired.node_sets[i], nodes[*node.left].members,
                                       nodes[*node.right].members, es);
    paired.node_sets[*node.left] = std::move(split.left);
    paired.node_sets[*node.right] = std::move(split.right);
  }
  return paired;
}

Eigen::MatrixXd mgslp_extend(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& vectors,
                             double p, double tol) {
  if (!(p > 0.0 && p < 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "mgslp needs 0 < p < 2");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "mgslp needs tol > 0");
  if (basis.cols() > 0 && basis.rows() != vectors.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "mgslp basis and candidates differ in length");
  }
  for (Index c = 0; c < vectors.cols(); ++c) {
    if (std::abs(vectors.col(c).norm() - 1.0) > 1e-8) {
      throw Error(ErrorCode::Precondition, "mgslp candidates must be unit vectors");
    }
  }

  const Index n = vectors.rows();
  const Index m = vectors.cols();
  Eigen::MatrixXd q(n, basis.cols() + m);
  Index r = basis.cols();
  if (r > 0) q.leftCols(r) = basis;

  Eigen::MatrixXd residual = vectors;
  for (Index k = 0; k < r; ++k) {
    for (Index j = 0; j < m; ++j) {
      residual.col(j) -= q.col(k).dot(residual.col(j)) * q.col(k);
    }
  }

  std::vector<bool> active(static_cast<std::size_t>(m), true);
  for (Index step = 0; step < m; ++step) {
    Index pick = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < m; ++j) {
      if (!active[j]) continue;
      const double w = lp_norm(residual.col(j), p);
      if (w < best) {
        best = w;
        pick = j;
      }
    }
    active[pick] = false;

    // A second projection pass keeps the output orthonormal to round-off
    // when the residual is much shorter than the original vector.
    Eigen::VectorXd v = residual.col(pick);
    if (r > 0) v -= q.leftCols(r) * (q.leftCols(r).transpose() * v);
    const double len = v.norm();
    if (len < tol) continue;
    v /= len;
    q.col(r++) = v;
    for (Index j = 0; j < m; ++j) {
      if (active[j]) residual.col(j) -= v.dot(residual.col(j)) * v;
    }
  }
  return q.leftCols(r);
}

Eigen::MatrixXd mgslp(const Eigen::MatrixXd& vectors, double p, double tol) {
  return mgslp_extend(Eigen::MatrixXd(vectors.rows(), 0), vectors, p, tol);
}

PacketDictionary build_pc_dictionary(const EigenSystem& es, const PairedTree& paired,
                                     const BuildParams& params) {
  const auto& nodes = paired.dual_tree.nodes();
  if (paired.node_sets.size() != nodes.size() || paired.dual_tree.size() != es.size()) {
    throw Error(ErrorCode::DimensionMismatch, "paired tree does not match eigensystem");
  }
  std::vector<Eigen::MatrixXd> blocks(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const Eigen::MatrixXd phi = columns(es.vectors, nodes[i].members);
    const auto& deltas = paired.node_sets[i];

    Eigen::MatrixXd candidates(es.size(), static_cast<Index>(deltas.size()));
    Index count = 0;
    for (Index l : deltas) {
      Eigen::VectorXd proj = phi * phi.row(l).transpose();
      const double len = proj.norm();
      if (len < params.tol) continue;
      candidates.col(count++) = proj / len;
    }
    Eigen::MatrixXd block = mgslp(candidates.leftCols(count), params.p, params.tol);
    if (block.cols() < phi.cols()) {
      block = mgslp_extend(block, phi, params.p, params.tol);
    }
    if (block.cols() != phi.cols()) {
      throw Error(ErrorCode::RankDeficiency,
                  "PC block " + id_text(nodes[i].id) + " has rank " +
                      std::to_string(block.cols()) + ", expected " +
                      std::to_string(phi.cols()));
    }
    blocks[i] = std::move(block);
  });
  return PacketDictionary(DictionaryKind::PC, paired.dual_tree, std::move(blocks), params,
                          paired.node_sets);
}

}  // namespace ngwp
