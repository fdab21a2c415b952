#include "ngwp/graph.hpp"

#include "ngwp/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace ngwp {

namespace {

constexpr double kZeroTol = 1e-12;

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")";
}

}  // namespace

Graph::Graph(Index n_nodes, std::vector<Edge> edges, std::vector<Point2> coords)
    : n_nodes_(n_nodes), edges_(std::move(edges)), coords_(std::move(coords)) {
  if (n_nodes_ < 1) {
    throw Error(ErrorCode::InvalidArgument, "graph must have at least one node");
  }
  if (!coords_.empty() && static_cast<Index>(coords_.size()) != n_nodes_) {
    throw Error(ErrorCode::DimensionMismatch,
                "coordinate count " + std::to_string(coords_.size()) +
                    " does not match node count " + std::to_string(n_nodes_));
  }
  std::set<std::pair<Index, Index>> seen;
  for (const Edge& e : edges_) {
    if (e.i < 0 || e.j < 0 || e.i >= n_nodes_ || e.j >= n_nodes_) {
      throw Error(ErrorCode::InvalidArgument, "edge " + edge_text(e) + " out of range");
    }
    if (e.i == e.j) {
      throw Error(ErrorCode::InvalidArgument, "self-loop at node " + std::to_string(e.i));
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::InvalidArgument,
                  "edge " + edge_text(e) + " has non-positive or non-finite weight");
    }
    if (!seen.emplace(std::min(e.i, e.j), std::max(e.i, e.j)).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate edge " + edge_text(e));
    }
  }
  const auto sizes = component_sizes(n_nodes_, edges_);
  if (sizes.size() > 1) {
    std::string msg = "graph is disconnected; component sizes:";
    for (Index s : sizes) msg += " " + std::to_string(s);
    throw Error(ErrorCode::Disconnected, msg);
  }
}

Eigen::MatrixXd Graph::weight_matrix() const {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_nodes_, n_nodes_);
  for (const Edge& e : edges_) {
    w(e.i, e.j) = e.w;
    w(e.j, e.i) = e.w;
  }
  return w;
}

Eigen::VectorXd Graph::degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_nodes_);
  for (const Edge& e : edges_) {
    d(e.i) += e.w;
    d(e.j) += e.w;
  }
  return d;
}

Eigen::MatrixXd build_laplacian(const Eigen::MatrixXd& weights, LaplacianKind kind) {
  if (weights.rows() != weights.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "weight matrix must be square");
  }
  const Eigen::VectorXd d = weights.rowwise().sum();
  Eigen::MatrixXd lap = -weights;
  lap.diagonal() += d;
  if (kind == LaplacianKind::Unnormalized) return lap;

  if ((d.array() <= 0.0).any()) {
    throw Error(ErrorCode::DegenerateDegree, "normalized Laplacian needs positive degrees");
  }
  if (kind == LaplacianKind::RandomWalk) {
    return d.cwiseInverse().asDiagonal() * lap;
  }
  const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
  return s.asDiagonal() * lap * s.asDiagonal();
}

Eigen::MatrixXd build_laplacian(const Graph& g, LaplacianKind kind) {
  return build_laplacian(g.weight_matrix(), kind);
}

IncidenceMatrix build_incidence(const Graph& g) {
  return build_incidence(g, std::vector<bool>(g.edges().size(), false));
}

IncidenceMatrix build_incidence(const Graph& g, const std::vector<bool>& flip) {
  if (flip.size() != g.edges().size()) {
    throw Error(ErrorCode::DimensionMismatch, "orientation flags must match edge count");
  }
  IncidenceMatrix inc;
  inc.q.resize(g.num_nodes(), g.num_edges());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edges().size());
  inc.orientation.reserve(g.edges().size());
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const Edge& e = g.edges()[k];
    Index head = std::min(e.i, e.j);
    Index tail = std::max(e.i, e.j);
    if (flip[k]) std::swap(head, tail);
    const double s = std::sqrt(e.w);
    triplets.emplace_back(head, static_cast<Index>(k), -s);
    triplets.emplace_back(tail, static_cast<Index>(k), s);
    inc.orientation.emplace_back(head, tail);
  }
  inc.q.setFromTriplets(triplets.begin(), triplets.end());
  return inc;
}

void apply_sign_convention(Eigen::Ref<Eigen::VectorXd> v) {
  if (v.size() == 0) return;
  Index best = 0;
  double best_abs = std::abs(v(0));
  for (Index i = 1; i < v.size(); ++i) {
    // Strict comparison keeps the lowest index on exact ties.
    if (std::abs(v(i)) > best_abs) {
      best_abs = std::abs(v(i));
      best = i;
    }
  }
  if (v(best) < 0.0) v = -v;
}

void apply_sign_convention(Eigen::MatrixXd& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) apply_sign_convention(vectors.col(c));
}

Bipartition fiedler_bipartition(const Eigen::MatrixXd& weights) {
  const Index n = weights.rows();
  if (n < 2) {
    throw Error(ErrorCode::Underflow, "cannot bipartition fewer than two nodes");
  }
  Bipartition part;
  if (n == 2) {
    part.left = {0};
    part.right = {1};
    return part;
  }
  const Eigen::VectorXd d = weights.rowwise().sum();
  if ((d.array() <= 0.0).any()) {
    throw Error(ErrorCode::DegenerateDegree, "zero-degree node in bipartition input");
  }

  // L x = lambda D x through the symmetric normalized Laplacian.
  const Eigen::MatrixXd lsym = build_laplacian(weights, LaplacianKind::Symmetric);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lsym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigensolver failed in Fiedler bipartition");
  }
  Eigen::VectorXd x = d.cwiseSqrt().cwiseInverse().cwiseProduct(solver.eigenvectors().col(1));
  x.normalize();
  apply_sign_convention(x);

  for (Index i = 0; i < n; ++i) {
    (x(i) <= kZeroTol ? part.left : part.right).push_back(i);
  }
  if (part.left.empty() || part.right.empty()) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return x(a) < x(b); });
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    part.left.assign(order.begin(), order.begin() + half);
    part.right.assign(order.begin() + half, order.end());
    std::sort(part.left.begin(), part.left.end());
    std::sort(part.right.begin(), part.right.end());
  }
  return part;
}

Bipartition fiedler_bipartition(const Graph& g) {
  return fiedler_bipartition(g.weight_matrix());
}

bool is_connected(const Eigen::MatrixXd& weights) {
  const Index n = weights.rows();
  if (n == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<Index> pending;
  pending.push(0);
  seen[0] = true;
  Index count = 1;
  while (!pending.empty()) {
    const Index u = pending.front();
    pending.pop();
    for (Index v = 0; v < n; ++v) {
      if (!seen[v] && weights(u, v) > 0.0) {
        seen[v] = true;
        ++count;
        pending.push(v);
      }
    }
  }
  return count == n;
}

std::vector<Index> component_sizes(Index n_nodes, const std::vector<Edge>& edges) {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n_nodes));
  for (const Edge& e : edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_nodes), false);
  std::vector<Index> sizes;
  for (Index start = 0; start < n_nodes; ++start) {
    if (seen[start]) continue;
    Index count = 0;
    std::queue<Index> pending;
    pending.push(start);
    seen[start] = true;
    while (!pending.empty()) {
      const Index u = pending.front();
      pending.pop();
      ++count;
      for (Index v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          pending.push(v);
        }
      }
    }
    sizes.push_back(count);
  }
  return sizes;
}

}  // namespace ngwp
