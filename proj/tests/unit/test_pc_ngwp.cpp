#include "ngwp/datasets.hpp"
#include "ngwp/error.hpp"
#include "ngwp/pc_ngwp.hpp"
#include "ngwp/pipeline.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace ngwp;

namespace {

std::vector<Index> iota_vec(Index from, Index to) {
  std::vector<Index> v;
  for (Index i = from; i < to; ++i) v.push_back(i);
  return v;
}

double objective(const std::vector<Index>& v1, const std::vector<Index>& e1,
                 const std::vector<Index>& v2, const std::vector<Index>& e2, const EigenSystem& es) {
  return affinity(v1, e1, es) + affinity(v2, e2, es);
}

/// Best pairing objective over all feasible splits of the pool.
double brute_force_best(const std::vector<Index>& pool, const std::vector<Index>& e1,
                        const std::vector<Index>& e2, const EigenSystem& es) {
  double best = -1.0;
  oracle::for_each_subset(int(pool.size()), int(e1.size()), [&](const std::vector<int>& pick) {
    std::vector<Index> v1, v2;
    std::vector<bool> in(pool.size(), false);
    for (int p : pick) in[std::size_t(p)] = true;
    for (std::size_t i = 0; i < pool.size(); ++i) (in[i] ? v1 : v2).push_back(pool[i]);
    best = std::max(best, objective(v1, e1, v2, e2, es));
  });
  return best;
}

bool signed_permutation(const Eigen::MatrixXd& b, double tol) {
  std::vector<bool> used(std::size_t(b.rows()), false);
  for (Index c = 0; c < b.cols(); ++c) {
    Index arg = 0;
    const double peak = b.col(c).cwiseAbs().maxCoeff(&arg);
    if (std::abs(peak - 1.0) > tol || used[std::size_t(arg)]) return false;
    used[std::size_t(arg)] = true;
  }
  return true;
}

}  // namespace

TEST_CASE("affinity") {
  std::mt19937_64 rng(3);
  const EigenSystem es = eigendecompose(oracle::random_connected_graph(9, 0.3, rng));
  const auto all = iota_vec(0, 9);
  CHECK(affinity(all, all, es) == doctest::Approx(9.0));
  for (Index l = 0; l < 9; ++l) CHECK(affinity({l}, all, es) == doctest::Approx(1.0));
  CHECK(affinity({}, all, es) == 0.0);
  CHECK(affinity({2, 5}, {1, 4, 7}, es) ==
        doctest::Approx(es.vectors(std::vector<Index>{2, 5}, std::vector<Index>{1, 4, 7})
                            .squaredNorm()));
}

TEST_CASE("pair clustering, K = 2") {
  const EigenSystem p4 = eigendecompose(gen_path(4));
  SUBCASE("all eigenvectors on one side") {
    const NodeSplit s = pair_cluster_two(iota_vec(0, 4), iota_vec(0, 4), {}, p4);
    CHECK(s.left == iota_vec(0, 4));
    CHECK(s.right.empty());
  }
  SUBCASE("P4 low/high halves are optimal") {
    const NodeSplit s = pair_cluster_two(iota_vec(0, 4), {0, 1}, {2, 3}, p4);
    CHECK(s.left.size() == 2);
    CHECK(objective(s.left, {0, 1}, s.right, {2, 3}, p4) ==
          doctest::Approx(brute_force_best(iota_vec(0, 4), {0, 1}, {2, 3}, p4)).epsilon(1e-14));
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(pair_cluster_two(iota_vec(0, 3), {0, 1}, {2, 3}, p4), Error);
  }
  SUBCASE("barbell level-1 split is optimal") {
    std::vector<Edge> e;
    for (Index a = 0; a < 4; ++a) {
      for (Index b = a + 1; b < 4; ++b) {
        e.push_back({a, b, 1.0});
        e.push_back({a + 4, b + 4, 1.0});
      }
    }
    e.push_back({3, 4, 1.0});
    const DualDomain d = build_dual_domain(Graph(8, e));
    const auto& e1 = d.tree.node(1, 0).members;
    const auto& e2 = d.tree.node(1, 1).members;
    const NodeSplit s = pair_cluster_two(iota_vec(0, 8), e1, e2, d.eigen);
    CHECK(s.left.size() == e1.size());
    CHECK(objective(s.left, e1, s.right, e2, d.eigen) ==
          doctest::Approx(brute_force_best(iota_vec(0, 8), e1, e2, d.eigen)).epsilon(1e-14));
  }
  SUBCASE("exhaustive optimality on random graphs") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 10; ++t) {
      const Index n = 4 + Index(rng() % 7);
      const EigenSystem es = eigendecompose(oracle::random_connected_graph(n, 0.3, rng));
      std::vector<Index> eigs = iota_vec(0, n);
      std::shuffle(eigs.begin(), eigs.end(), rng);
      const Index n1 = 1 + Index(rng() % std::uint64_t(n - 1));
      std::vector<Index> e1(eigs.begin(), eigs.begin() + n1), e2(eigs.begin() + n1, eigs.end());
      const NodeSplit s = pair_cluster_two(iota_vec(0, n), e1, e2, es);
      CHECK(objective(s.left, e1, s.right, e2, es) ==
            doctest::Approx(brute_force_best(iota_vec(0, n), e1, e2, es)).epsilon(1e-13));
    }
  }
}

TEST_CASE("greedy K-way pair clustering") {
  std::mt19937_64 rng(12);
  const EigenSystem es = eigendecompose(oracle::random_connected_graph(10, 0.3, rng));
  const std::vector<std::vector<Index>> clusters{{0, 1, 2}, {3, 4}, {5, 6, 7, 8, 9}};
  const auto parts = pair_cluster(iota_vec(0, 10), clusters, es);
  REQUIRE(parts.size() == 3);
  std::set<Index> seen;
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(parts[k].size() == clusters[k].size());
    CHECK(std::is_sorted(parts[k].begin(), parts[k].end()));
    seen.insert(parts[k].begin(), parts[k].end());
  }
  CHECK(seen.size() == 10);
  // The first cluster takes the nodes with the largest affinity to it.
  std::vector<double> score;
  for (Index l = 0; l < 10; ++l) score.push_back(affinity({l}, clusters[0], es));
  for (Index in : parts[0]) {
    for (Index l = 0; l < 10; ++l) {
      if (std::find(parts[0].begin(), parts[0].end(), l) == parts[0].end()) {
        CHECK(score[std::size_t(in)] >= score[std::size_t(l)]);
      }
    }
  }
}

TEST_CASE("paired tree invariants") {
  for (const Graph& g : {gen_path(2), gen_path(8), gen_sunflower({30, 1.0})}) {
    const DualDomain d = build_dual_domain(g);
    const PairedTree pt = build_paired_tree(d.eigen, d.tree);
    const auto& nodes = pt.dual_tree.nodes();
    REQUIRE(pt.node_sets.size() == nodes.size());
    std::set<Index> leaf_nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(pt.node_sets[i].size() == nodes[i].members.size());
      if (nodes[i].is_leaf()) {
        leaf_nodes.insert(pt.node_sets[i].front());
        continue;
      }
      std::vector<Index> uni;
      const auto& l = pt.node_sets[*nodes[i].left];
      const auto& r = pt.node_sets[*nodes[i].right];
      std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(uni));
      CHECK(uni == pt.node_sets[i]);
      CHECK(l.size() + r.size() == pt.node_sets[i].size());
    }
    CHECK(Index(leaf_nodes.size()) == g.num_nodes());
  }
}

TEST_CASE("MGSLp") {
  SUBCASE("orthonormal input") {
    std::mt19937_64 rng(4);
    const Eigen::MatrixXd a = oracle::random_orthonormal(10, 4, rng);
    const Eigen::MatrixXd q = mgslp(a);
    CHECK(q.cols() == 4);
    CHECK(oracle::orthonormality_defect(q) < 1e-10);
    CHECK(oracle::projector_distance(q, a) < 1e-10);
  }
  SUBCASE("duplicates collapse") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 2);
    a(0, 0) = a(0, 1) = 1;
    const Eigen::MatrixXd q = mgslp(a);
    REQUIRE(q.cols() == 1);
    CHECK(std::abs(q(0, 0)) == doctest::Approx(1.0));
  }
  SUBCASE("l1 pivot takes the sparse vector first") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 2);
    a(0, 0) = a(1, 0) = 1.0 / std::sqrt(2.0);
    a(0, 1) = 1.0;
    const Eigen::MatrixXd q = mgslp(a, 1.0);
    REQUIRE(q.cols() == 2);
    CHECK(std::abs(q(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(q(1, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(q(0, 1)) < 1e-15);
  }
  SUBCASE("argument checks") {
    const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(3, 2);
    CHECK_THROWS_AS(mgslp(e, 0.0), Error);
    CHECK_THROWS_AS(mgslp(e, 2.0), Error);
    CHECK_THROWS_AS(mgslp(2.0 * e), Error);
  }
  SUBCASE("extension keeps the basis first") {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(4, 1);
    basis(2, 0) = 1;
    const Eigen::MatrixXd q = mgslp_extend(basis, Eigen::MatrixXd::Identity(4, 4));
    REQUIRE(q.cols() == 4);
    CHECK(q.col(0) == basis.col(0));
    CHECK(oracle::orthonormality_defect(q) < 1e-12);
  }
}

TEST_CASE("PC dictionary") {
  const DualDomain d = build_dual_domain(gen_path(8));
  const PacketDictionary dict = build_dictionary(d, DictionaryKind::PC);
  const auto& nodes = dict.tree().nodes();
  CHECK(dict.kind() == DictionaryKind::PC);
  REQUIRE(dict.node_sets().has_value());
  CHECK(dict.max_orthonormality_defect() < 1e-8);
  CHECK(signed_permutation(dict.block(0, 0), 1e-12));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Eigen::MatrixXd sub(8, nodes[i].size());
    for (Index c = 0; c < nodes[i].size(); ++c) {
      sub.col(c) = d.eigen.vectors.col(nodes[i].members[std::size_t(c)]);
    }
    CHECK(dict.block(i).cols() == nodes[i].size());
    CHECK(oracle::projector_distance(dict.block(i), sub) < 1e-8);
    if (nodes[i].is_leaf()) CHECK(std::abs(dict.block(i).col(0).dot(sub.col(0))) == doctest::Approx(1.0));
    for (std::size_t k = i + 1; k < nodes.size(); ++k) {
      if (dict.tree().is_ancestor_or_self(i, k)) continue;
      CHECK((dict.block(i).transpose() * dict.block(k)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  // Energy captured by the pairing never exceeds the total.
  for (int j = 0; j <= dict.tree().max_level(); ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].id.level == j) total += affinity((*dict.node_sets())[i], nodes[i].members, d.eigen);
    }
    CHECK(total <= 8.0 + 1e-10);
  }
}
