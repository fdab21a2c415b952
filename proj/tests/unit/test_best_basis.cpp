#include "ngwp/approximation.hpp"
#include "ngwp/best_basis.hpp"
#include "ngwp/datasets.hpp"
#include "ngwp/error.hpp"
#include "ngwp/pipeline.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <limits>
#include <random>

using namespace ngwp;

namespace {

double lp_cost(const Eigen::VectorXd& c, double p) { return c.cwiseAbs().array().pow(p).sum(); }

/// Exhaustive minimum of the additive cost over every tree ONB.
double exhaustive_min(const PacketDictionary& dict, const Eigen::VectorXd& f, double p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& chain : oracle::enumerate_antichains(dict.tree())) {
    double total = 0.0;
    for (std::size_t n : chain) total += lp_cost(dict.block(n).transpose() * f, p);
    best = std::min(best, total);
  }
  return best;
}

/// The chosen antichain attains the enumerated minimum. Antichains made of
/// identical blocks tie exactly, so identity of the antichain is not required.
void check_optimal(const BasisSelection& sel, const PacketDictionary& dict, const Eigen::VectorXd& f,
                   double p) {
  const double best = exhaustive_min(dict, f, p);
  double chosen = 0.0;
  for (std::size_t n : sel.nodes) chosen += lp_cost(dict.block(n).transpose() * f, p);
  CHECK(chosen <= best * (1.0 + 1e-12));
  CHECK(std::abs(sel.cost - best) <= 1e-12 * best);
}

void check_selection(const BasisSelection& sel, const PacketDictionary& dict) {
  const Index n = dict.dimension();
  CHECK(sel.basis.rows() == n);
  CHECK(sel.basis.cols() == n);
  CHECK(oracle::orthonormality_defect(sel.basis) < 1e-8);
  std::vector<int> hits(std::size_t(n), 0);
  for (std::size_t a : sel.nodes) {
    for (Index m : dict.tree().nodes()[a].members) ++hits[std::size_t(m)];
    for (std::size_t b : sel.nodes) {
      if (a != b) CHECK(!dict.tree().is_ancestor_or_self(a, b));
    }
  }
  for (int h : hits) CHECK(h == 1);
  CHECK(sel.labels.size() == std::size_t(n));
}

}  // namespace

TEST_CASE("analyze") {
  const DualDomain d = build_dual_domain(gen_path(16));
  const PacketDictionary dict = build_dictionary(d, DictionaryKind::VM);
  const CoefficientTable zero = analyze(dict, Eigen::VectorXd::Zero(16));
  REQUIRE(zero.blocks.size() == dict.blocks().size());
  for (const auto& b : zero.blocks) CHECK(b.cwiseAbs().maxCoeff() == 0.0);

  const std::size_t node = 4;
  const CoefficientTable col = analyze(dict, dict.block(node).col(1));
  CHECK((col.blocks[node] - Eigen::VectorXd::Unit(dict.block(node).cols(), 1)).cwiseAbs().maxCoeff() <
        1e-10);

  std::mt19937_64 rng(1);
  const Eigen::VectorXd f = oracle::random_vector(16, rng);
  CHECK(analyze(dict, f).blocks[0].norm() == doctest::Approx(f.norm()).epsilon(1e-10));
  CHECK_THROWS_AS(analyze(dict, Eigen::VectorXd::Zero(5)), Error);
}

TEST_CASE("cost function") {
  CHECK_THROWS_AS(CostFunction(0.0), Error);
  CHECK_THROWS_AS(CostFunction(1.5), Error);
  const Eigen::Vector3d c(3, -4, 0);
  CHECK(CostFunction(1.0)(c) == 7.0);
  CHECK(CostFunction(0.5)(c) == doctest::Approx(std::sqrt(3.0) + 2.0));
}

TEST_CASE("best basis equals exhaustive search on N = 8") {
  std::mt19937_64 rng(41);
  const std::vector<Graph> graphs{gen_path(8), oracle::random_connected_graph(8, 0.3, rng)};
  for (const Graph& g : graphs) {
    const DualDomain d = build_dual_domain(g);
    for (DictionaryKind kind : {DictionaryKind::VM, DictionaryKind::PC}) {
      const PacketDictionary dict = build_dictionary(d, kind);
      for (int t = 0; t < 10; ++t) {
        const Eigen::VectorXd f = oracle::random_vector(8, rng);
        for (double p : {1.0, 0.5}) {
          const BasisSelection sel = best_basis(dict, analyze(dict, f), CostFunction(p));
          check_selection(sel, dict);
          check_optimal(sel, dict, f, p);
          const Eigen::VectorXd c = coefficients(sel, f);
          CHECK(sel.cost <= lp_cost(dict.block(0).transpose() * f, p) * (1 + 1e-12));
          CHECK(sel.cost <= lp_cost(leaf_basis(dict).basis.transpose() * f, p) * (1 + 1e-12));
          CHECK((reconstruct(sel, c) - f).norm() / f.norm() < 1e-10);
        }
      }
      // A single eigenvector as the signal.
      const Eigen::VectorXd phi = d.eigen.vectors.col(3);
      const BasisSelection sel = best_basis(dict, analyze(dict, phi));
      check_optimal(sel, dict, phi, 1.0);
    }
  }
}

TEST_CASE("ties keep the parent") {
  // At the root of a VM dictionary on P8, the signal phi_0 costs 1 in every
  // block containing phi_0's span; the root must be kept.
  const DualDomain d = build_dual_domain(gen_path(8));
  const PacketDictionary dict = build_dictionary(d, DictionaryKind::PC);
  // Root block of PC is a signed identity: a delta costs 1 there and at
  // least 1 everywhere else.
  const Eigen::VectorXd delta = Eigen::VectorXd::Unit(8, 2);
  const BasisSelection sel = best_basis(dict, analyze(dict, delta));
  CHECK(sel.cost == doctest::Approx(1.0));
  REQUIRE(sel.nodes.size() == 1);
  CHECK(sel.nodes.front() == 0);
}

TEST_CASE("explicit selections") {
  const DualDomain d = build_dual_domain(gen_path(16));
  const PacketDictionary dict = build_dictionary(d, DictionaryKind::VM);
  const BasisSelection shannon = shannon_wavelet_basis(dict);
  check_selection(shannon, dict);
  // Odd children along the even spine, plus one even leaf at the bottom.
  int evens = 0;
  for (const NodeId& id : shannon.node_ids) {
    if (id.position == 0) {
      ++evens;
      CHECK(dict.tree().node(id.level, 0).is_leaf());
    } else {
      CHECK(id.position == 1);
    }
  }
  CHECK(evens == 1);
  const BasisSelection leaves = leaf_basis(dict);
  check_selection(leaves, dict);
  CHECK(oracle::projector_distance(leaves.basis, d.eigen.vectors) < 1e-10);

  CHECK_THROWS_AS(select_basis(dict, std::vector<std::size_t>{0, 1}), Error);
  CHECK_THROWS_AS(select_basis(dict, std::vector<std::size_t>{1}), Error);
  CHECK_THROWS_AS(select_basis(dict, std::vector<NodeId>{{1, 0}, {1, 5}}), Error);
  const BasisSelection halves = select_basis(dict, std::vector<NodeId>{{1, 1}, {1, 0}});
  check_selection(halves, dict);
  CHECK(halves.node_ids.front() == NodeId{1, 0});

  std::mt19937_64 rng(2);
  const Eigen::VectorXd f = oracle::random_vector(16, rng);
  CHECK(reconstruct(halves, Eigen::VectorXd::Zero(16)).norm() == 0.0);
  const Eigen::VectorXd single = reconstruct(halves, Eigen::VectorXd::Unit(16, 5) * 2.5);
  CHECK((single - 2.5 * halves.basis.col(5)).norm() < 1e-15);
  CHECK_THROWS_AS(reconstruct(halves, Eigen::VectorXd::Zero(3)), Error);
}

TEST_CASE("error curves") {
  SUBCASE("Pythagoras") {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(8);
    c(2) = 3;
    c(5) = 4;
    const ErrorCurve curve = topk_error_curve(c, 5.0, "x");
    REQUIRE(curve.errors.size() == 5);
    CHECK(curve.errors[0] == doctest::Approx(1.0));
    CHECK(curve.errors[1] == doctest::Approx(0.6));
    CHECK(curve.errors[2] < 1e-10);
    CHECK(curve.fractions.back() == 0.5);
    CHECK(curve.error_at(0.13) == curve.errors[1]);
  }
  SUBCASE("odd length never passes half") {
    const ErrorCurve curve = topk_error_curve(Eigen::VectorXd::Ones(9), 3.0, "x");
    CHECK(curve.fractions.size() == 5);
    CHECK(curve.fractions.back() <= 0.5);
  }
  SUBCASE("zero signal") {
    CHECK_THROWS_AS(topk_error_curve(Eigen::VectorXd::Zero(4), 0.0, "x"), Error);
  }
  SUBCASE("ties enter in position order") {
    const std::vector<Index> order = significance_order(Eigen::Vector4d(1, -2, 2, 1));
    CHECK(order == std::vector<Index>{1, 2, 0, 3});
  }
  SUBCASE("Parseval curve matches explicit reconstruction") {
    const DualDomain d = build_dual_domain(gen_path(16));
    const PacketDictionary dict = build_dictionary(d, DictionaryKind::VM);
    std::mt19937_64 rng(6);
    const Eigen::VectorXd f = oracle::random_vector(16, rng);
    const BasisSelection sel = best_basis(dict, analyze(dict, f));
    const ErrorCurve curve = topk_error_curve(sel, f, "bb", 1.0);
    REQUIRE(curve.errors.size() == 17);
    for (std::size_t k = 0; k < curve.errors.size(); ++k) {
      CHECK(std::abs(curve.errors[k] - oracle::explicit_topk_error(sel.basis, f, Index(k))) < 1e-10);
      if (k > 0) CHECK(curve.errors[k] <= curve.errors[k - 1]);
    }
    CHECK(curve.errors.front() == doctest::Approx(1.0));
    CHECK(curve.errors.back() < 1e-10);
  }
  SUBCASE("basis comparison") {
    const DualDomain d = build_dual_domain(gen_path(16));
    const PacketDictionary dict = build_dictionary(d, DictionaryKind::VM);
    const BasisSelection leaves = leaf_basis(dict);
    const auto curves = compare_bases(d.eigen.vectors.col(2), {{"a", &leaves}, {"b", &leaves}},
                                      &d.eigen);
    REQUIRE(curves.size() == 3);
    CHECK(curves[0].errors == curves[1].errors);
    CHECK(curves[2].label == "eigenbasis");
    CHECK(curves[2].errors[1] < 1e-10);
  }
}
