#include "ngwp/datasets.hpp"
#include "ngwp/dual_geometry.hpp"
#include "ngwp/error.hpp"
#include "ngwp/spectral.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace ngwp;

TEST_CASE("absolute gradient") {
  const Graph p3 = gen_path(3);
  const IncidenceMatrix q = build_incidence(p3);
  const Eigen::Vector3d phi = Eigen::Vector3d(1, 0, -1) / std::sqrt(2.0);
  const Eigen::VectorXd g = abs_gradient(q, phi);
  CHECK(g.size() == 2);
  CHECK(g(0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(g(1) == doctest::Approx(1 / std::sqrt(2.0)));

  std::mt19937_64 rng(2);
  const Graph r = oracle::random_connected_graph(10, 0.3, rng, false);
  const EigenSystem es = eigendecompose(r);
  CHECK(abs_gradient(build_incidence(r), es.vectors.col(0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(abs_gradient(q, Eigen::VectorXd::Zero(4)), Error);
}

TEST_CASE("DAG distances match the edge-loop oracle and the expansion identity") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    const Graph g = oracle::random_connected_graph(20, 0.15, rng);
    const EigenSystem es = eigendecompose(g);
    const IncidenceMatrix q = build_incidence(g);
    const Eigen::MatrixXd d = dag_distance_matrix(es, q);
    for (Index i = 0; i < 20; ++i) {
      for (Index j = 0; j < 20; ++j) {
        const double ref = oracle::dag_distance(g.edges(), es.vectors.col(i), es.vectors.col(j));
        CHECK(std::abs(d(i, j) - ref) < 1e-12);
        CHECK(std::abs(dag_distance(q, es.vectors.col(i), es.vectors.col(j)) - ref) < 1e-12);
        double corr = 0.0;
        for (const Edge& e : g.edges()) {
          corr += 2.0 * e.w * std::abs(es.vectors(e.i, i) - es.vectors(e.j, i)) *
                  std::abs(es.vectors(e.i, j) - es.vectors(e.j, j));
        }
        CHECK(std::abs(d(i, j) * d(i, j) - (es.values(i) + es.values(j) - corr)) < 1e-10);
      }
    }
  }
}

TEST_CASE("pseudometric axioms and orientation invariance") {
  std::mt19937_64 rng(8);
  const Graph g = oracle::random_connected_graph(15, 0.2, rng);
  const EigenSystem es = eigendecompose(g);
  const Eigen::MatrixXd d = dag_distance_matrix(es, build_incidence(g));
  CHECK(d.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.minCoeff() >= 0.0);
  for (Index a = 0; a < 15; ++a) {
    for (Index b = 0; b < 15; ++b) {
      for (Index c = 0; c < 15; ++c) CHECK(d(a, c) <= d(a, b) + d(b, c) + 1e-12);
    }
  }
  std::vector<bool> flip(g.edges().size());
  for (std::size_t k = 0; k < flip.size(); ++k) flip[k] = (rng() & 1u) != 0;
  const Eigen::MatrixXd d2 = dag_distance_matrix(es, build_incidence(g, flip));
  CHECK((d - d2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("path graph structure") {
  SUBCASE("P8 distance grows with frequency separation") {
    const Graph p8 = gen_path(8);
    const EigenSystem es = eigendecompose(p8);
    const IncidenceMatrix q = build_incidence(p8);
    CHECK(dag_distance(q, es.vectors.col(0), es.vectors.col(1)) <
          dag_distance(q, es.vectors.col(0), es.vectors.col(7)));
  }
  SUBCASE("P16 nearest dual neighbors") {
    const Graph p16 = gen_path(16);
    const EigenSystem es = eigendecompose(p16);
    const Eigen::MatrixXd d = dag_distance_matrix(es, build_incidence(p16));
    auto nearest = [](const std::function<double(Index, Index)>& dist, Index k) {
      Index best = -1;
      for (Index m = 0; m < 16; ++m) {
        if (m != k && (best < 0 || dist(k, m) < dist(k, best))) best = m;
      }
      return best;
    };
    const auto lib = [&](Index a, Index b) { return d(a, b); };
    const auto ref = [&](Index a, Index b) {
      return oracle::dag_distance(p16.edges(), oracle::dct_mode(16, a), oracle::dct_mode(16, b));
    };
    for (Index k = 0; k < 16; ++k) {
      CAPTURE(k);
      CHECK(nearest(lib, k) == nearest(ref, k));
    }
    // Low frequencies sit next to their spectral neighbors.
    for (Index k = 1; k <= 4; ++k) CHECK(std::abs(nearest(lib, k) - k) == 1);
    // Near N/2, |sin(k pi l / N)| = |sin((N - k) pi l / N)| makes phi_k and
    // phi_{N-k} almost coincide in the dual geometry.
    CHECK(nearest(lib, 7) == 9);
    CHECK(nearest(lib, 9) == 7);
    CHECK(nearest(lib, 6) == 10);
  }
}

TEST_CASE("dual graph weights") {
  const Graph p2 = gen_path(2);
  const DualGraph dg = build_dual_graph(eigendecompose(p2), build_incidence(p2));
  CHECK(dg.size() == 2);
  CHECK(dg.dist(0, 1) == dg.dist(1, 0));
  CHECK(dg.weights(0, 1) == doctest::Approx(1.0 / dg.dist(0, 1)));
  CHECK(dg.weights(0, 0) == 0.0);

  SUBCASE("coincident features get a capped finite weight") {
    Eigen::Matrix3d dist{{0, 0, 2}, {0, 0, 4}, {2, 4, 0}};
    const DualGraph g = build_dual_graph(Eigen::MatrixXd(dist));
    CHECK(g.weights(0, 2) == 0.5);
    CHECK(g.weights(1, 2) == 0.25);
    CHECK(g.weights(0, 1) == 0.5 * kCoincidentWeightFactor);
    CHECK(g.weights.allFinite());
  }
  SUBCASE("C6 multiplet distance is finite") {
    std::vector<Edge> e;
    for (Index i = 0; i < 6; ++i) e.push_back({i, (i + 1) % 6, 1.0});
    const Graph c6(6, e);
    const DualGraph g = build_dual_graph(eigendecompose(c6), build_incidence(c6));
    CHECK(std::isfinite(g.dist(1, 2)));
    CHECK(g.dist(1, 2) >= 0.0);
    CHECK(g.weights.allFinite());
  }
}
