#include <numeric>

#include "doctest.h"
#include "oracle.hpp"
#include "rgm/error.hpp"
#include "rgm/google.hpp"
#include "test_support.hpp"

using namespace rgm;

TEST_CASE("gmatvec: two nodes, node 1 dangling") {
  const auto g = DirectedGraph::from_edges(2, {{0, 1}});
  const GoogleMatrix gm(g, 0.85);
  const auto y = gm.apply(std::vector<double>{1.0, 0.0});
  CHECK(y[0] == doctest::Approx(0.075).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(0.925).epsilon(1e-15));
}

TEST_CASE("gmatvec matches the dense oracle and preserves mass") {
  const auto g = generate_synthetic(50, 250, 21, GraphModel::preferential);
  const GoogleMatrix gm(g, 0.85);
  const auto dense = oracle::dense_google(g, 0.85);
  const auto v = test::random_vector(50, 5, -1.0, 1.0);
  CHECK(test::max_abs_diff(gm.apply(v), dense.apply(v)) <= 1e-12);

  auto p = test::random_vector(50, 6);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  const auto q = gm.apply(p);
  CHECK(std::accumulate(q.begin(), q.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));

  std::vector<double> w(50), wt(50);
  gm.apply_transpose(v, wt);
  CHECK(test::max_abs_diff(wt, dense.apply_transpose(v)) <= 1e-12);
  for (NodeId j = 0; j < 50; ++j) {
    const auto col = gm.column(j);
    for (std::size_t i = 0; i < 50; ++i) CHECK(col[i] == doctest::Approx(dense(i, j)).epsilon(1e-15));
  }
}

TEST_CASE("column stochasticity on every basis vector") {
  const auto g = generate_synthetic(80, 300, 2, GraphModel::uniform);
  const GoogleMatrix gm(g, 0.85);
  std::vector<double> e(80, 0.0), y(80);
  for (std::size_t j = 0; j < 80; ++j) {
    e[j] = 1.0;
    gm.apply(e, y);
    CHECK(std::abs(std::accumulate(y.begin(), y.end(), 0.0) - 1.0) <= 1e-12);
    e[j] = 0.0;
  }
}

TEST_CASE("dangling-free graphs need no dangling correction") {
  // Every node of a 2-regular ring has out-links.
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < 20; ++i) {
    edges.emplace_back(i, (i + 1) % 20);
    edges.emplace_back(i, (i + 7) % 20);
  }
  const auto g = DirectedGraph::from_edges(20, edges);
  REQUIRE(g.dangling_nodes().empty());
  const GoogleMatrix gm(g, 0.85);
  const auto v = test::random_vector(20, 3);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  std::vector<double> plain(20, 0.15 * total / 20.0);
  for (NodeId j = 0; j < 20; ++j)
    for (NodeId i : g.out_neighbors(j)) plain[i] += 0.85 * v[j] / 2.0;
  CHECK(test::max_abs_diff(gm.apply(v), plain) <= 1e-15);
}

TEST_CASE("alpha must lie in (0,1)") {
  const auto g = DirectedGraph::from_edges(2, {{0, 1}});
  CHECK_THROWS_AS(GoogleMatrix(g, 1.0), InvalidArgument);
  CHECK_THROWS_AS(GoogleMatrix(g, 0.0), InvalidArgument);
  const GoogleMatrix gm(g, 0.85);
  std::vector<double> x(3), y(2);
  CHECK_THROWS_AS(gm.apply(x, y), InvalidArgument);
}

TEST_CASE("pagerank: symmetric cycles") {
  const auto two = DirectedGraph::from_edges(2, {{0, 1}, {1, 0}});
  const auto p2 = pagerank(GoogleMatrix(two));
  CHECK(p2.p[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p2.p[1] == doctest::Approx(0.5).epsilon(1e-14));
  const auto three = DirectedGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  const auto p3 = pagerank(GoogleMatrix(three));
  for (double v : p3.p) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(p3.order == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("pagerank matches the dense eigen-decomposition oracle") {
  const auto g = generate_synthetic(50, 200, 31, GraphModel::preferential);
  const GoogleMatrix gm(g, 0.85);
  const auto rv = pagerank(gm);
  const auto ref = oracle::eigen_stationary(oracle::dense_google(g, 0.85));
  CHECK(test::l1_diff(rv.p, ref) <= 1e-9);

  const auto gp = gm.apply(rv.p);
  CHECK(test::l1_diff(gp, rv.p) <= 1e-12);
  CHECK(std::abs(std::accumulate(rv.p.begin(), rv.p.end(), 0.0) - 1.0) <= 1e-12);
  for (double v : rv.p) CHECK(v >= 0.0);
  for (std::size_t t = 1; t < rv.residual_history.size(); ++t)
    CHECK(rv.residual_history[t] <= 0.85 * rv.residual_history[t - 1] + 1e-12);
}

TEST_CASE("pagerank reports non-convergence with the last residual") {
  const auto g = generate_synthetic(50, 200, 31, GraphModel::uniform);
  try {
    pagerank(GoogleMatrix(g), {1e-12, 3});
    FAIL("expected non-convergence");
  } catch (const NumericalError& e) {
    CHECK(e.residual() > 1e-12);
  }
  CHECK_THROWS_AS(pagerank(GoogleMatrix(g), {0.0, 10}), InvalidArgument);
}

TEST_CASE("cheirank") {
  SUBCASE("symmetric edge set gives cheirank == pagerank") {
    auto g = generate_synthetic(40, 150, 8, GraphModel::uniform);
    auto edges = g.edges();
    for (auto [a, b] : g.edges()) edges.emplace_back(b, a);
    const auto sym = DirectedGraph::from_edges(40, edges);
    CHECK(test::l1_diff(cheirank(sym).p, pagerank(GoogleMatrix(sym)).p) <= 1e-13);
  }
  SUBCASE("2-cycle") {
    const auto two = DirectedGraph::from_edges(2, {{0, 1}, {1, 0}});
    const auto c = cheirank(two);
    CHECK(c.p[0] == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("seeded 50-node graph equals the inverted-graph oracle") {
    const auto g = generate_synthetic(50, 220, 12, GraphModel::preferential);
    const auto ref = oracle::eigen_stationary(oracle::dense_google(invert(g), 0.85));
    CHECK(test::l1_diff(cheirank(g).p, ref) <= 1e-9);
  }
}

TEST_CASE("rank_order and local ranks") {
  CHECK(rank_order(std::vector<double>{0.2, 0.5, 0.3}) == std::vector<NodeId>{1, 2, 0});
  CHECK(rank_order(std::vector<double>(5, 0.2)) == std::vector<NodeId>{0, 1, 2, 3, 4});

  const auto g = generate_synthetic(30, 120, 17, GraphModel::preferential);
  const auto rv = pagerank(GoogleMatrix(g));
  const auto subset = make_subset(g, {4, 9, 2});
  const auto local = local_ranks(rv.order, subset);
  // Sort-based oracle: order subset members by (-p, index).
  std::vector<std::size_t> members{0, 1, 2};
  std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
    const auto ia = subset.indices[a], ib = subset.indices[b];
    return rv.p[ia] > rv.p[ib] || (rv.p[ia] == rv.p[ib] && ia < ib);
  });
  for (std::size_t k = 0; k < 3; ++k) CHECK(local[members[k]] == k + 1);
  const auto pos = rank_positions(rv.order);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      if (local[a] < local[b]) CHECK(pos[subset.indices[a]] < pos[subset.indices[b]]);
}
