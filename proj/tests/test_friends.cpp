#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "rgm/error.hpp"
#include "rgm/friends.hpp"
#include "rgm/io.hpp"
#include "test_support.hpp"

using namespace rgm;

namespace {

std::vector<std::string> letters(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(std::string(1, static_cast<char>('A' + k)));
  return out;
}

std::vector<double> uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

// Brute force: sort every off-diagonal entry of the column with a full sort.
std::vector<Ranked> sorted_column(const DenseMatrix& m, std::size_t j, std::size_t k) {
  std::vector<Ranked> all;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (i != j) all.push_back({i, m(i, j)});
  std::stable_sort(all.begin(), all.end(), [](const Ranked& a, const Ranked& b) { return a.value > b.value; });
  all.resize(k);
  return all;
}

using oracle::EdgeSet;

EdgeSet edge_set(const FriendNetwork& net) {
  EdgeSet out;
  for (const auto& e : net.primary_edges) out.emplace(e.src, e.dst, true);
  for (const auto& e : net.closure_edges) out.emplace(e.src, e.dst, false);
  return out;
}

FriendNetwork network(const DenseMatrix& m, std::vector<std::size_t> leaders, std::size_t k,
                      FriendMode mode = FriendMode::friends) {
  const auto w = uniform(m.rows());
  const auto l = letters(m.rows());
  return build_network(m, leaders, k, mode, w, l);
}

}  // namespace

TEST_CASE("top_friends") {
  DenseMatrix m(5, 5);
  const double col[] = {0.1, 0.9, 0.5, 0.3, 0.2};
  for (std::size_t i = 0; i < 5; ++i) m(i, 1) = col[i];
  CHECK(top_friends(m, 1, 2) == std::vector<Ranked>{{2, 0.5}, {3, 0.3}});

  DenseMatrix flat(4, 4);
  for (double& v : flat.values()) v = 0.25;
  CHECK(top_friends(flat, 0, 2) == std::vector<Ranked>{{1, 0.25}, {2, 0.25}});
  CHECK(top_followers(flat, 1, 2) == std::vector<Ranked>{{0, 0.25}, {2, 0.25}});

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto r = test::random_stochastic(10, seed);
    r(3, 4) = r(5, 4);  // force a tie
    for (std::size_t j = 0; j < 10; ++j) {
      CHECK(top_friends(r, j, 4) == sorted_column(r, j, 4));
      CHECK(top_friends(r.transposed(), j, 4) == top_followers(r, j, 4));
    }
  }
  CHECK_THROWS_AS(top_friends(flat, 4, 1), InvalidArgument);
}

TEST_CASE("build_network: k = 1 cycle closes on itself") {
  // Strongest link out of each node: 0 -> 1 -> 2 -> 0.
  const DenseMatrix m{{0.1, 0.1, 0.7, 0.1}, {0.7, 0.1, 0.1, 0.3}, {0.1, 0.7, 0.1, 0.3}, {0.1, 0.1, 0.1, 0.3}};
  const auto net = network(m, {0}, 1);
  CHECK(net.nodes == std::vector<std::size_t>{0, 1, 2});
  CHECK(net.primary_edges == std::vector<FriendEdge>{{0, 1, 0.7}});
  CHECK(net.closure_edges == std::vector<FriendEdge>{{1, 2, 0.7}, {2, 0, 0.7}});
}

TEST_CASE("build_network: saturation with k = N - 1") {
  const auto m = test::random_stochastic(6, 8);
  const auto net = network(m, {2}, 5);
  CHECK(net.nodes.size() == 6);
  CHECK(net.primary_edges.size() == 5);
  CHECK(net.closure_edges.size() == 25);
}

TEST_CASE("build_network: seeded matrices against the closure oracle") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto m = test::random_stochastic(10, seed);
    const std::vector<std::size_t> leaders{seed % 10, (seed + 5) % 10};
    const auto net = network(m, leaders, 4);
    CHECK(edge_set(net) == oracle::friend_closure(m, leaders, 4));
    CHECK(edge_set(net).size() == net.primary_edges.size() + net.closure_edges.size());
    CHECK(net.primary_edges.size() == 8);

    // Closing the reached set again adds nothing new.
    const auto again = network(m, net.nodes, 4);
    CHECK(again.closure_edges.empty());
    CHECK(again.primary_edges.size() == net.primary_edges.size() + net.closure_edges.size());

    // Followers of m are friends of the transpose, with edges reversed.
    const auto fol = network(m, leaders, 4, FriendMode::followers);
    EdgeSet reversed;
    for (const auto& [s, d, p] : oracle::friend_closure(m.transposed(), leaders, 4)) reversed.emplace(d, s, p);
    CHECK(edge_set(fol) == reversed);
  }
}

TEST_CASE("build_network validates its inputs") {
  const auto m = test::random_stochastic(4, 1);
  CHECK_THROWS_AS(network(m, {1, 1}, 2), InvalidArgument);
  CHECK_THROWS_AS(network(m, {7}, 2), InvalidArgument);
  CHECK_THROWS_AS(network(m, {0}, 4), InvalidArgument);
  CHECK_THROWS_AS(network(m, {0}, 0), InvalidArgument);
}

TEST_CASE("export_dot") {
  SUBCASE("empty network") { CHECK(export_dot(FriendNetwork{}) == "digraph {\n}\n"); }
  SUBCASE("two nodes, one edge") {
    FriendNetwork net;
    net.labels = {"France", "Germany"};
    net.nodes = {0, 1};
    net.node_weights = {0.2, 0.1};
    net.primary_edges = {{0, 1, 0.4}};
    CHECK(export_dot(net) ==
          "digraph {\n"
          "  \"France\" [width=1.5000, height=1.5000, fixedsize=true];\n"
          "  \"Germany\" [width=0.7500, height=0.7500, fixedsize=true];\n"
          "  \"France\" -> \"Germany\" [style=bold, color=black];\n"
          "}\n");
  }
  SUBCASE("deterministic and sorted by label") {
    const auto m = test::random_stochastic(10, 5);
    const auto a = export_dot(network(m, {3, 7}, 3));
    CHECK(a == export_dot(network(m, {3, 7}, 3)));
    std::istringstream in(a);
    std::string line, prev_edge;
    std::size_t red = 0;
    while (std::getline(in, line)) {
      if (line.find("->") == std::string::npos) continue;
      CHECK(prev_edge <= line);
      prev_edge = line;
      if (line.find("color=red") != std::string::npos) ++red;
    }
    CHECK(red == network(m, {3, 7}, 3).closure_edges.size());
  }
}

TEST_CASE("friend edge CSV") {
  const DenseMatrix m{{0.1, 0.1, 0.7, 0.1}, {0.7, 0.1, 0.1, 0.3}, {0.1, 0.7, 0.1, 0.3}, {0.1, 0.1, 0.1, 0.3}};
  std::ostringstream out;
  io::write_friend_edges_csv(out, network(m, {0}, 1));
  CHECK(out.str() ==
        "src_label,dst_label,value,kind\n"
        "A,B,6.9999999999999996e-01,primary\n"
        "B,C,6.9999999999999996e-01,closure\n"
        "C,A,6.9999999999999996e-01,closure\n");
}
