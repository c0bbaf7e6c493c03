#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rgm/dense.hpp"

namespace rgm {

struct Ranked {
  std::size_t index;
  double value;
  friend bool operator==(const Ranked&, const Ranked&) = default;
};

/// k largest off-diagonal entries of column j, descending, ties by ascending
/// row index.
std::vector<Ranked> top_friends(const DenseMatrix& m, std::size_t j, std::size_t k);

/// Same over row j.
std::vector<Ranked> top_followers(const DenseMatrix& m, std::size_t j, std::size_t k);

enum class FriendMode { friends, followers };

struct FriendEdge {
  std::size_t src;
  std::size_t dst;
  double value;
  friend bool operator==(const FriendEdge&, const FriendEdge&) = default;
};

/// Friends edges run leader -> friend, followers edges follower -> leader.
struct FriendNetwork {
  std::vector<std::string> labels;   ///< labels of all matrix nodes
  std::vector<std::size_t> nodes;    ///< reached nodes, in discovery order
  std::vector<FriendEdge> primary_edges;
  std::vector<FriendEdge> closure_edges;
  std::vector<double> node_weights;  ///< PageRank probability per matrix node
  FriendMode mode = FriendMode::friends;
};

/// Top-k edges of every leader, then of every newly reached node until no new
/// node appears. Throws InvalidArgument for repeated or out-of-range leaders,
/// k >= order, or mismatched label/weight lengths.
FriendNetwork build_network(const DenseMatrix& m, std::span<const std::size_t> leaders, std::size_t k,
                            FriendMode mode, std::span<const double> weights,
                            std::span<const std::string> labels);

struct DotStyle {
  std::string primary_attrs = "style=bold, color=black";
  std::string closure_attrs = "color=red";
  /// Node width in inches for the node with the largest weight.
  double max_node_size = 1.5;
};

/// Graphviz digraph. Nodes and edges are sorted by label; node width and
/// height are proportional to the node weight.
std::string export_dot(const FriendNetwork& net, const DotStyle& style = {});

}  // namespace rgm
