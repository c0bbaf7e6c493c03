#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rgm/graph.hpp"

namespace rgm {

/// Implicit Google matrix G = alpha S + (1 - alpha)/N of a graph.
/// Dangling columns of S are uniform 1/N. Holds a reference to the graph,
/// which must outlive it.
class GoogleMatrix {
public:
  explicit GoogleMatrix(const DirectedGraph& graph, double alpha = 0.85);

  const DirectedGraph& graph() const noexcept { return *graph_; }
  double alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return graph_->node_count(); }

  /// y = G x. Throws InvalidArgument on a length mismatch.
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;
  /// y = G^T x
  void apply_transpose(std::span<const double> x, std::span<double> y) const;
  /// Y = G X, X row-major N x k.
  void apply_block(std::span<const double> x, std::span<double> y, std::size_t k) const;

  /// Column j of G, length N.
  std::vector<double> column(NodeId j) const;

private:
  const DirectedGraph* graph_;
  double alpha_;
};

struct RankVector {
  std::vector<double> p;
  /// Node indices by decreasing p, ties by ascending index.
  std::vector<NodeId> order;
  double residual = 0.0;
  std::size_t iterations = 0;
  /// L1 residual after each iteration.
  std::vector<double> residual_history;
};

struct PowerOptions {
  double tol = 1e-12;
  std::size_t max_iter = 10000;
};

/// Stationary vector of G by power iteration from 1/N, stopped once
/// ||G p - p||_1 <= tol. Throws NumericalError carrying the last residual.
RankVector pagerank(const GoogleMatrix& g, const PowerOptions& opts = {});

/// PageRank of the link-inverted graph with the same damping factor.
RankVector cheirank(const DirectedGraph& graph, double alpha = 0.85, const PowerOptions& opts = {});

/// Nodes sorted by decreasing probability, ties by ascending index.
std::vector<NodeId> rank_order(std::span<const double> p);

/// rank[i] = 1-based position of node i in `order`.
std::vector<std::size_t> rank_positions(std::span<const NodeId> order);

/// Local 1-based ranks of subset nodes, keeping their relative global order.
/// Result is aligned with `subset.indices`.
std::vector<std::size_t> local_ranks(std::span<const NodeId> order, const NodeSubset& subset);

}  // namespace rgm
