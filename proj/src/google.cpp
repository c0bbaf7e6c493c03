#include "rgm/google.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rgm/error.hpp"
#include "rgm/kernels.hpp"

namespace rgm {

GoogleMatrix::GoogleMatrix(const DirectedGraph& graph, double alpha) : graph_(&graph), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("damping factor must lie in (0, 1)");
}

void GoogleMatrix::apply(std::span<const double> x, std::span<double> y) const {
  kernels::google_apply(*graph_, alpha_, x, y);
}

std::vector<double> GoogleMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(size());
  apply(x, y);
  return y;
}

void GoogleMatrix::apply_transpose(std::span<const double> x, std::span<double> y) const {
  kernels::google_apply_transpose(*graph_, alpha_, x, y);
}

void GoogleMatrix::apply_block(std::span<const double> x, std::span<double> y, std::size_t k) const {
  kernels::google_apply_block(*graph_, alpha_, x, y, k);
}

std::vector<double> GoogleMatrix::column(NodeId j) const {
  const auto n = size();
  const double nd = static_cast<double>(n);
  const auto nb = graph_->out_neighbors(j);
  if (nb.empty()) return std::vector<double>(n, 1.0 / nd);
  std::vector<double> col(n, (1.0 - alpha_) / nd);
  const double link = alpha_ / static_cast<double>(nb.size());
  for (NodeId i : nb) col[i] += link;
  return col;
}

RankVector pagerank(const GoogleMatrix& g, const PowerOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const auto n = g.size();
  if (n == 0) throw InvalidArgument("pagerank of an empty graph");
  RankVector rv;
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    g.apply(p, next);
    const double s = kernels::sum(next);
    for (double& v : next) v /= s;
    const double r = kernels::l1_distance(next, p);
    p.swap(next);
    rv.residual = r;
    rv.iterations = it;
    rv.residual_history.push_back(r);
    if (r <= opts.tol) {
      rv.p = std::move(p);
      rv.order = rank_order(rv.p);
      return rv;
    }
  }
  throw NumericalError("pagerank did not converge in " + std::to_string(opts.max_iter) +
                           " iterations (residual " + std::to_string(rv.residual) + ")",
                       rv.residual);
}

RankVector cheirank(const DirectedGraph& graph, double alpha, const PowerOptions& opts) {
  const auto inv = invert(graph);
  return pagerank(GoogleMatrix(inv, alpha), opts);
}

std::vector<NodeId> rank_order(std::span<const double> p) {
  std::vector<NodeId> order(p.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return p[a] > p[b]; });
  return order;
}

std::vector<std::size_t> rank_positions(std::span<const NodeId> order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k + 1;
  return pos;
}

std::vector<std::size_t> local_ranks(std::span<const NodeId> order, const NodeSubset& subset) {
  const auto global = rank_positions(order);
  std::vector<std::size_t> idx(subset.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return global[subset.indices[a]] < global[subset.indices[b]]; });
  std::vector<std::size_t> local(subset.size());
  for (std::size_t k = 0; k < idx.size(); ++k) local[idx[k]] = k + 1;
  return local;
}

}  // namespace rgm
