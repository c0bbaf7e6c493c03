#include "rgm/friends.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "rgm/error.hpp"

namespace rgm {

namespace {

std::vector<Ranked> top_k(std::vector<Ranked> entries, std::size_t k) {
  const auto by_value = [](const Ranked& a, const Ranked& b) {
    return a.value > b.value || (a.value == b.value && a.index < b.index);
  };
  k = std::min(k, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k), entries.end(), by_value);
  entries.resize(k);
  return entries;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::vector<Ranked> top_friends(const DenseMatrix& m, std::size_t j, std::size_t k) {
  if (j >= m.cols()) throw InvalidArgument("column index out of range");
  std::vector<Ranked> entries;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (i != j) entries.push_back({i, m(i, j)});
  return top_k(std::move(entries), k);
}

std::vector<Ranked> top_followers(const DenseMatrix& m, std::size_t j, std::size_t k) {
  if (j >= m.rows()) throw InvalidArgument("row index out of range");
  std::vector<Ranked> entries;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (c != j) entries.push_back({c, m(j, c)});
  return top_k(std::move(entries), k);
}

FriendNetwork build_network(const DenseMatrix& m, std::span<const std::size_t> leaders, std::size_t k,
                            FriendMode mode, std::span<const double> weights,
                            std::span<const std::string> labels) {
  const auto n = m.rows();
  if (!m.square()) throw InvalidArgument("friends network needs a square matrix");
  if (k == 0 || k >= n) throw InvalidArgument("k must satisfy 0 < k < matrix order");
  if (weights.size() != n || labels.size() != n) throw InvalidArgument("weights/labels must match the matrix order");

  FriendNetwork net;
  net.labels.assign(labels.begin(), labels.end());
  net.node_weights.assign(weights.begin(), weights.end());
  net.mode = mode;

  std::vector<char> reached(n, 0);
  for (std::size_t l : leaders) {
    if (l >= n) throw InvalidArgument("leader index out of range");
    if (reached[l]) throw InvalidArgument("repeated leader");
    reached[l] = 1;
    net.nodes.push_back(l);
  }

  auto expand = [&](std::size_t node, std::vector<FriendEdge>& sink, std::vector<std::size_t>& fresh) {
    const auto top = mode == FriendMode::friends ? top_friends(m, node, k) : top_followers(m, node, k);
    for (const auto& r : top) {
      if (mode == FriendMode::friends)
        sink.push_back({node, r.index, r.value});
      else
        sink.push_back({r.index, node, r.value});
      if (!reached[r.index]) {
        reached[r.index] = 1;
        net.nodes.push_back(r.index);
        fresh.push_back(r.index);
      }
    }
  };

  std::vector<std::size_t> frontier;
  for (std::size_t l : leaders) expand(l, net.primary_edges, frontier);
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t node : frontier) expand(node, net.closure_edges, next);
    frontier.swap(next);
  }
  return net;
}

std::string export_dot(const FriendNetwork& net, const DotStyle& style) {
  std::ostringstream out;
  out << "digraph {\n";
  auto label = [&](std::size_t i) { return net.labels.at(i); };

  std::vector<std::size_t> nodes = net.nodes;
  std::sort(nodes.begin(), nodes.end(), [&](std::size_t a, std::size_t b) { return label(a) < label(b); });
  double max_w = 0.0;
  for (std::size_t i : nodes) max_w = std::max(max_w, net.node_weights.at(i));
  for (std::size_t i : nodes) {
    const double size = max_w > 0.0 ? style.max_node_size * net.node_weights[i] / max_w : style.max_node_size;
    out << "  " << quote(label(i)) << " [width=" << fmt(size) << ", height=" << fmt(size)
        << ", fixedsize=true];\n";
  }

  struct Line {
    std::string src, dst;
    bool primary;
  };
  std::vector<Line> lines;
  for (const auto& e : net.primary_edges) lines.push_back({label(e.src), label(e.dst), true});
  for (const auto& e : net.closure_edges) lines.push_back({label(e.src), label(e.dst), false});
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  for (const auto& l : lines)
    out << "  " << quote(l.src) << " -> " << quote(l.dst) << " ["
        << (l.primary ? style.primary_attrs : style.closure_attrs) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace rgm
