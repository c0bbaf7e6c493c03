#include "rgm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "rgm/error.hpp"

namespace rgm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<std::uint64_t> parse_index(std::string_view tok) {
  std::uint64_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Builds offsets/targets of a CSR keyed by `key` from edges already sorted by
// (key, value).
void build_csr(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& sorted,
               std::vector<std::size_t>& offsets, std::vector<NodeId>& values) {
  offsets.assign(n + 1, 0);
  values.resize(sorted.size());
  for (const auto& e : sorted) ++offsets[e.first + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  for (std::size_t k = 0; k < sorted.size(); ++k) values[k] = sorted[k].second;
}

}  // namespace

DirectedGraph DirectedGraph::from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
  DirectedGraph g;
  g.n_ = n;
  LoadStats st;
  st.nodes = n;

  std::erase_if(edges, [&](const auto& e) {
    if (e.first >= n || e.second >= n) throw InvalidArgument("edge endpoint out of range");
    if (e.first == e.second) {
      ++st.self_loops_dropped;
      return true;
    }
    return false;
  });
  std::sort(edges.begin(), edges.end());
  const auto before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  st.duplicates_dropped = before - edges.size();
  st.edges_kept = edges.size();

  build_csr(n, edges, g.out_offsets_, g.out_targets_);

  for (auto& e : edges) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  build_csr(n, edges, g.in_offsets_, g.in_sources_);

  g.inv_out_degree_.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto k = g.out_degree(static_cast<NodeId>(j));
    if (k == 0)
      g.dangling_.push_back(static_cast<NodeId>(j));
    else
      g.inv_out_degree_[j] = 1.0 / static_cast<double>(k);
  }
  g.stats_ = st;
  return g;
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (std::size_t j = 0; j < n_; ++j)
    for (NodeId i : out_neighbors(static_cast<NodeId>(j))) out.emplace_back(static_cast<NodeId>(j), i);
  return out;
}

std::string DirectedGraph::label(NodeId i) const {
  if (i < labels_.size() && !labels_[i].empty()) return labels_[i];
  return std::to_string(i);
}

std::optional<NodeId> DirectedGraph::find_label(std::string_view label) const {
  if (auto it = label_index_.find(std::string(label)); it != label_index_.end()) return it->second;
  if (auto v = parse_index(label); v && *v < n_) {
    const auto i = static_cast<NodeId>(*v);
    if (labels_.empty() || labels_[i].empty()) return i;
  }
  return std::nullopt;
}

void DirectedGraph::set_labels(const std::vector<std::pair<NodeId, std::string>>& entries) {
  std::vector<std::string> labels(n_);
  std::unordered_map<std::string, NodeId> index;
  for (const auto& [i, label] : entries) {
    if (i >= n_)
      throw InvalidArgument("label index " + std::to_string(i) + " out of range (N=" + std::to_string(n_) + ")");
    if (label.empty()) throw InvalidArgument("empty label for node " + std::to_string(i));
    if (!labels[i].empty()) throw InvalidArgument("node " + std::to_string(i) + " labeled twice");
    if (!index.emplace(label, i).second) throw InvalidArgument("duplicate label '" + label + "'");
    labels[i] = label;
  }
  labels_ = std::move(labels);
  label_index_ = std::move(index);
}

DirectedGraph load_edge_list(std::istream& in, std::istream* labels) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::optional<std::size_t> declared_n;
  std::uint64_t max_index = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      auto body = trim(s.substr(1));
      if (body.starts_with("nodes:")) {
        auto v = parse_index(trim(body.substr(6)));
        if (!v) throw ParseError("malformed node count header", lineno);
        declared_n = *v;
      }
      continue;
    }
    const auto tok = split_ws(s);
    if (tok.size() != 2) throw ParseError("expected 'src dst', got '" + std::string(s) + "'", lineno);
    const auto src = parse_index(tok[0]);
    const auto dst = parse_index(tok[1]);
    if (!src || !dst) throw ParseError("node ids must be non-negative integers", lineno);
    if (*src > UINT32_MAX - 1 || *dst > UINT32_MAX - 1) throw ParseError("node id too large", lineno);
    max_index = std::max({max_index, *src, *dst});
    any = true;
    edges.emplace_back(static_cast<NodeId>(*src), static_cast<NodeId>(*dst));
  }
  std::size_t n = any ? static_cast<std::size_t>(max_index) + 1 : 0;
  if (declared_n) {
    if (*declared_n < n) throw ParseError("node count header smaller than largest node id", 0);
    n = *declared_n;
  }
  auto g = DirectedGraph::from_edges(n, std::move(edges));

  if (labels) {
    std::vector<std::pair<NodeId, std::string>> entries;
    lineno = 0;
    while (std::getline(*labels, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim(line).empty() || trim(line).front() == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw ParseError("expected 'index<TAB>label'", lineno);
      const auto idx = parse_index(trim(std::string_view(line).substr(0, tab)));
      if (!idx) throw ParseError("label index must be a non-negative integer", lineno);
      if (*idx >= n)
        throw ParseError("label index " + std::to_string(*idx) + " out of range (N=" + std::to_string(n) + ")",
                         lineno);
      entries.emplace_back(static_cast<NodeId>(*idx), line.substr(tab + 1));
    }
    g.set_labels(entries);
  }
  return g;
}

void write_edge_list(const DirectedGraph& g, std::ostream& out) {
  out << "# nodes: " << g.node_count() << '\n';
  for (const auto& [src, dst] : g.edges()) out << src << ' ' << dst << '\n';
}

void write_label_map(const DirectedGraph& g, std::ostream& out) {
  const auto& labels = g.labels();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!labels[i].empty()) out << i << '\t' << labels[i] << '\n';
}

DirectedGraph invert(const DirectedGraph& g) {
  auto edges = g.edges();
  for (auto& e : edges) std::swap(e.first, e.second);
  auto inv = DirectedGraph::from_edges(g.node_count(), std::move(edges));
  std::vector<std::pair<NodeId, std::string>> entries;
  for (std::size_t i = 0; i < g.labels().size(); ++i)
    if (!g.labels()[i].empty()) entries.emplace_back(static_cast<NodeId>(i), g.labels()[i]);
  if (g.has_labels()) inv.set_labels(entries);
  return inv;
}

DirectedGraph generate_synthetic(std::size_t n, std::size_t m, std::uint64_t seed, GraphModel model) {
  if (n == 0 && m > 0) throw InvalidArgument("edges requested on an empty graph");
  const std::uint64_t capacity = static_cast<std::uint64_t>(n) * (n == 0 ? 0 : n - 1);
  if (m > capacity)
    throw InvalidArgument("infeasible edge count " + std::to_string(m) + " for " + std::to_string(n) +
                          " nodes (max " + std::to_string(capacity) + ")");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m);

  // Dense requests: pick m of the n(n-1) pairs directly.
  if (2 * m > capacity) {
    edges.reserve(capacity);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) edges.emplace_back(static_cast<NodeId>(j), static_cast<NodeId>(i));
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(m);
    return DirectedGraph::from_edges(n, std::move(edges));
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2 * m);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  // Preferential targets are drawn from a pool holding each node once plus
  // one extra copy per received edge, i.e. weight in_degree + 1.
  std::vector<NodeId> pool;
  if (model == GraphModel::preferential) {
    pool.reserve(n + m);
    for (std::size_t i = 0; i < n; ++i) pool.push_back(static_cast<NodeId>(i));
  }
  while (edges.size() < m) {
    const auto src = static_cast<NodeId>(pick(rng));
    NodeId dst;
    if (model == GraphModel::uniform) {
      dst = static_cast<NodeId>(pick(rng));
    } else {
      std::uniform_int_distribution<std::size_t> from_pool(0, pool.size() - 1);
      dst = pool[from_pool(rng)];
    }
    if (src == dst) continue;
    if (!seen.insert(static_cast<std::uint64_t>(src) * n + dst).second) continue;
    edges.emplace_back(src, dst);
    if (model == GraphModel::preferential) pool.push_back(dst);
  }
  return DirectedGraph::from_edges(n, std::move(edges));
}

NodeSubset resolve_subset(const DirectedGraph& g, const std::vector<std::string>& labels) {
  NodeSubset s;
  std::vector<std::string> unknown;
  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) throw InvalidArgument("duplicate label in subset: '" + label + "'");
    if (auto i = g.find_label(label)) {
      s.indices.push_back(*i);
      s.labels.push_back(label);
    } else {
      unknown.push_back(label);
    }
  }
  if (!unknown.empty()) {
    std::ostringstream msg;
    msg << "unknown label" << (unknown.size() > 1 ? "s" : "") << ":";
    for (const auto& u : unknown) msg << " '" << u << "'";
    throw InvalidArgument(msg.str());
  }
  if (s.indices.empty()) throw InvalidArgument("empty subset");
  return s;
}

NodeSubset make_subset(const DirectedGraph& g, std::vector<NodeId> indices) {
  if (indices.empty()) throw InvalidArgument("empty subset");
  std::vector<bool> seen(g.node_count(), false);
  NodeSubset s;
  for (NodeId i : indices) {
    if (i >= g.node_count()) throw InvalidArgument("subset index " + std::to_string(i) + " out of range");
    if (seen[i]) throw InvalidArgument("duplicate subset index " + std::to_string(i));
    seen[i] = true;
    s.labels.push_back(g.label(i));
  }
  s.indices = std::move(indices);
  return s;
}

}  // namespace rgm
