#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rgm {

using NodeId = std::uint32_t;

struct LoadStats {
  std::size_t nodes = 0;
  std::size_t edges_kept = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

/// Immutable directed graph in compressed form.
///
/// An edge j -> i means node j links to node i (A_ij = 1). Both the outgoing
/// lists (used by the transposed product and by inversion) and the incoming
/// lists (used by the pull-style Google matvec) are stored.
class DirectedGraph {
public:
  DirectedGraph() = default;

  /// Builds from (src, dst) pairs. Self-loops and duplicates are dropped and
  /// counted in stats(). Every index must be < n.
  static DirectedGraph from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return out_targets_.size(); }

  std::size_t out_degree(NodeId j) const { return out_offsets_[j + 1] - out_offsets_[j]; }
  std::size_t in_degree(NodeId i) const { return in_offsets_[i + 1] - in_offsets_[i]; }

  /// Nodes that j points to, ascending.
  std::span<const NodeId> out_neighbors(NodeId j) const {
    return {out_targets_.data() + out_offsets_[j], out_degree(j)};
  }
  /// Nodes pointing to i, ascending.
  std::span<const NodeId> in_neighbors(NodeId i) const {
    return {in_sources_.data() + in_offsets_[i], in_degree(i)};
  }

  std::span<const std::size_t> in_offsets() const noexcept { return in_offsets_; }
  std::span<const NodeId> in_sources() const noexcept { return in_sources_; }
  std::span<const std::size_t> out_offsets() const noexcept { return out_offsets_; }
  std::span<const NodeId> out_targets() const noexcept { return out_targets_; }

  /// 1/k_out(j), or 0 for dangling nodes.
  std::span<const double> inv_out_degree() const noexcept { return inv_out_degree_; }
  std::span<const NodeId> dangling_nodes() const noexcept { return dangling_; }

  /// All edges as (src, dst), sorted by src then dst.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  const LoadStats& stats() const noexcept { return stats_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Label of node i; the decimal index when no label map is attached.
  std::string label(NodeId i) const;
  std::optional<NodeId> find_label(std::string_view label) const;
  /// Explicit labels, empty strings for unlabeled nodes (empty when no map).
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Attaches a label map. Nodes left out keep their decimal index as label.
  /// Throws InvalidArgument on an index >= n or a repeated label.
  void set_labels(const std::vector<std::pair<NodeId, std::string>>& entries);

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.out_offsets_ == b.out_offsets_ && a.out_targets_ == b.out_targets_ &&
           a.labels_ == b.labels_;
  }

private:
  std::size_t n_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<double> inv_out_degree_;
  std::vector<NodeId> dangling_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> label_index_;
  LoadStats stats_;
};

/// Ordered node selection. The order fixes the row/column order of every
/// reduced matrix derived from it.
struct NodeSubset {
  std::vector<NodeId> indices;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return indices.size(); }
};

/// Reads "src dst" lines ('#' starts a comment). A comment of the form
/// "# nodes: N" fixes the node count; otherwise it is max index + 1.
/// The optional label stream holds "index<TAB>label" lines.
DirectedGraph load_edge_list(std::istream& edges, std::istream* labels = nullptr);

/// Writes the graph in the format read by load_edge_list, including the
/// "# nodes: N" header.
void write_edge_list(const DirectedGraph& g, std::ostream& out);
void write_label_map(const DirectedGraph& g, std::ostream& out);

/// Reverses every edge. Labels are kept.
DirectedGraph invert(const DirectedGraph& g);

enum class GraphModel { uniform, preferential };

/// Seeded random graph without self-loops or duplicates. Throws
/// InvalidArgument when m > n(n-1).
DirectedGraph generate_synthetic(std::size_t n, std::size_t m, std::uint64_t seed,
                                 GraphModel model);

/// Resolves labels to indices keeping the given order. Throws
/// InvalidArgument naming every unknown label, or on a repeated label.
NodeSubset resolve_subset(const DirectedGraph& g, const std::vector<std::string>& labels);

/// Builds a subset from indices; validates range and distinctness.
NodeSubset make_subset(const DirectedGraph& g, std::vector<NodeId> indices);

}  // namespace rgm
