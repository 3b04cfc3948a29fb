#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace strongties {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

enum class Layer { Weak, Strong };

// What to do with a strong-tie declaration that has no backing weak edge,
// and with self-loops: silently drop (and count), or reject the file.
enum class ContainmentPolicy { Drop, Strict };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Undirected two-layer graph: a dense weak-tie edge set with a sparse
/// strong-flagged subset (every strong edge is also a weak edge). Node ids
/// are dense in [0, node_count()); the original labels of the input are kept
/// in load order and retrievable via external_id().
///
/// Immutable after construction; safe for concurrent reads.
class LayeredGraph {
 public:
  LayeredGraph() = default;

  NodeId node_count() const { return static_cast<NodeId>(weak_.size()); }
  std::size_t edge_count(Layer layer) const {
    return layer == Layer::Weak ? weak_edges_ : strong_edges_;
  }

  /// Sorted, duplicate-free neighbor list.
  std::span<const NodeId> neighbors(NodeId v, Layer layer) const {
    check_node(v);
    const auto& adj = layer == Layer::Weak ? weak_[v] : strong_[v];
    return {adj.data(), adj.size()};
  }

  std::size_t degree(NodeId v, Layer layer) const {
    check_node(v);
    return (layer == Layer::Weak ? weak_[v] : strong_[v]).size();
  }

  bool has_edge(NodeId u, NodeId v, Layer layer) const;

  std::uint64_t external_id(NodeId v) const {
    check_node(v);
    return external_ids_[v];
  }
  const std::vector<std::uint64_t>& external_ids() const { return external_ids_; }

  /// Structural equality on external labels (node set plus labeled edge
  /// sets), ignoring the internal id assignment.
  bool same_labeled_structure(const LayeredGraph& other) const;

 private:
  friend class GraphBuilder;
  void check_node(NodeId v) const {
    if (v >= weak_.size())
      throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }

  std::vector<std::vector<NodeId>> weak_;
  std::vector<std::vector<NodeId>> strong_;
  std::vector<std::uint64_t> external_ids_;
  std::size_t weak_edges_ = 0;
  std::size_t strong_edges_ = 0;
};

struct BuildCounters {
  std::size_t dropped_strong = 0;     // strong declarations with no weak edge
  std::size_t dropped_self_loops = 0;
  std::size_t merged_duplicates = 0;  // re-declarations of an existing line
};

/// Accumulates edge declarations (external ids, arbitrary order, duplicates
/// allowed) and finalizes them into a LayeredGraph. Dense ids are assigned by
/// first appearance, so file order is preserved as the id order.
class GraphBuilder {
 public:
  explicit GraphBuilder(ContainmentPolicy policy = ContainmentPolicy::Drop)
      : policy_(policy) {}

  NodeId add_node(std::uint64_t external_id);

  /// A weak-tie line: the edge belongs to the weak layer.
  void declare_weak(std::uint64_t ext_u, std::uint64_t ext_v);
  /// A strong-tie line: membership in the strong layer only. The edge must
  /// also be declared weak somewhere in the input or it is dropped/rejected
  /// according to the containment policy.
  void declare_strong(std::uint64_t ext_u, std::uint64_t ext_v);
  /// Convenience for programmatic construction: weak edge, optionally with
  /// the strong flag (strong implies weak).
  void add_edge(std::uint64_t ext_u, std::uint64_t ext_v, bool strong) {
    declare_weak(ext_u, ext_v);
    if (strong) declare_strong(ext_u, ext_v);
  }

  LayeredGraph finalize();
  const BuildCounters& counters() const { return counters_; }

 private:
  struct EdgeState {
    bool weak = false;
    bool strong = false;
  };
  bool handle_self_loop(std::uint64_t u, std::uint64_t v);
  EdgeState& edge_state(std::uint64_t ext_u, std::uint64_t ext_v);

  ContainmentPolicy policy_;
  BuildCounters counters_;
  std::unordered_map<std::uint64_t, NodeId> id_map_;
  std::vector<std::uint64_t> external_ids_;
  std::unordered_map<std::uint64_t, EdgeState> edges_;  // key packs (u, v), u < v
  std::vector<std::pair<NodeId, NodeId>> edge_order_;
};

struct LoadResult {
  LayeredGraph graph;
  BuildCounters counters;
};

/// Parses the tab-separated edge-list format: `u<TAB>v<TAB>label` with label
/// 0 (weak) or 1 (strong); lines starting with '#' are comments, except the
/// directive `# node <id>` which registers an isolated node.
LoadResult load_graph(const std::filesystem::path& path,
                      ContainmentPolicy policy = ContainmentPolicy::Drop);
LoadResult parse_graph(std::string_view text,
                       ContainmentPolicy policy = ContainmentPolicy::Drop);

/// Inverse of load_graph: emits one weak line per weak edge, one strong line
/// per strong edge, and a `# node` directive per isolated node, all in
/// external-id terms. Reloading yields the same labeled structure.
std::string serialize_graph(const LayeredGraph& g);
void save_graph(const LayeredGraph& g, const std::filesystem::path& path);

/// Nodes at weak-graph distance exactly two from a (excludes a and its
/// neighborhood). Sorted ascending.
std::vector<NodeId> frontier_two(const LayeredGraph& g, NodeId a);

/// Strong-layer accessor that hides the strong flags incident to one node.
/// This is the view of a node whose own strong ties are unreported; every
/// scoring path reads the strong layer through it.
class StrongTieView {
 public:
  explicit StrongTieView(const LayeredGraph& g, NodeId masked = kNoNode)
      : g_(&g), masked_(masked) {}

  const LayeredGraph& graph() const { return *g_; }
  NodeId masked_node() const { return masked_; }

  bool is_strong(NodeId u, NodeId v) const {
    if (u == masked_ || v == masked_) return false;
    return g_->has_edge(u, v, Layer::Strong);
  }

  std::size_t strong_degree(NodeId v) const {
    std::size_t d = g_->degree(v, Layer::Strong);
    if (masked_ != kNoNode && v != masked_ &&
        g_->has_edge(v, masked_, Layer::Strong))
      --d;
    if (v == masked_) return 0;
    return d;
  }

  template <class Fn>
  void for_each_strong(NodeId v, Fn&& fn) const {
    if (v == masked_) return;
    for (NodeId w : g_->neighbors(v, Layer::Strong)) {
      if (w == masked_) continue;
      fn(w);
    }
  }

 private:
  const LayeredGraph* g_;
  NodeId masked_;
};

}  // namespace strongties
