#include "strongties/graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace strongties {

namespace {

std::uint64_t pack_pair(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

bool LayeredGraph::has_edge(NodeId u, NodeId v, Layer layer) const {
  check_node(u);
  check_node(v);
  const auto& adj = layer == Layer::Weak ? weak_[u] : strong_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

bool LayeredGraph::same_labeled_structure(const LayeredGraph& other) const {
  if (node_count() != other.node_count()) return false;
  std::set<std::uint64_t> nodes_a(external_ids_.begin(), external_ids_.end());
  std::set<std::uint64_t> nodes_b(other.external_ids_.begin(),
                                  other.external_ids_.end());
  if (nodes_a != nodes_b) return false;
  auto labeled_edges = [](const LayeredGraph& g) {
    std::set<std::tuple<std::uint64_t, std::uint64_t, bool>> out;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v : g.neighbors(u, Layer::Weak)) {
        if (v < u) continue;
        auto a = g.external_id(u), b = g.external_id(v);
        if (a > b) std::swap(a, b);
        out.emplace(a, b, g.has_edge(u, v, Layer::Strong));
      }
    }
    return out;
  };
  return labeled_edges(*this) == labeled_edges(other);
}

NodeId GraphBuilder::add_node(std::uint64_t external_id) {
  auto [it, inserted] =
      id_map_.emplace(external_id, static_cast<NodeId>(external_ids_.size()));
  if (inserted) external_ids_.push_back(external_id);
  return it->second;
}

bool GraphBuilder::handle_self_loop(std::uint64_t u, std::uint64_t v) {
  if (u != v) return false;
  if (policy_ == ContainmentPolicy::Strict)
    throw std::invalid_argument("self-loop on node " + std::to_string(u));
  ++counters_.dropped_self_loops;
  add_node(u);
  return true;
}

GraphBuilder::EdgeState& GraphBuilder::edge_state(std::uint64_t ext_u,
                                                  std::uint64_t ext_v) {
  const NodeId u = add_node(ext_u);
  const NodeId v = add_node(ext_v);
  const std::uint64_t key = pack_pair(u, v);
  auto [it, inserted] = edges_.try_emplace(key);
  if (inserted) edge_order_.emplace_back(std::min(u, v), std::max(u, v));
  return it->second;
}

void GraphBuilder::declare_weak(std::uint64_t ext_u, std::uint64_t ext_v) {
  if (handle_self_loop(ext_u, ext_v)) return;
  EdgeState& e = edge_state(ext_u, ext_v);
  if (e.weak) ++counters_.merged_duplicates;
  e.weak = true;
}

void GraphBuilder::declare_strong(std::uint64_t ext_u, std::uint64_t ext_v) {
  if (handle_self_loop(ext_u, ext_v)) return;
  EdgeState& e = edge_state(ext_u, ext_v);
  if (e.strong) ++counters_.merged_duplicates;
  e.strong = true;
}

LayeredGraph GraphBuilder::finalize() {
  LayeredGraph g;
  const std::size_t n = external_ids_.size();
  g.weak_.resize(n);
  g.strong_.resize(n);
  g.external_ids_ = external_ids_;

  for (const auto& [u, v] : edge_order_) {
    const EdgeState& e = edges_.at(pack_pair(u, v));
    if (!e.weak) {
      // Strong declaration with no weak edge anywhere in the input.
      if (policy_ == ContainmentPolicy::Strict)
        throw std::invalid_argument(
            "strong edge (" + std::to_string(external_ids_[u]) + "," +
            std::to_string(external_ids_[v]) + ") has no weak edge");
      ++counters_.dropped_strong;
      continue;
    }
    g.weak_[u].push_back(v);
    g.weak_[v].push_back(u);
    ++g.weak_edges_;
    if (e.strong) {
      g.strong_[u].push_back(v);
      g.strong_[v].push_back(u);
      ++g.strong_edges_;
    }
  }
  for (auto& adj : g.weak_) std::sort(adj.begin(), adj.end());
  for (auto& adj : g.strong_) std::sort(adj.begin(), adj.end());
  return g;
}

namespace {

std::uint64_t parse_id(std::string_view field, std::size_t line_no) {
  std::uint64_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line_no, "expected a non-negative integer id, got '" +
                                  std::string(field) + "'");
  return value;
}

void parse_line(GraphBuilder& builder, std::string_view line,
                std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty()) return;
  if (line.front() == '#') {
    // Directive form `# node <id>` registers an isolated node; every other
    // comment is ignored.
    std::istringstream ss{std::string(line.substr(1))};
    std::string word, id_field, extra;
    if (ss >> word >> id_field && word == "node" && !(ss >> extra))
      builder.add_node(parse_id(id_field, line_no));
    return;
  }
  std::array<std::string_view, 3> fields;
  std::size_t count = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '\t') {
      if (count >= 3)
        throw ParseError(line_no, "expected 3 tab-separated fields");
      fields[count++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  if (count != 3) throw ParseError(line_no, "expected 3 tab-separated fields");
  const std::uint64_t u = parse_id(fields[0], line_no);
  const std::uint64_t v = parse_id(fields[1], line_no);
  if (fields[2] == "0") {
    builder.declare_weak(u, v);
  } else if (fields[2] == "1") {
    builder.declare_strong(u, v);
  } else {
    throw ParseError(line_no, "label must be 0 or 1, got '" +
                                  std::string(fields[2]) + "'");
  }
}

}  // namespace

LoadResult parse_graph(std::string_view text, ContainmentPolicy policy) {
  GraphBuilder builder(policy);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find('\n', start);
    const std::size_t end = pos == std::string_view::npos ? text.size() : pos;
    ++line_no;
    parse_line(builder, text.substr(start, end - start), line_no);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  LoadResult result{builder.finalize(), builder.counters()};
  return result;
}

LoadResult load_graph(const std::filesystem::path& path,
                      ContainmentPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open graph file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), policy);
}

std::string serialize_graph(const LayeredGraph& g) {
  std::string out;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.degree(u, Layer::Weak) == 0) {
      out += "# node ";
      out += std::to_string(g.external_id(u));
      out += '\n';
    }
  }
  auto emit = [&](Layer layer, char label) {
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v : g.neighbors(u, layer)) {
        if (v < u) continue;
        out += std::to_string(g.external_id(u));
        out += '\t';
        out += std::to_string(g.external_id(v));
        out += '\t';
        out += label;
        out += '\n';
      }
    }
  };
  emit(Layer::Weak, '0');
  emit(Layer::Strong, '1');
  return out;
}

void save_graph(const LayeredGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write graph file: " + path.string());
  out << serialize_graph(g);
}

std::vector<NodeId> frontier_two(const LayeredGraph& g, NodeId a) {
  const auto b = g.neighbors(a, Layer::Weak);
  std::vector<std::uint8_t> excluded(g.node_count(), 0);
  excluded[a] = 1;
  for (NodeId v : b) excluded[v] = 1;
  std::vector<NodeId> frontier;
  for (NodeId v : b) {
    for (NodeId w : g.neighbors(v, Layer::Weak)) {
      if (!excluded[w]) {
        excluded[w] = 1;
        frontier.push_back(w);
      }
    }
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

}  // namespace strongties
