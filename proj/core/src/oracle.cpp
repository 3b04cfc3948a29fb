#include "strongties/oracle.hpp"

#include <stdexcept>
#include <string>

namespace strongties {

namespace {

bool weak(const LayeredGraph& g, NodeId u, NodeId v) {
  return g.has_edge(u, v, Layer::Weak);
}
bool strong(const LayeredGraph& g, NodeId u, NodeId v) {
  return g.has_edge(u, v, Layer::Strong);
}

// Region predicates straight from their definitions.
bool in_b(const LayeredGraph& g, NodeId a, NodeId v) {
  return v != a && weak(g, a, v);
}
bool in_c(const LayeredGraph& g, NodeId a, NodeId v) {
  if (v == a || weak(g, a, v)) return false;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (weak(g, a, u) && weak(g, u, v)) return true;
  return false;
}

}  // namespace

int cycle_length(CycleMotif motif) {
  switch (motif) {
    case CycleMotif::TriangleStrong: return 3;
    case CycleMotif::SquareInside:
    case CycleMotif::SquareOutside: return 4;
    case CycleMotif::PentagonInside:
    case CycleMotif::PentagonOutside: return 5;
  }
  return 0;
}

std::uint64_t oracle_count_cycles(const LayeredGraph& g, NodeId a, NodeId b,
                                  int length, CycleMotif motif) {
  if (length != cycle_length(motif))
    throw std::invalid_argument("cycle length " + std::to_string(length) +
                                " does not match the requested motif");
  const NodeId n = g.node_count();
  std::uint64_t count = 0;
  switch (motif) {
    case CycleMotif::TriangleStrong:
      // a-b-v-a with (b,v) strong and v in B.
      for (NodeId v = 0; v < n; ++v) {
        if (v == a || v == b) continue;
        if (in_b(g, a, v) && strong(g, b, v)) ++count;
      }
      break;
    case CycleMotif::SquareInside:
      // a-b-x-y-a, ordered interior path b->x->y, x and y in B.
      for (NodeId x = 0; x < n; ++x) {
        if (x == a || x == b || !in_b(g, a, x) || !strong(g, b, x)) continue;
        for (NodeId y = 0; y < n; ++y) {
          if (y == a || y == b || y == x) continue;
          if (in_b(g, a, y) && strong(g, x, y)) ++count;
        }
      }
      break;
    case CycleMotif::SquareOutside:
      // a-b-c-b2-a with c in C and b2 in B.
      for (NodeId c = 0; c < n; ++c) {
        if (c == a || c == b || !in_c(g, a, c) || !strong(g, b, c)) continue;
        for (NodeId b2 = 0; b2 < n; ++b2) {
          if (b2 == a || b2 == b || b2 == c) continue;
          if (in_b(g, a, b2) && strong(g, c, b2)) ++count;
        }
      }
      break;
    case CycleMotif::PentagonInside:
      // a-b-x-y-z-a, all interior nodes in B, distinct.
      for (NodeId x = 0; x < n; ++x) {
        if (x == a || x == b || !in_b(g, a, x) || !strong(g, b, x)) continue;
        for (NodeId y = 0; y < n; ++y) {
          if (y == a || y == b || y == x) continue;
          if (!in_b(g, a, y) || !strong(g, x, y)) continue;
          for (NodeId z = 0; z < n; ++z) {
            if (z == a || z == b || z == x || z == y) continue;
            if (in_b(g, a, z) && strong(g, y, z)) ++count;
          }
        }
      }
      break;
    case CycleMotif::PentagonOutside:
      // a-b-x-y-z-a with x, y in C and z in B.
      for (NodeId x = 0; x < n; ++x) {
        if (x == a || x == b || !in_c(g, a, x) || !strong(g, b, x)) continue;
        for (NodeId y = 0; y < n; ++y) {
          if (y == a || y == b || y == x) continue;
          if (!in_c(g, a, y) || !strong(g, x, y)) continue;
          for (NodeId z = 0; z < n; ++z) {
            if (z == a || z == b || z == x || z == y) continue;
            if (in_b(g, a, z) && strong(g, y, z)) ++count;
          }
        }
      }
      break;
  }
  return count;
}

OracleEdgeCounts oracle_edge_motifs(const LayeredGraph& g, NodeId x, NodeId y) {
  const NodeId n = g.node_count();
  OracleEdgeCounts out;
  for (NodeId z = 0; z < n; ++z) {
    if (z == x || z == y) continue;
    if (weak(g, x, z) && weak(g, y, z)) ++out.triangles;
  }
  // Ordered interior pairs (u, v): u adjacent to x, v adjacent to y; each
  // unordered 4-cycle through (x, y) corresponds to exactly one such pair.
  for (NodeId u = 0; u < n; ++u) {
    if (u == x || u == y || !weak(g, x, u)) continue;
    for (NodeId v = 0; v < n; ++v) {
      if (v == x || v == y || v == u) continue;
      if (weak(g, y, v) && weak(g, u, v)) ++out.squares;
    }
  }
  return out;
}

std::uint64_t oracle_weak_squares_outside(const LayeredGraph& g, NodeId a,
                                          NodeId b) {
  const NodeId n = g.node_count();
  std::uint64_t count = 0;
  for (NodeId c = 0; c < n; ++c) {
    if (c == a || c == b || !in_c(g, a, c) || !weak(g, b, c)) continue;
    for (NodeId b2 = 0; b2 < n; ++b2) {
      if (b2 == a || b2 == b || b2 == c) continue;
      if (in_b(g, a, b2) && weak(g, c, b2)) ++count;
    }
  }
  return count;
}

}  // namespace strongties
