#pragma once

#include <cstdint>

#include "strongties/graph.hpp"

namespace strongties {

enum class CycleMotif {
  TriangleStrong,
  SquareInside,
  SquareOutside,
  PentagonInside,
  PentagonOutside,
};

int cycle_length(CycleMotif motif);  // 3, 4 or 5

/// Brute-force cycle counter for testing: enumerates every node tuple and
/// applies the edge-layer and region (B / C) constraints of the matching
/// optimized scorer directly from their definitions. Region membership is
/// recomputed from raw adjacency, not taken from EgoScorer. Intended for
/// small graphs (roughly <= 40 nodes).
///
/// `length` must equal cycle_length(motif); it is part of the call so tests
/// name the shape they expect.
std::uint64_t oracle_count_cycles(const LayeredGraph& g, NodeId a, NodeId b,
                                  int length, CycleMotif motif);

/// Exhaustive per-edge triangle and square counts on the weak graph, for
/// checking edge_motif_counts.
struct OracleEdgeCounts {
  std::uint64_t triangles = 0;
  std::uint64_t squares = 0;
};
OracleEdgeCounts oracle_edge_motifs(const LayeredGraph& g, NodeId x, NodeId y);

/// Weak-layer analogue of the square-outside count (no strong constraint):
/// 4-cycles a-b-c-b2-a with c at distance two and b2 another candidate.
/// Used to check the sketch pipeline's exact reference.
std::uint64_t oracle_weak_squares_outside(const LayeredGraph& g, NodeId a,
                                          NodeId b);

}  // namespace strongties
