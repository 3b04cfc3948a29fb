#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "strongties/graph.hpp"

namespace strongties {

/// The full score vector for one candidate edge (a, b), b in B = N_L(a).
struct CandidateScores {
  NodeId candidate = kNoNode;
  std::uint32_t degree = 0;        // d_L(b)
  std::uint32_t embeddedness = 0;  // |N_L(a) ∩ N_L(b)|
  double adamic_adar = 0.0;        // Σ 1/ln d_L(v) over mutual weak neighbors
  double h1 = 0.0;                 // d_L(b) if d_S(b) > 0, else 0
  std::uint32_t triangles = 0;     // |N_S(b) ∩ B|
  std::uint32_t squares_inside = 0;
  std::uint32_t squares_outside = 0;
  std::uint32_t pentagons_inside = 0;
  std::uint32_t pentagons_outside = 0;
};

enum class ScoreKind {
  Degree,
  Embeddedness,
  AdamicAdar,
  H1,
  Triangles,
  SquaresInside,
  SquaresOutside,
  PentagonsInside,
  PentagonsOutside,
};

enum class RankDirection { Minimize, Maximize };

std::string_view score_name(ScoreKind kind);
RankDirection rank_direction(ScoreKind kind);
double score_value(const CandidateScores& s, ScoreKind kind);

/// Scores the candidate neighbors of one focal node. Builds the B / C
/// membership masks once; each candidate is then scored by walking strong
/// chains out of it.
///
/// Squares and pentagons count ordered interior paths (b -> x -> y [...])
/// whose non-a-incident edges are all strong; the reversed traversal of the
/// same node set counts separately when its strong pattern also holds.
class EgoScorer {
 public:
  EgoScorer(const LayeredGraph& g, NodeId a)
      : EgoScorer(StrongTieView(g), a) {}
  EgoScorer(StrongTieView view, NodeId a);

  NodeId focal() const { return a_; }
  const LayeredGraph& graph() const { return view_.graph(); }
  std::span<const NodeId> candidates() const { return b_; }  // B, ascending
  const std::vector<NodeId>& frontier() const { return c_; } // C, ascending
  bool in_candidates(NodeId v) const { return v < in_b_.size() && in_b_[v]; }

  CandidateScores score(NodeId b) const;  // throws if b not in B
  std::vector<CandidateScores> score_all() const;

  std::uint32_t degree(NodeId b) const;
  std::uint32_t embeddedness(NodeId b) const;
  double adamic_adar(NodeId b) const;
  double h1(NodeId b) const;
  std::uint32_t triangles(NodeId b) const;
  std::uint32_t squares_inside(NodeId b) const;
  std::uint32_t squares_outside(NodeId b) const;
  std::uint32_t pentagons_inside(NodeId b) const;
  std::uint32_t pentagons_outside(NodeId b) const;

 private:
  void check_candidate(NodeId b) const;

  StrongTieView view_;
  NodeId a_;
  std::vector<NodeId> b_;
  std::vector<NodeId> c_;
  std::vector<std::uint8_t> in_b_;
  std::vector<std::uint8_t> in_c_;
};

// Single-score entry points matching the scoring-table definitions. Each
// builds an EgoScorer internally; use EgoScorer directly for bulk work.
std::uint32_t score_lowest_degree(const LayeredGraph& g, NodeId a, NodeId b);
std::uint32_t score_embeddedness(const LayeredGraph& g, NodeId a, NodeId b);
double score_adamic_adar(const LayeredGraph& g, NodeId a, NodeId b);
double score_h1(const LayeredGraph& g, NodeId a, NodeId b);
std::uint32_t score_triangle(const LayeredGraph& g, NodeId a, NodeId b);
std::uint32_t score_square_inside(const LayeredGraph& g, NodeId a, NodeId b);
std::uint32_t score_square_outside(const LayeredGraph& g, NodeId a, NodeId b);
std::uint32_t score_pentagon_inside(const LayeredGraph& g, NodeId a, NodeId b);
std::uint32_t score_pentagon_outside(const LayeredGraph& g, NodeId a, NodeId b);

/// Total deterministic order over candidates: primary key is the score under
/// the given direction (H1 zeros always rank last), ties broken by smaller
/// weak degree, then smaller node id.
std::vector<NodeId> rank_candidates(std::span<const CandidateScores> scores,
                                    ScoreKind key, RankDirection direction);

/// Same tie-breaking over externally supplied values (model probabilities).
struct RankedValue {
  NodeId id;
  double value;
  std::uint32_t degree;
};
std::vector<NodeId> rank_by_value(std::vector<RankedValue> values,
                                  RankDirection direction);

/// Uniform choice over B, deterministic in (seed, a).
NodeId random_candidate(const LayeredGraph& g, NodeId a, std::uint64_t seed);
/// Uniform random permutation of B under the same per-(seed, a) stream; the
/// first element equals random_candidate().
std::vector<NodeId> random_ranking(const LayeredGraph& g, NodeId a,
                                   std::uint64_t seed);

}  // namespace strongties
