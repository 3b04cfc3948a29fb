#include "strongties/motifs.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "strongties/rng.hpp"

namespace strongties {

std::string_view score_name(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::Degree: return "lowest_degree";
    case ScoreKind::Embeddedness: return "embeddedness";
    case ScoreKind::AdamicAdar: return "adamic_adar";
    case ScoreKind::H1: return "h1";
    case ScoreKind::Triangles: return "triangles";
    case ScoreKind::SquaresInside: return "squares_inside";
    case ScoreKind::SquaresOutside: return "squares_outside";
    case ScoreKind::PentagonsInside: return "pentagons_inside";
    case ScoreKind::PentagonsOutside: return "pentagons_outside";
  }
  return "unknown";
}

RankDirection rank_direction(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::Degree:
    case ScoreKind::H1:
      return RankDirection::Minimize;
    default:
      return RankDirection::Maximize;
  }
}

double score_value(const CandidateScores& s, ScoreKind kind) {
  switch (kind) {
    case ScoreKind::Degree: return s.degree;
    case ScoreKind::Embeddedness: return s.embeddedness;
    case ScoreKind::AdamicAdar: return s.adamic_adar;
    case ScoreKind::H1: return s.h1;
    case ScoreKind::Triangles: return s.triangles;
    case ScoreKind::SquaresInside: return s.squares_inside;
    case ScoreKind::SquaresOutside: return s.squares_outside;
    case ScoreKind::PentagonsInside: return s.pentagons_inside;
    case ScoreKind::PentagonsOutside: return s.pentagons_outside;
  }
  return 0.0;
}

EgoScorer::EgoScorer(StrongTieView view, NodeId a) : view_(view), a_(a) {
  const LayeredGraph& g = view_.graph();
  const auto b = g.neighbors(a, Layer::Weak);
  b_.assign(b.begin(), b.end());
  c_ = frontier_two(g, a);
  in_b_.assign(g.node_count(), 0);
  in_c_.assign(g.node_count(), 0);
  for (NodeId v : b_) in_b_[v] = 1;
  for (NodeId v : c_) in_c_[v] = 1;
}

void EgoScorer::check_candidate(NodeId b) const {
  if (b >= in_b_.size() || !in_b_[b])
    throw std::invalid_argument("candidate " + std::to_string(b) +
                                " is not a weak neighbor of " +
                                std::to_string(a_));
}

std::uint32_t EgoScorer::degree(NodeId b) const {
  check_candidate(b);
  return static_cast<std::uint32_t>(view_.graph().degree(b, Layer::Weak));
}

std::uint32_t EgoScorer::embeddedness(NodeId b) const {
  check_candidate(b);
  std::uint32_t count = 0;
  for (NodeId v : view_.graph().neighbors(b, Layer::Weak))
    if (in_b_[v]) ++count;
  return count;
}

double EgoScorer::adamic_adar(NodeId b) const {
  check_candidate(b);
  double sum = 0.0;
  for (NodeId v : view_.graph().neighbors(b, Layer::Weak)) {
    if (!in_b_[v]) continue;
    const auto d = view_.graph().degree(v, Layer::Weak);
    assert(d >= 2);  // mutual neighbor of adjacent a and b
    sum += 1.0 / std::log(static_cast<double>(d));
  }
  return sum;
}

double EgoScorer::h1(NodeId b) const {
  check_candidate(b);
  return view_.strong_degree(b) > 0
             ? static_cast<double>(view_.graph().degree(b, Layer::Weak))
             : 0.0;
}

std::uint32_t EgoScorer::triangles(NodeId b) const {
  check_candidate(b);
  std::uint32_t count = 0;
  view_.for_each_strong(b, [&](NodeId v) {
    if (in_b_[v]) ++count;
  });
  return count;
}

std::uint32_t EgoScorer::squares_inside(NodeId b) const {
  check_candidate(b);
  std::uint32_t count = 0;
  view_.for_each_strong(b, [&](NodeId x) {
    if (!in_b_[x]) return;
    view_.for_each_strong(x, [&](NodeId y) {
      if (in_b_[y] && y != b) ++count;
    });
  });
  return count;
}

std::uint32_t EgoScorer::squares_outside(NodeId b) const {
  check_candidate(b);
  std::uint32_t count = 0;
  view_.for_each_strong(b, [&](NodeId c) {
    if (!in_c_[c]) return;
    view_.for_each_strong(c, [&](NodeId b2) {
      if (in_b_[b2] && b2 != b) ++count;
    });
  });
  return count;
}

std::uint32_t EgoScorer::pentagons_inside(NodeId b) const {
  check_candidate(b);
  std::uint32_t count = 0;
  view_.for_each_strong(b, [&](NodeId x) {
    if (!in_b_[x]) return;
    view_.for_each_strong(x, [&](NodeId y) {
      if (!in_b_[y] || y == b) return;
      view_.for_each_strong(y, [&](NodeId z) {
        if (in_b_[z] && z != b && z != x) ++count;
      });
    });
  });
  return count;
}

std::uint32_t EgoScorer::pentagons_outside(NodeId b) const {
  check_candidate(b);
  std::uint32_t count = 0;
  view_.for_each_strong(b, [&](NodeId x) {
    if (!in_c_[x]) return;
    view_.for_each_strong(x, [&](NodeId y) {
      if (!in_c_[y]) return;
      view_.for_each_strong(y, [&](NodeId z) {
        if (in_b_[z] && z != b) ++count;
      });
    });
  });
  return count;
}

CandidateScores EgoScorer::score(NodeId b) const {
  CandidateScores s;
  s.candidate = b;
  s.degree = degree(b);
  s.embeddedness = embeddedness(b);
  s.adamic_adar = adamic_adar(b);
  s.h1 = h1(b);
  s.triangles = triangles(b);
  s.squares_inside = squares_inside(b);
  s.squares_outside = squares_outside(b);
  s.pentagons_inside = pentagons_inside(b);
  s.pentagons_outside = pentagons_outside(b);
  return s;
}

std::vector<CandidateScores> EgoScorer::score_all() const {
  std::vector<CandidateScores> out;
  out.reserve(b_.size());
  for (NodeId b : b_) out.push_back(score(b));
  return out;
}

std::uint32_t score_lowest_degree(const LayeredGraph& g, NodeId a, NodeId b) {
  return EgoScorer(g, a).degree(b);
}
std::uint32_t score_embeddedness(const LayeredGraph& g, NodeId a, NodeId b) {
  return EgoScorer(g, a).embeddedness(b);
}
double score_adamic_adar(const LayeredGraph& g, NodeId a, NodeId b) {
  return EgoScorer(g, a).adamic_adar(b);
}
double score_h1(const LayeredGraph& g, NodeId a, NodeId b) {
  return EgoScorer(g, a).h1(b);
}
std::uint32_t score_triangle(const LayeredGraph& g, NodeId a, NodeId b) {
  return EgoScorer(g, a).triangles(b);
}
std::uint32_t score_square_inside(const LayeredGraph& g, NodeId a, NodeId b) {
  return EgoScorer(g, a).squares_inside(b);
}
std::uint32_t score_square_outside(const LayeredGraph& g, NodeId a, NodeId b) {
  return EgoScorer(g, a).squares_outside(b);
}
std::uint32_t score_pentagon_inside(const LayeredGraph& g, NodeId a, NodeId b) {
  return EgoScorer(g, a).pentagons_inside(b);
}
std::uint32_t score_pentagon_outside(const LayeredGraph& g, NodeId a,
                                     NodeId b) {
  return EgoScorer(g, a).pentagons_outside(b);
}

std::vector<NodeId> rank_by_value(std::vector<RankedValue> values,
                                  RankDirection direction) {
  if (values.empty())
    throw std::invalid_argument("rank_by_value: no candidates");
  std::sort(values.begin(), values.end(),
            [direction](const RankedValue& lhs, const RankedValue& rhs) {
              if (lhs.value != rhs.value)
                return direction == RankDirection::Minimize
                           ? lhs.value < rhs.value
                           : lhs.value > rhs.value;
              if (lhs.degree != rhs.degree) return lhs.degree < rhs.degree;
              return lhs.id < rhs.id;
            });
  std::vector<NodeId> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.id);
  return out;
}

std::vector<NodeId> rank_candidates(std::span<const CandidateScores> scores,
                                    ScoreKind key, RankDirection direction) {
  if (scores.empty())
    throw std::invalid_argument("rank_candidates: no candidates");
  std::vector<RankedValue> values;
  values.reserve(scores.size());
  for (const auto& s : scores) {
    double v = score_value(s, key);
    // H1 zero marks "no observed strong ties"; it loses to every positive
    // score even under minimization.
    if (key == ScoreKind::H1 && v == 0.0)
      v = direction == RankDirection::Minimize
              ? std::numeric_limits<double>::infinity()
              : -std::numeric_limits<double>::infinity();
    values.push_back({s.candidate, v, s.degree});
  }
  return rank_by_value(std::move(values), direction);
}

std::vector<NodeId> random_ranking(const LayeredGraph& g, NodeId a,
                                   std::uint64_t seed) {
  const auto b = g.neighbors(a, Layer::Weak);
  if (b.empty())
    throw std::invalid_argument("random_ranking: node " + std::to_string(a) +
                                " has no weak neighbors");
  std::vector<NodeId> order(b.begin(), b.end());
  std::mt19937_64 eng(keyed_u64(seed, /*stream=*/0x72616e64u, a));
  shuffle_vec(eng, order);
  return order;
}

NodeId random_candidate(const LayeredGraph& g, NodeId a, std::uint64_t seed) {
  return random_ranking(g, a, seed).front();
}

}  // namespace strongties
