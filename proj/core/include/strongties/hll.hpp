#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "strongties/graph.hpp"

namespace strongties {

/// HyperLogLog cardinality sketch: 2^precision_bits single-byte registers
/// holding the maximum leading-zero rank seen per bucket. Registers only
/// grow, so estimates are insertion-order invariant and union is a
/// register-wise max. Small cardinalities fall back to linear counting.
class HllSketch {
 public:
  static constexpr int kMinPrecision = 4;
  static constexpr int kMaxPrecision = 18;

  HllSketch(int precision_bits, std::uint64_t hash_seed);

  void insert(std::uint64_t item);
  double estimate() const;

  /// Register-wise max with a sketch of identical precision and hash seed.
  void merge(const HllSketch& other);
  static HllSketch united(const HllSketch& a, const HllSketch& b);

  int precision_bits() const { return precision_; }
  std::uint64_t hash_seed() const { return seed_; }
  std::span<const std::uint8_t> registers() const {
    return {registers_.data(), registers_.size()};
  }
  bool operator==(const HllSketch&) const = default;

 private:
  void check_compatible(const HllSketch& other) const;

  int precision_;
  std::uint64_t seed_;
  std::vector<std::uint8_t> registers_;
};

/// Inclusion-exclusion intersection estimate |A| + |B| - |A ∪ B|, clamped at
/// zero (near-disjoint sets can drive it slightly negative).
double hll_intersect_estimate(const HllSketch& a, const HllSketch& b);

/// Approximate per-candidate square counts through the distance-two frontier,
/// computed on the weak graph only: for each candidate b, the sum over
/// frontier neighbors c of max(0, |sketch(N(c)) ∩ sketch(B)| - 1). The exact
/// counterpart of the summand is |N(c) ∩ B| - 1, which sums to the weak
/// 4-cycle count through C for b.
struct ApproxSquareScore {
  NodeId candidate = kNoNode;
  double approx = 0.0;
};
std::vector<ApproxSquareScore> approx_square_counts(const LayeredGraph& g,
                                                    NodeId a,
                                                    int precision_bits,
                                                    std::uint64_t hash_seed);

/// Exact reference for approx_square_counts: per candidate b,
/// sum over c in N(b) ∩ C of (|N(c) ∩ B| - 1).
std::vector<std::uint64_t> exact_weak_square_counts(const LayeredGraph& g,
                                                    NodeId a);

}  // namespace strongties
