#include "strongties/hll.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "strongties/rng.hpp"

namespace strongties {

namespace {

double alpha_for(std::size_t m) {
  switch (m) {
    case 16: return 0.673;
    case 32: return 0.697;
    case 64: return 0.709;
    default: return 0.7213 / (1.0 + 1.079 / static_cast<double>(m));
  }
}

}  // namespace

HllSketch::HllSketch(int precision_bits, std::uint64_t hash_seed)
    : precision_(precision_bits), seed_(hash_seed) {
  if (precision_bits < kMinPrecision || precision_bits > kMaxPrecision)
    throw std::invalid_argument("hll precision must be in [4, 18], got " +
                                std::to_string(precision_bits));
  registers_.assign(std::size_t{1} << precision_bits, 0);
}

void HllSketch::insert(std::uint64_t item) {
  const std::uint64_t h = mix64(mix64(seed_) ^ item);
  const std::size_t bucket = static_cast<std::size_t>(h >> (64 - precision_));
  const std::uint64_t suffix = h << precision_;
  // Rank of the leading one-bit of the (64 - p)-bit suffix, capped so that
  // register values stay within [0, 64 - p].
  const int zeros = suffix == 0 ? 64 : std::countl_zero(suffix);
  const int rank = std::min(zeros + 1, 64 - precision_);
  registers_[bucket] =
      std::max(registers_[bucket], static_cast<std::uint8_t>(rank));
}

double HllSketch::estimate() const {
  const double m = static_cast<double>(registers_.size());
  double sum = 0.0;
  std::size_t zeros = 0;
  for (std::uint8_t r : registers_) {
    sum += std::ldexp(1.0, -static_cast<int>(r));
    if (r == 0) ++zeros;
  }
  const double raw = alpha_for(registers_.size()) * m * m / sum;
  if (raw <= 2.5 * m && zeros > 0)
    return m * std::log(m / static_cast<double>(zeros));
  return raw;
}

void HllSketch::check_compatible(const HllSketch& other) const {
  if (precision_ != other.precision_ || seed_ != other.seed_)
    throw std::invalid_argument(
        "incompatible sketches: precision or hash seed mismatch");
}

void HllSketch::merge(const HllSketch& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < registers_.size(); ++i)
    registers_[i] = std::max(registers_[i], other.registers_[i]);
}

HllSketch HllSketch::united(const HllSketch& a, const HllSketch& b) {
  HllSketch out = a;
  out.merge(b);
  return out;
}

double hll_intersect_estimate(const HllSketch& a, const HllSketch& b) {
  const HllSketch u = HllSketch::united(a, b);
  const double est = a.estimate() + b.estimate() - u.estimate();
  return est < 0.0 ? 0.0 : est;
}

std::vector<ApproxSquareScore> approx_square_counts(const LayeredGraph& g,
                                                    NodeId a,
                                                    int precision_bits,
                                                    std::uint64_t hash_seed) {
  const auto b_nodes = g.neighbors(a, Layer::Weak);
  const auto c_nodes = frontier_two(g, a);
  std::vector<std::uint8_t> in_b(g.node_count(), 0);
  for (NodeId b : b_nodes) in_b[b] = 1;

  HllSketch sketch_b(precision_bits, hash_seed);
  for (NodeId b : b_nodes) sketch_b.insert(b);

  std::vector<double> per_candidate(g.node_count(), 0.0);
  for (NodeId c : c_nodes) {
    HllSketch sketch_c(precision_bits, hash_seed);
    for (NodeId w : g.neighbors(c, Layer::Weak)) sketch_c.insert(w);
    const double term =
        std::max(0.0, hll_intersect_estimate(sketch_c, sketch_b) - 1.0);
    for (NodeId w : g.neighbors(c, Layer::Weak))
      if (in_b[w]) per_candidate[w] += term;
  }

  std::vector<ApproxSquareScore> out;
  out.reserve(b_nodes.size());
  for (NodeId b : b_nodes) out.push_back({b, per_candidate[b]});
  return out;
}

std::vector<std::uint64_t> exact_weak_square_counts(const LayeredGraph& g,
                                                    NodeId a) {
  const auto b_nodes = g.neighbors(a, Layer::Weak);
  const auto c_nodes = frontier_two(g, a);
  std::vector<std::uint8_t> in_b(g.node_count(), 0);
  for (NodeId b : b_nodes) in_b[b] = 1;

  std::vector<std::uint64_t> per_candidate(g.node_count(), 0);
  for (NodeId c : c_nodes) {
    std::uint64_t overlap = 0;
    for (NodeId w : g.neighbors(c, Layer::Weak))
      if (in_b[w]) ++overlap;
    if (overlap == 0) continue;
    for (NodeId w : g.neighbors(c, Layer::Weak))
      if (in_b[w]) per_candidate[w] += overlap - 1;
  }
  std::vector<std::uint64_t> out;
  out.reserve(b_nodes.size());
  for (NodeId b : b_nodes) out.push_back(per_candidate[b]);
  return out;
}

}  // namespace strongties
