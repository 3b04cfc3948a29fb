#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "strongties/graph.hpp"

namespace strongties {

enum class PlantedModel { Single, Double };

/// Parameters of the planted-community generators. Within-community pairs
/// link with probability p*q/sqrt(c) and form the strong layer; pairs sharing
/// no community link with probability r as weak-only noise.
struct PlantedConfig {
  std::uint32_t n = 0;
  std::uint32_t c = 0;  // expected community size
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  PlantedModel model = PlantedModel::Single;
  std::uint64_t seed = 0;

  double rho() const { return p * q; }
  double within_edge_prob() const;
  std::uint32_t groups_per_type() const;  // ceil(n / c)
  void validate() const;                  // throws std::invalid_argument
  static double default_noise(std::uint32_t n);  // ln(n) / n
};

struct PlantedGraph {
  LayeredGraph graph;
  // memberships[t][v] = community of node v under type t; one type for the
  // single model, two independent types for the double model.
  std::vector<std::vector<std::uint32_t>> memberships;

  std::size_t shared_groups(NodeId u, NodeId v) const {
    std::size_t s = 0;
    for (const auto& m : memberships) s += (m[u] == m[v]) ? 1 : 0;
    return s;
  }
};

PlantedGraph gen_single(const PlantedConfig& cfg);
PlantedGraph gen_double(const PlantedConfig& cfg);
PlantedGraph generate_planted(const PlantedConfig& cfg);

/// Sidecar format: `node<TAB>type<TAB>community_id`, types 1-based.
void save_memberships(const PlantedGraph& pg, const std::filesystem::path&);
std::string serialize_memberships(const PlantedGraph& pg);

/// Per-edge triangle and 4-cycle counts on the weak graph only (labels are
/// deliberately ignored: the theory task treats every tie as weak). Squares
/// are unordered cycles; each one is identified by its interior pair
/// (u adjacent to x, v adjacent to y).
struct EdgeMotifCounts {
  NodeId u = 0, v = 0;  // u < v
  std::uint64_t triangles = 0;
  std::uint64_t squares = 0;
};
std::vector<EdgeMotifCounts> edge_motif_counts(const LayeredGraph& g);

/// Lower bound (1 - 5/n) * sqrt(c) * rho^3 on the expected within-community
/// square count.
double bound_square_within(const PlantedConfig& cfg);

/// Closed-form within-community participation probabilities for an edge of a
/// size-c community with link intensity rho. Nonpositive exponents (c < 3
/// resp. c < 4) degenerate to probability 0.
double prob_triangle_within(std::uint32_t c, double rho);
double prob_square_within(std::uint32_t c, double rho);
double prob_triangle_within(const PlantedConfig& cfg);
double prob_square_within(const PlantedConfig& cfg);

/// Monte-Carlo check of the expectation separation claims: per-stratum means
/// of triangle/square counts with standard errors over independent trials,
/// and a satisfied/violated flag per inequality at the 3-sigma level.
struct StratumStats {
  std::string name;
  std::size_t trials_with_edges = 0;
  std::uint64_t total_edges = 0;
  double mean_triangles = 0.0, se_triangles = 0.0;
  double mean_squares = 0.0, se_squares = 0.0;
  bool empty = true;
};
struct BoundCheck {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // 3 standard errors
  bool is_upper = true;
  bool satisfied = false;
  bool vacuous = false;
};
struct ExpectationReport {
  PlantedConfig config;
  std::size_t trials = 0;
  std::vector<StratumStats> strata;
  std::vector<BoundCheck> checks;
  const StratumStats* stratum(std::string_view name) const;
};
ExpectationReport verify_expectations(const PlantedConfig& cfg,
                                      std::size_t trials, int jobs = 1);

}  // namespace strongties
