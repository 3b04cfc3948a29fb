#include "strongties/planted.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include "strongties/parallel.hpp"
#include "strongties/rng.hpp"

namespace strongties {

namespace {

// Stream tags for the pair-keyed draws; disjoint streams keep the within,
// cross and per-type coin flips independent under a shared seed.
constexpr std::uint64_t kStreamMembership1 = 0x6d656d31;
constexpr std::uint64_t kStreamMembership2 = 0x6d656d32;
constexpr std::uint64_t kStreamWithin1 = 0x77697431;
constexpr std::uint64_t kStreamWithin2 = 0x77697432;
constexpr std::uint64_t kStreamCross = 0x63726f73;

std::vector<std::uint32_t> draw_memberships(std::uint32_t n, std::uint32_t k,
                                            std::uint64_t seed,
                                            std::uint64_t stream) {
  std::mt19937_64 eng(keyed_u64(seed, stream, 0));
  std::vector<std::uint32_t> m(n);
  for (auto& v : m) v = static_cast<std::uint32_t>(bounded(eng, k));
  return m;
}

}  // namespace

double PlantedConfig::within_edge_prob() const {
  return p * q / std::sqrt(static_cast<double>(c));
}

std::uint32_t PlantedConfig::groups_per_type() const {
  return c == 0 ? 0 : (n + c - 1) / c;
}

double PlantedConfig::default_noise(std::uint32_t n) {
  return n == 0 ? 0.0 : std::log(static_cast<double>(n)) / n;
}

void PlantedConfig::validate() const {
  if (n == 0) throw std::invalid_argument("planted config: n must be positive");
  if (c == 0) throw std::invalid_argument("planted config: c must be positive");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("planted config: p must be in [0,1]");
  if (q < 0.0) throw std::invalid_argument("planted config: q must be >= 0");
  if (r < 0.0 || r > 1.0)
    throw std::invalid_argument("planted config: r must be in [0,1]");
  if (within_edge_prob() > 1.0)
    throw std::invalid_argument(
        "planted config: within-community probability p*q/sqrt(c) exceeds 1");
  if (groups_per_type() < 2)
    throw std::invalid_argument(
        "planted config: ceil(n/c) must be at least 2 communities");
}

PlantedGraph gen_single(const PlantedConfig& cfg) {
  cfg.validate();
  const std::uint32_t k = cfg.groups_per_type();
  const double pin = cfg.within_edge_prob();
  PlantedGraph pg;
  pg.memberships.push_back(
      draw_memberships(cfg.n, k, cfg.seed, kStreamMembership1));
  const auto& m = pg.memberships[0];

  GraphBuilder builder;
  for (std::uint32_t v = 0; v < cfg.n; ++v) builder.add_node(v);
  for (std::uint32_t u = 0; u + 1 < cfg.n; ++u) {
    for (std::uint32_t v = u + 1; v < cfg.n; ++v) {
      if (m[u] == m[v]) {
        if (pin > 0.0 && keyed_unit(cfg.seed, kStreamWithin1, u, v) < pin)
          builder.add_edge(u, v, /*strong=*/true);
      } else {
        if (cfg.r > 0.0 && keyed_unit(cfg.seed, kStreamCross, u, v) < cfg.r)
          builder.add_edge(u, v, /*strong=*/false);
      }
    }
  }
  pg.graph = builder.finalize();
  return pg;
}

PlantedGraph gen_double(const PlantedConfig& cfg) {
  cfg.validate();
  const std::uint32_t k = cfg.groups_per_type();
  const double pin = cfg.within_edge_prob();
  PlantedGraph pg;
  pg.memberships.push_back(
      draw_memberships(cfg.n, k, cfg.seed, kStreamMembership1));
  pg.memberships.push_back(
      draw_memberships(cfg.n, k, cfg.seed, kStreamMembership2));
  const auto& m1 = pg.memberships[0];
  const auto& m2 = pg.memberships[1];

  GraphBuilder builder;
  for (std::uint32_t v = 0; v < cfg.n; ++v) builder.add_node(v);
  for (std::uint32_t u = 0; u + 1 < cfg.n; ++u) {
    for (std::uint32_t v = u + 1; v < cfg.n; ++v) {
      const bool s1 = m1[u] == m1[v];
      const bool s2 = m2[u] == m2[v];
      if (s1 || s2) {
        // Independent chance per shared type; an edge from either is strong.
        bool strong = false;
        if (s1 && pin > 0.0 &&
            keyed_unit(cfg.seed, kStreamWithin1, u, v) < pin)
          strong = true;
        if (!strong && s2 && pin > 0.0 &&
            keyed_unit(cfg.seed, kStreamWithin2, u, v) < pin)
          strong = true;
        if (strong) builder.add_edge(u, v, /*strong=*/true);
      } else {
        if (cfg.r > 0.0 && keyed_unit(cfg.seed, kStreamCross, u, v) < cfg.r)
          builder.add_edge(u, v, /*strong=*/false);
      }
    }
  }
  pg.graph = builder.finalize();
  return pg;
}

PlantedGraph generate_planted(const PlantedConfig& cfg) {
  return cfg.model == PlantedModel::Single ? gen_single(cfg) : gen_double(cfg);
}

std::string serialize_memberships(const PlantedGraph& pg) {
  std::string out;
  for (std::size_t t = 0; t < pg.memberships.size(); ++t) {
    for (std::size_t v = 0; v < pg.memberships[t].size(); ++v) {
      out += std::to_string(pg.graph.external_id(static_cast<NodeId>(v)));
      out += '\t';
      out += std::to_string(t + 1);
      out += '\t';
      out += std::to_string(pg.memberships[t][v]);
      out += '\n';
    }
  }
  return out;
}

void save_memberships(const PlantedGraph& pg,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write membership file: " + path.string());
  out << serialize_memberships(pg);
}

std::vector<EdgeMotifCounts> edge_motif_counts(const LayeredGraph& g) {
  const NodeId n = g.node_count();
  std::vector<EdgeMotifCounts> out;
  out.reserve(g.edge_count(Layer::Weak));
  std::vector<std::uint8_t> mark(n, 0);
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y : g.neighbors(x, Layer::Weak)) {
      if (y < x) continue;
      const auto ny = g.neighbors(y, Layer::Weak);
      for (NodeId w : ny) mark[w] = 1;
      EdgeMotifCounts counts{x, y, 0, 0};
      for (NodeId u : g.neighbors(x, Layer::Weak)) {
        if (mark[u]) ++counts.triangles;  // y itself is never marked
        if (u == y) continue;
        // interior pair (u, v): v adjacent to both u and y, v != x
        for (NodeId v : g.neighbors(u, Layer::Weak))
          if (mark[v] && v != x) ++counts.squares;
      }
      for (NodeId w : ny) mark[w] = 0;
      out.push_back(counts);
    }
  }
  return out;
}

double bound_square_within(const PlantedConfig& cfg) {
  const double rho = cfg.rho();
  return (1.0 - 5.0 / cfg.n) * std::sqrt(static_cast<double>(cfg.c)) * rho *
         rho * rho;
}

double prob_triangle_within(std::uint32_t c, double rho) {
  if (c < 3) return 0.0;
  const double pe = rho / std::sqrt(static_cast<double>(c));
  return 1.0 - std::pow(1.0 - pe * pe, static_cast<double>(c - 2));
}

double prob_square_within(std::uint32_t c, double rho) {
  if (c < 4) return 0.0;
  const double pe = rho / std::sqrt(static_cast<double>(c));
  return 1.0 - std::pow(1.0 - pe * pe * pe,
                        static_cast<double>(c - 2) * (c - 3));
}

double prob_triangle_within(const PlantedConfig& cfg) {
  return prob_triangle_within(cfg.c, cfg.rho());
}
double prob_square_within(const PlantedConfig& cfg) {
  return prob_square_within(cfg.c, cfg.rho());
}

const StratumStats* ExpectationReport::stratum(std::string_view name) const {
  for (const auto& s : strata)
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

struct TrialStratum {
  std::uint64_t edges = 0;
  double mean_tri = 0.0;
  double mean_sq = 0.0;
};

StratumStats aggregate(const std::string& name,
                       const std::vector<std::vector<TrialStratum>>& trials,
                       std::size_t index) {
  StratumStats stats;
  stats.name = name;
  std::vector<double> tri, sq;
  for (const auto& t : trials) {
    if (t[index].edges == 0) continue;
    stats.total_edges += t[index].edges;
    tri.push_back(t[index].mean_tri);
    sq.push_back(t[index].mean_sq);
  }
  stats.trials_with_edges = tri.size();
  if (tri.empty()) return stats;
  stats.empty = false;
  auto mean_se = [](const std::vector<double>& xs, double& mean, double& se) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) {
      se = 0.0;
      return;
    }
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    se = std::sqrt(var / static_cast<double>(xs.size()));
  };
  mean_se(tri, stats.mean_triangles, stats.se_triangles);
  mean_se(sq, stats.mean_squares, stats.se_squares);
  return stats;
}

BoundCheck make_check(const std::string& name, const StratumStats& s,
                      bool squares, double bound, bool is_upper) {
  BoundCheck check;
  check.name = name;
  check.bound = bound;
  check.is_upper = is_upper;
  if (s.empty) {
    check.vacuous = true;
    check.satisfied = true;
    return check;
  }
  check.observed = squares ? s.mean_squares : s.mean_triangles;
  check.slack = 3.0 * (squares ? s.se_squares : s.se_triangles);
  check.satisfied = is_upper ? check.observed < bound + check.slack
                             : check.observed > bound - check.slack;
  return check;
}

}  // namespace

ExpectationReport verify_expectations(const PlantedConfig& cfg,
                                      std::size_t trials, int jobs) {
  if (trials == 0)
    throw std::invalid_argument("verify_expectations: trials must be >= 1");
  cfg.validate();
  const bool single = cfg.model == PlantedModel::Single;
  const std::vector<std::string> names =
      single ? std::vector<std::string>{"within", "cross"}
             : std::vector<std::string>{"shared", "shared_both", "non_sharing"};

  std::vector<std::vector<TrialStratum>> per_trial(
      trials, std::vector<TrialStratum>(names.size()));
  run_indexed(trials, jobs, [&](std::size_t t) {
    PlantedConfig trial_cfg = cfg;
    trial_cfg.seed = mix64(cfg.seed ^ mix64(t));
    const PlantedGraph pg = generate_planted(trial_cfg);
    const auto counts = edge_motif_counts(pg.graph);
    std::vector<std::uint64_t> edges(names.size(), 0);
    std::vector<double> tri(names.size(), 0.0), sq(names.size(), 0.0);
    for (const auto& e : counts) {
      const std::size_t shared = pg.shared_groups(e.u, e.v);
      std::vector<std::size_t> idx;
      if (single) {
        idx.push_back(shared > 0 ? 0 : 1);
      } else {
        if (shared > 0) idx.push_back(0);
        if (shared == 2) idx.push_back(1);
        if (shared == 0) idx.push_back(2);
      }
      for (std::size_t i : idx) {
        ++edges[i];
        tri[i] += static_cast<double>(e.triangles);
        sq[i] += static_cast<double>(e.squares);
      }
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      per_trial[t][i].edges = edges[i];
      if (edges[i] > 0) {
        per_trial[t][i].mean_tri = tri[i] / static_cast<double>(edges[i]);
        per_trial[t][i].mean_sq = sq[i] / static_cast<double>(edges[i]);
      }
    }
  });

  ExpectationReport report;
  report.config = cfg;
  report.trials = trials;
  for (std::size_t i = 0; i < names.size(); ++i)
    report.strata.push_back(aggregate(names[i], per_trial, i));

  const double sqrt_c_rho3 =
      std::sqrt(static_cast<double>(cfg.c)) * std::pow(cfg.rho(), 3);
  if (single) {
    const auto& within = report.strata[0];
    const auto& cross = report.strata[1];
    report.checks.push_back(
        make_check("E[triangles] < 1 (within)", within, false, 1.0, true));
    report.checks.push_back(
        make_check("E[triangles] < 1 (cross)", cross, false, 1.0, true));
    report.checks.push_back(
        make_check("E[squares] < 1 (cross)", cross, true, 1.0, true));
    report.checks.push_back(make_check("E[squares] > (1-5/n)sqrt(c)rho^3 (within)",
                                       within, true, bound_square_within(cfg),
                                       false));
  } else {
    const auto& shared = report.strata[0];
    const auto& non = report.strata[2];
    report.checks.push_back(
        make_check("E[triangles] < 2 (shared)", shared, false, 2.0, true));
    report.checks.push_back(make_check("E[squares] > sqrt(c)rho^3 (shared)",
                                       shared, true, sqrt_c_rho3, false));
    report.checks.push_back(
        make_check("E[triangles] < 1 (non-sharing)", non, false, 1.0, true));
    report.checks.push_back(
        make_check("E[squares] < 1 (non-sharing)", non, true, 1.0, true));
  }
  return report;
}

}  // namespace strongties
