#include "strongties/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "strongties/rng.hpp"

namespace strongties {

namespace {

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool eligible(const LayeredGraph& g, NodeId v, const SplitSpec& spec) {
  const auto d = g.degree(v, Layer::Weak);
  return g.degree(v, Layer::Strong) > 0 && d >= spec.d_min && d <= spec.d_max;
}

}  // namespace

const std::vector<NodeId>* HiddenSplit::truth_for(NodeId v) const {
  const auto it = std::lower_bound(test_nodes.begin(), test_nodes.end(), v);
  if (it == test_nodes.end() || *it != v) return nullptr;
  return &ground_truth[static_cast<std::size_t>(it - test_nodes.begin())];
}

HiddenSplit make_split(const LayeredGraph& g, const SplitSpec& spec) {
  if (spec.test_fraction <= 0.0 || spec.test_fraction >= 1.0)
    throw std::invalid_argument("test_fraction must be in (0, 1)");
  if (spec.d_min > spec.d_max)
    throw std::invalid_argument("degree band is empty (d_min > d_max)");

  std::vector<NodeId> pool;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (eligible(g, v, spec)) pool.push_back(v);
  if (pool.empty())
    throw EmptyEligibleError(
        "no nodes with strong ties inside the degree band");

  const auto take = static_cast<std::size_t>(
      std::ceil(spec.test_fraction * static_cast<double>(pool.size())));
  HiddenSplit split;
  split.eligible_count = pool.size();

  // Partial Fisher-Yates: positions [0, take) become the sample.
  std::mt19937_64 eng(keyed_u64(spec.seed, /*stream=*/0x73706c69u, 0));
  for (std::size_t i = 0; i < take && i + 1 < pool.size(); ++i) {
    const auto j = i + static_cast<std::size_t>(bounded(eng, pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  split.test_nodes.assign(pool.begin(),
                          pool.begin() + static_cast<std::ptrdiff_t>(
                                             std::min(take, pool.size())));
  std::sort(split.test_nodes.begin(), split.test_nodes.end());

  std::vector<std::uint8_t> is_test(g.node_count(), 0);
  for (NodeId v : split.test_nodes) is_test[v] = 1;

  // Rebuild without the strong flags incident to test nodes; weak edges are
  // untouched.
  GraphBuilder builder;
  for (NodeId v = 0; v < g.node_count(); ++v) builder.add_node(g.external_id(v));
  std::size_t hidden = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u, Layer::Weak)) {
      if (v < u) continue;
      const bool strong = g.has_edge(u, v, Layer::Strong);
      const bool hide = strong && (is_test[u] || is_test[v]);
      builder.add_edge(g.external_id(u), g.external_id(v), strong && !hide);
      if (hide) ++hidden;
    }
  }
  split.train_graph = builder.finalize();
  split.hidden_edge_count = hidden;

  split.ground_truth.reserve(split.test_nodes.size());
  for (NodeId v : split.test_nodes) {
    const auto strong = g.neighbors(v, Layer::Strong);
    split.ground_truth.emplace_back(strong.begin(), strong.end());
  }
  return split;
}

namespace {

class ScoreMethod : public Method {
 public:
  explicit ScoreMethod(ScoreKind kind)
      : kind_(kind), name_(score_name(kind)) {}
  const std::string& name() const override { return name_; }
  std::vector<NodeId> rank(NodeId,
                           const std::vector<CandidateScores>& scores)
      const override {
    return rank_candidates(scores, kind_, rank_direction(kind_));
  }

 private:
  ScoreKind kind_;
  std::string name_;
};

class RandomMethod : public Method {
 public:
  explicit RandomMethod(std::uint64_t seed) : seed_(seed), name_("random") {}
  const std::string& name() const override { return name_; }
  std::vector<NodeId> rank(NodeId a,
                           const std::vector<CandidateScores>& scores)
      const override {
    std::vector<NodeId> order;
    order.reserve(scores.size());
    for (const auto& s : scores) order.push_back(s.candidate);
    std::mt19937_64 eng(keyed_u64(seed_, /*stream=*/0x72616e64u, a));
    shuffle_vec(eng, order);
    return order;
  }

 private:
  std::uint64_t seed_;
  std::string name_;
};

class ModelMethod : public Method {
 public:
  ModelMethod(std::string name, LRModel model, FeatureSet set)
      : name_(std::move(name)), model_(std::move(model)), set_(set) {}
  const std::string& name() const override { return name_; }
  std::vector<NodeId> rank(NodeId,
                           const std::vector<CandidateScores>& scores)
      const override {
    std::vector<RankedValue> values;
    values.reserve(scores.size());
    for (const auto& s : scores)
      values.push_back(
          {s.candidate, model_.predict(featurize(s, set_)), s.degree});
    return rank_by_value(std::move(values), RankDirection::Maximize);
  }

 private:
  std::string name_;
  LRModel model_;
  FeatureSet set_;
};

class OracleMethod : public Method {
 public:
  explicit OracleMethod(const HiddenSplit& split)
      : split_(&split), name_("oracle") {}
  const std::string& name() const override { return name_; }
  std::vector<NodeId> rank(NodeId a,
                           const std::vector<CandidateScores>& scores)
      const override {
    const auto* truth = split_->truth_for(a);
    std::vector<RankedValue> values;
    values.reserve(scores.size());
    for (const auto& s : scores) {
      const bool hit =
          truth && std::binary_search(truth->begin(), truth->end(),
                                      s.candidate);
      values.push_back({s.candidate, hit ? 1.0 : 0.0, s.degree});
    }
    return rank_by_value(std::move(values), RankDirection::Maximize);
  }

 private:
  const HiddenSplit* split_;
  std::string name_;
};

class ConstantMethod : public Method {
 public:
  ConstantMethod() : name_("constant") {}
  const std::string& name() const override { return name_; }
  std::vector<NodeId> rank(NodeId,
                           const std::vector<CandidateScores>& scores)
      const override {
    std::vector<RankedValue> values;
    values.reserve(scores.size());
    for (const auto& s : scores) values.push_back({s.candidate, 0.0, s.degree});
    return rank_by_value(std::move(values), RankDirection::Maximize);
  }

 private:
  std::string name_;
};

struct BucketAccumulator {
  std::size_t nodes = 0;
  double precision_sum = 0.0;
};

EvalReport evaluate(const HiddenSplit& split,
                    const std::vector<std::unique_ptr<Method>>& methods,
                    const SplitSpec& spec, std::uint32_t bucket_width,
                    std::size_t top_k, std::size_t min_truth) {
  if (bucket_width == 0)
    throw std::invalid_argument("bucket width must be positive");
  EvalReport report;
  // bucket index -> accumulator, one map per method, keyed by bucket_lo
  std::vector<std::map<std::uint32_t, BucketAccumulator>> acc(methods.size());

  for (std::size_t ti = 0; ti < split.test_nodes.size(); ++ti) {
    const NodeId a = split.test_nodes[ti];
    const auto& truth = split.ground_truth[ti];
    if (truth.size() < min_truth) continue;
    const auto degree =
        static_cast<std::uint32_t>(split.train_graph.degree(a, Layer::Weak));
    if (degree == 0) {
      ++report.skipped_nodes;  // unreachable with d_min >= 1; guarded anyway
      continue;
    }
    const std::uint32_t bucket_lo =
        spec.d_min + (degree - spec.d_min) / bucket_width * bucket_width;
    const EgoScorer scorer(split.train_graph, a);
    const auto scores = scorer.score_all();
    ++report.evaluated_nodes;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const auto ranking = methods[mi]->rank(a, scores);
      const std::size_t k = std::min(top_k, ranking.size());
      std::size_t hits = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (std::binary_search(truth.begin(), truth.end(), ranking[i])) ++hits;
      auto& bucket = acc[mi][bucket_lo];
      ++bucket.nodes;
      bucket.precision_sum +=
          static_cast<double>(hits) / static_cast<double>(top_k);
    }
  }

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (const auto& [lo, bucket] : acc[mi]) {
      EvalRow row;
      row.method = methods[mi]->name();
      row.bucket_lo = lo;
      row.bucket_hi = std::min(lo + bucket_width - 1, spec.d_max);
      row.nodes = bucket.nodes;
      row.precision = bucket.precision_sum / static_cast<double>(bucket.nodes);
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace

std::unique_ptr<Method> make_score_method(ScoreKind kind) {
  return std::make_unique<ScoreMethod>(kind);
}
std::unique_ptr<Method> make_random_method(std::uint64_t seed) {
  return std::make_unique<RandomMethod>(seed);
}
std::unique_ptr<Method> make_model_method(std::string name, LRModel model,
                                          FeatureSet set) {
  return std::make_unique<ModelMethod>(std::move(name), std::move(model), set);
}
std::unique_ptr<Method> make_oracle_method(const HiddenSplit& split) {
  return std::make_unique<OracleMethod>(split);
}
std::unique_ptr<Method> make_constant_method() {
  return std::make_unique<ConstantMethod>();
}

double EvalReport::overall(std::string_view method) const {
  std::size_t nodes = 0;
  double sum = 0.0;
  for (const auto& row : rows) {
    if (row.method != method) continue;
    nodes += row.nodes;
    sum += row.precision * static_cast<double>(row.nodes);
  }
  return nodes == 0 ? 0.0 : sum / static_cast<double>(nodes);
}

std::string EvalReport::to_csv(
    const std::vector<std::string>& header_comments) const {
  std::string out;
  for (const auto& line : header_comments) out += "# " + line + "\n";
  out += "method,bucket_lo,bucket_hi,n,precision\n";
  for (const auto& row : rows) {
    out += row.method;
    out += ',' + std::to_string(row.bucket_lo);
    out += ',' + std::to_string(row.bucket_hi);
    out += ',' + std::to_string(row.nodes);
    out += ',' + fmt_g17(row.precision);
    out += '\n';
  }
  return out;
}

EvalReport evaluate_p_at_1(const HiddenSplit& split,
                           const std::vector<std::unique_ptr<Method>>& methods,
                           const SplitSpec& spec, std::uint32_t bucket_width) {
  return evaluate(split, methods, spec, bucket_width, /*top_k=*/1,
                  /*min_truth=*/1);
}

EvalReport evaluate_p_at_5(const HiddenSplit& split,
                           const std::vector<std::unique_ptr<Method>>& methods,
                           const SplitSpec& spec, std::uint32_t bucket_width) {
  return evaluate(split, methods, spec, bucket_width, /*top_k=*/5,
                  /*min_truth=*/5);
}

std::vector<Example> build_training_examples(const LayeredGraph& train_graph,
                                             const SplitSpec& spec,
                                             FeatureSet set) {
  std::vector<Example> examples;
  for (NodeId a = 0; a < train_graph.node_count(); ++a) {
    if (!eligible(train_graph, a, spec)) continue;
    // Mask the focal node's own strong flags so features match the test-time
    // view; labels still come from the real flags.
    const EgoScorer scorer(StrongTieView(train_graph, a), a);
    for (const auto& s : scorer.score_all()) {
      Example ex;
      ex.x = featurize(s, set);
      ex.label =
          train_graph.has_edge(a, s.candidate, Layer::Strong) ? 1 : 0;
      examples.push_back(std::move(ex));
    }
  }
  return examples;
}

RandomBaseline random_p1_baseline(const HiddenSplit& split) {
  RandomBaseline base;
  if (split.test_nodes.empty()) return base;
  double sum = 0.0;
  for (std::size_t ti = 0; ti < split.test_nodes.size(); ++ti) {
    const double p =
        static_cast<double>(split.ground_truth[ti].size()) /
        static_cast<double>(
            split.train_graph.degree(split.test_nodes[ti], Layer::Weak));
    sum += p;
    base.variance_sum += p * (1.0 - p);
  }
  base.expected_p1 = sum / static_cast<double>(split.test_nodes.size());
  return base;
}

}  // namespace strongties
