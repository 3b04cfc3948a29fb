#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "strongties/graph.hpp"
#include "strongties/logreg.hpp"
#include "strongties/motifs.hpp"

namespace strongties {

/// Hide-and-predict split parameters: the eligible population is every node
/// with at least one strong tie and weak degree inside [d_min, d_max].
struct SplitSpec {
  double test_fraction = 0.05;
  std::uint32_t d_min = 10;
  std::uint32_t d_max = 75;
  std::uint64_t seed = 0;
};

/// A hidden split: test nodes keep their weak edges but every strong flag on
/// an edge incident to a test node is cleared in train_graph. An edge between
/// two test nodes is hidden once and credited to both ground-truth sets.
struct HiddenSplit {
  LayeredGraph train_graph;
  std::vector<NodeId> test_nodes;                 // ascending
  std::vector<std::vector<NodeId>> ground_truth;  // parallel, each sorted
  std::size_t eligible_count = 0;
  std::size_t hidden_edge_count = 0;

  const std::vector<NodeId>* truth_for(NodeId v) const;
};

class EmptyEligibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

HiddenSplit make_split(const LayeredGraph& g, const SplitSpec& spec);

/// A prediction method: produces a total ranking of the candidate set from
/// the shared per-candidate score vectors. Implementations must be pure
/// functions of (a, scores) plus their own frozen state.
class Method {
 public:
  virtual ~Method() = default;
  virtual const std::string& name() const = 0;
  virtual std::vector<NodeId> rank(NodeId a,
                                   const std::vector<CandidateScores>& scores)
      const = 0;
};

std::unique_ptr<Method> make_score_method(ScoreKind kind);
std::unique_ptr<Method> make_random_method(std::uint64_t seed);
/// Ranks by model probability (descending), ties by degree then id.
std::unique_ptr<Method> make_model_method(std::string name, LRModel model,
                                          FeatureSet set);
/// Scores 1 on hidden strong neighbors; sanity ceiling (p@k = 1).
std::unique_ptr<Method> make_oracle_method(const HiddenSplit& split);
/// Scores every candidate equally, exposing the pure tie-break order.
std::unique_ptr<Method> make_constant_method();

struct EvalRow {
  std::string method;
  std::uint32_t bucket_lo = 0, bucket_hi = 0;
  std::size_t nodes = 0;
  double precision = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::size_t evaluated_nodes = 0;
  std::size_t skipped_nodes = 0;  // guard only; cannot happen in-band
  double overall(std::string_view method) const;
  std::string to_csv(const std::vector<std::string>& header_comments) const;
};

/// Fraction of test nodes whose top-ranked candidate is a hidden strong
/// neighbor, bucketed by weak degree.
EvalReport evaluate_p_at_1(const HiddenSplit& split,
                           const std::vector<std::unique_ptr<Method>>& methods,
                           const SplitSpec& spec, std::uint32_t bucket_width = 1);

/// Mean |top-5 ∩ hidden| / 5 over test nodes with at least five hidden
/// strong edges.
EvalReport evaluate_p_at_5(const HiddenSplit& split,
                           const std::vector<std::unique_ptr<Method>>& methods,
                           const SplitSpec& spec, std::uint32_t bucket_width = 1);

/// Training examples for the score-combining models: every weak neighbor b
/// of every eligible non-test node a' (strong degree > 0, degree band),
/// labeled by (a', b) strong membership. The focal node's own strong flags
/// are masked during feature computation so train matches the test-time view.
std::vector<Example> build_training_examples(const LayeredGraph& train_graph,
                                             const SplitSpec& spec,
                                             FeatureSet set);

/// Expected p@1 of the uniform-random method: mean over test nodes of
/// |ground_truth| / d_L, plus the binomial variance of the hit count.
struct RandomBaseline {
  double expected_p1 = 0.0;
  double variance_sum = 0.0;  // sum of p_v (1 - p_v) over test nodes
};
RandomBaseline random_p1_baseline(const HiddenSplit& split);

}  // namespace strongties
