#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "strongties/eval.hpp"
#include "strongties/planted.hpp"
#include "strongties/rng.hpp"
#include "support/test_graphs.hpp"

using namespace strongties;

namespace {

// Star around node 0 with `leaves` neighbors, the first `strong` of them
// strong ties. Only the center is split-eligible (leaves have degree 1).
LayeredGraph star_graph(std::uint32_t leaves, std::uint32_t strong) {
  GraphBuilder builder;
  for (std::uint32_t v = 0; v <= leaves; ++v) builder.add_node(v);
  for (std::uint32_t v = 1; v <= leaves; ++v)
    builder.add_edge(0, v, v <= strong);
  return builder.finalize();
}

PlantedGraph small_planted(std::uint64_t seed) {
  PlantedConfig cfg;
  cfg.n = 800;
  cfg.c = 25;
  cfg.p = 0.85;
  cfg.q = 1.2;
  cfg.r = PlantedConfig::default_noise(800);
  cfg.seed = seed;
  return gen_single(cfg);
}

SplitSpec default_spec(std::uint64_t seed) {
  SplitSpec spec;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("make_split selects the single eligible node") {
  const LayeredGraph g = star_graph(12, 3);
  const SplitSpec spec = default_spec(4);
  const HiddenSplit split = make_split(g, spec);
  CHECK(split.eligible_count == 1);
  REQUIRE(split.test_nodes == std::vector<NodeId>{0});
  CHECK(split.ground_truth[0] == std::vector<NodeId>{1, 2, 3});
  CHECK(split.hidden_edge_count == 3);
  CHECK(split.train_graph.degree(0, Layer::Strong) == 0);
  CHECK(split.train_graph.degree(0, Layer::Weak) == 12);
}

TEST_CASE("make_split clears every test node's strong flags") {
  const PlantedGraph pg = small_planted(7);
  const HiddenSplit split = make_split(pg.graph, default_spec(1));
  CHECK(!split.test_nodes.empty());
  for (NodeId v : split.test_nodes) {
    CHECK(split.train_graph.degree(v, Layer::Strong) == 0);
    CHECK(split.train_graph.degree(v, Layer::Weak) ==
          pg.graph.degree(v, Layer::Weak));
  }
  for (const auto& truth : split.ground_truth) CHECK(!truth.empty());
}

TEST_CASE("make_split is seed-deterministic") {
  const PlantedGraph pg = small_planted(8);
  const HiddenSplit a = make_split(pg.graph, default_spec(42));
  const HiddenSplit b = make_split(pg.graph, default_spec(42));
  CHECK(a.test_nodes == b.test_nodes);
  CHECK(a.ground_truth == b.ground_truth);
  CHECK(a.eligible_count == b.eligible_count);
  CHECK(a.hidden_edge_count == b.hidden_edge_count);
  CHECK(a.train_graph.same_labeled_structure(b.train_graph));

  const HiddenSplit c = make_split(pg.graph, default_spec(43));
  CHECK(a.test_nodes != c.test_nodes);  // overwhelmingly likely
}

TEST_CASE("make_split rejects empty eligible sets and bad specs") {
  const LayeredGraph g = star_graph(5, 1);  // center degree 5 < d_min
  CHECK_THROWS_AS(make_split(g, default_spec(0)), EmptyEligibleError);
  SplitSpec bad = default_spec(0);
  bad.test_fraction = 0.0;
  CHECK_THROWS_AS(make_split(star_graph(12, 1), bad), std::invalid_argument);
}

TEST_CASE("oracle method reaches p@1 = 1 in every bucket") {
  const PlantedGraph pg = small_planted(9);
  const HiddenSplit split = make_split(pg.graph, default_spec(2));
  std::vector<std::unique_ptr<Method>> methods;
  methods.push_back(make_oracle_method(split));
  const EvalReport report =
      evaluate_p_at_1(split, methods, default_spec(2), /*bucket_width=*/1);
  CHECK(report.evaluated_nodes == split.test_nodes.size());
  std::size_t bucket_nodes = 0;
  for (const auto& row : report.rows) {
    CHECK(row.precision == 1.0);
    bucket_nodes += row.nodes;
  }
  CHECK(bucket_nodes == report.evaluated_nodes);  // buckets partition the set
}

TEST_CASE("random method matches its closed-form p@1 expectation") {
  const PlantedGraph pg = small_planted(10);
  const SplitSpec spec = default_spec(3);
  const HiddenSplit split = make_split(pg.graph, spec);
  const RandomBaseline baseline = random_p1_baseline(split);

  const std::size_t seeds = 100;
  double hits = 0.0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    std::vector<std::unique_ptr<Method>> methods;
    methods.push_back(make_random_method(s));
    const EvalReport report = evaluate_p_at_1(split, methods, spec);
    hits += report.overall("random") *
            static_cast<double>(report.evaluated_nodes);
  }
  const double expected =
      baseline.expected_p1 * static_cast<double>(split.test_nodes.size()) *
      static_cast<double>(seeds);
  const double sigma =
      std::sqrt(baseline.variance_sum * static_cast<double>(seeds));
  CHECK(std::abs(hits - expected) <= 3.0 * sigma);
}

TEST_CASE("constant scores reduce to the degree-then-id tie-break") {
  const PlantedGraph pg = small_planted(11);
  const SplitSpec spec = default_spec(5);
  const HiddenSplit split = make_split(pg.graph, spec);
  std::vector<std::unique_ptr<Method>> methods;
  methods.push_back(make_constant_method());
  methods.push_back(make_score_method(ScoreKind::Degree));
  const EvalReport report = evaluate_p_at_1(split, methods, spec);
  // identical rankings imply identical per-bucket precision
  std::map<std::uint32_t, double> constant, degree;
  for (const auto& row : report.rows)
    (row.method == "constant" ? constant : degree)[row.bucket_lo] =
        row.precision;
  CHECK(constant == degree);
}

TEST_CASE("p@5 oracle is perfect; random matches the hypergeometric mean") {
  const LayeredGraph g = star_graph(20, 5);
  const SplitSpec spec = default_spec(6);
  const HiddenSplit split = make_split(g, spec);
  REQUIRE(split.test_nodes == std::vector<NodeId>{0});

  std::vector<std::unique_ptr<Method>> oracle;
  oracle.push_back(make_oracle_method(split));
  const EvalReport oracle_report = evaluate_p_at_5(split, oracle, spec);
  REQUIRE(oracle_report.rows.size() == 1);
  CHECK(oracle_report.rows[0].precision == 1.0);

  const std::size_t seeds = 3000;
  double sum = 0.0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    std::vector<std::unique_ptr<Method>> methods;
    methods.push_back(make_random_method(s));
    sum += evaluate_p_at_5(split, methods, spec).rows[0].precision;
  }
  const double mean = sum / static_cast<double>(seeds);
  // X ~ Hypergeometric(20, 5, 5): E[X/5] = 0.25, sd(X/5) ~ 0.172
  CHECK(std::abs(mean - 0.25) <= 3.0 * 0.172 / std::sqrt(double(seeds)));
}

TEST_CASE("p@5 restricts to nodes with at least five hidden edges") {
  const PlantedGraph pg = small_planted(12);
  const SplitSpec spec = default_spec(7);
  const HiddenSplit split = make_split(pg.graph, spec);
  std::size_t qualifying = 0;
  for (const auto& truth : split.ground_truth)
    qualifying += truth.size() >= 5 ? 1 : 0;
  std::vector<std::unique_ptr<Method>> methods;
  methods.push_back(make_oracle_method(split));
  const EvalReport report = evaluate_p_at_5(split, methods, spec);
  CHECK(report.evaluated_nodes == qualifying);
}

TEST_CASE("information hygiene: train graph equals the masked original view") {
  const PlantedGraph pg = small_planted(13);
  SplitSpec spec = default_spec(8);
  spec.test_fraction = 1e-9;  // ceil picks exactly one test node
  const HiddenSplit split = make_split(pg.graph, spec);
  REQUIRE(split.test_nodes.size() == 1);
  const NodeId a = split.test_nodes[0];

  const EgoScorer from_train(split.train_graph, a);
  const EgoScorer from_masked(StrongTieView(pg.graph, a), a);
  for (NodeId b : from_train.candidates()) {
    const CandidateScores lhs = from_train.score(b);
    const CandidateScores rhs = from_masked.score(b);
    CHECK(lhs.degree == rhs.degree);
    CHECK(lhs.embeddedness == rhs.embeddedness);
    CHECK(lhs.adamic_adar == rhs.adamic_adar);
    CHECK(lhs.h1 == rhs.h1);
    CHECK(lhs.triangles == rhs.triangles);
    CHECK(lhs.squares_inside == rhs.squares_inside);
    CHECK(lhs.squares_outside == rhs.squares_outside);
    CHECK(lhs.pentagons_inside == rhs.pentagons_inside);
    CHECK(lhs.pentagons_outside == rhs.pentagons_outside);
  }
}

TEST_CASE("training examples mask the focal node's own strong flags") {
  const LayeredGraph g = star_graph(12, 4);
  // center 0 is eligible; h1 features must not see its own strong edges,
  // which are the only strong edges here, so every h1 feature is zero while
  // four labels are positive.
  const auto examples =
      build_training_examples(g, default_spec(0), FeatureSet::Group2);
  REQUIRE(examples.size() == 12);
  std::size_t positives = 0;
  for (const auto& ex : examples) {
    CHECK(ex.x[3] == 0.0);  // h1 position in the group2 layout
    positives += ex.label;
  }
  CHECK(positives == 4);
}

TEST_CASE("model method ranks by probability with shared tie-breaks") {
  const PlantedGraph pg = small_planted(14);
  const SplitSpec spec = default_spec(9);
  const HiddenSplit split = make_split(pg.graph, spec);
  const auto examples =
      build_training_examples(split.train_graph, spec, FeatureSet::Group2);
  TrainOptions opts;
  opts.epochs = 120;  // quick fit; quality is asserted elsewhere
  const LRModel model =
      train(examples, feature_schema(FeatureSet::Group2), opts);

  std::vector<std::unique_ptr<Method>> methods;
  methods.push_back(
      make_model_method("enhanced_lr", model, FeatureSet::Group2));
  methods.push_back(make_random_method(1));
  const EvalReport report = evaluate_p_at_1(split, methods, spec);
  CHECK(report.overall("enhanced_lr") >= 0.0);
  const std::string csv = report.to_csv({"config: test"});
  CHECK(csv.find("# config: test\n") == 0);
  CHECK(csv.find("method,bucket_lo,bucket_hi,n,precision\n") !=
        std::string::npos);
  CHECK(csv.find("enhanced_lr,") != std::string::npos);
}
