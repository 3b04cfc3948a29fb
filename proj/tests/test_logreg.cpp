#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "strongties/fixture.hpp"
#include "strongties/logreg.hpp"
#include "strongties/motifs.hpp"
#include "strongties/rng.hpp"

using namespace strongties;
namespace fs = std::filesystem;

namespace {

// Box-Muller standard normal from explicit uniforms; keeps the generated
// datasets platform-stable.
double normal_draw(std::mt19937_64& eng) {
  const double u1 = u64_to_unit(eng());
  const double u2 = u64_to_unit(eng());
  return std::sqrt(-2.0 * std::log(1.0 - u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

bool bits_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("feature schemas and layouts") {
  CHECK(feature_schema(FeatureSet::Group1).size() == 10);
  CHECK(feature_schema(FeatureSet::Group2).size() == 18);
  CHECK(feature_schema(FeatureSet::TrianglesOnly).size() == 2);
  CHECK(feature_schema(FeatureSet::Combined).size() == 4);
  CHECK(feature_schema(FeatureSet::Group2)[9] == "log1p_degree");

  // all-zero scores featurize to all zeros
  CandidateScores zero;
  for (double v : featurize(zero, FeatureSet::Group2)) CHECK(v == 0.0);

  // fixture (a, b1) raw block and matching log1p block
  const LayeredGraph g = fixture_graph();
  const CandidateScores s = EgoScorer(g, fixture::kA).score(fixture::kB1);
  const auto x = featurize(s, FeatureSet::Group2);
  REQUIRE(x.size() == 18);
  const double aa = 1.0 / std::log(5.0) + 1.0 / std::log(6.0);
  const std::vector<double> raw = {5, 2, aa, 5, 1, 1, 1, 0, 1};
  for (std::size_t i = 0; i < raw.size(); ++i) {
    CHECK(x[i] == doctest::Approx(raw[i]).epsilon(1e-12));
    CHECK(x[i + 9] == doctest::Approx(std::log1p(raw[i])).epsilon(1e-12));
  }

  // per-edge count layouts
  CHECK(featurize_counts(4, 0, FeatureSet::TrianglesOnly) ==
        std::vector<double>{4.0, std::log(5.0)});
  CHECK_THROWS_AS(featurize(zero, FeatureSet::TrianglesOnly),
                  std::invalid_argument);
  CHECK_THROWS_AS(featurize_counts(1, 2, FeatureSet::Group1),
                  std::invalid_argument);
}

TEST_CASE("separable 1-D data trains to perfect accuracy") {
  std::vector<Example> examples;
  for (int i = 0; i < 50; ++i) {
    examples.push_back({{+1.0}, 1});
    examples.push_back({{-1.0}, 0});
  }
  const LRModel model = train(examples, {"x"});
  CHECK(model.weights[0] > 0.0);
  std::size_t correct = 0;
  for (const auto& ex : examples)
    correct += model.classify(ex.x) == (ex.label == 1) ? 1 : 0;
  CHECK(correct == examples.size());
}

TEST_CASE("label-independent data drives weights to zero") {
  std::vector<Example> examples;
  for (int i = 0; i < 100; ++i) {
    const double x = (i % 2 == 0) ? 1.0 : -1.0;
    examples.push_back({{x}, i % 4 < 2 ? 1 : 0});  // labels orthogonal to x
  }
  TrainOptions opts;
  opts.epochs = 2000;
  const LRModel model = train(examples, {"x"}, opts);
  CHECK(std::abs(model.weights[0]) < 1e-3);
  CHECK(model.predict({{0.5}}) == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("recovers known generating weights within 10 percent") {
  std::mt19937_64 eng(12345);
  const std::vector<double> true_w = {1.4, -2.2};
  const double true_b = 0.35;
  std::vector<Example> examples;
  for (int i = 0; i < 10000; ++i) {
    const double x0 = normal_draw(eng);
    const double x1 = 2.0 * normal_draw(eng);  // non-unit scale
    const double z = true_w[0] * x0 + true_w[1] * x1 + true_b;
    const double p = 1.0 / (1.0 + std::exp(-z));
    examples.push_back({{x0, x1}, u64_to_unit(eng()) < p ? 1 : 0});
  }
  TrainOptions opts;
  opts.epochs = 4000;
  opts.l2 = 1e-6;
  const LRModel model = train(examples, {"x0", "x1"}, opts);
  // weights act on standardized features: compare against w_true * stddev
  for (std::size_t i = 0; i < true_w.size(); ++i) {
    const double mapped = true_w[i] * model.stddev[i];
    CHECK(std::abs(model.weights[i] - mapped) <= 0.10 * std::abs(mapped));
  }
}

TEST_CASE("analytic gradient matches central finite differences") {
  std::mt19937_64 eng(777);
  std::vector<Example> examples;
  for (int i = 0; i < 60; ++i) {
    Example ex;
    ex.x = {normal_draw(eng), normal_draw(eng), normal_draw(eng)};
    ex.label = u64_to_unit(eng()) < 0.5 ? 1 : 0;
    examples.push_back(ex);
  }
  const double l2 = 1e-3;
  const double h = 1e-6;
  for (int point = 0; point < 10; ++point) {
    std::vector<double> w = {normal_draw(eng), normal_draw(eng),
                             normal_draw(eng)};
    double b = normal_draw(eng);
    std::vector<double> grad(3, 0.0);
    double grad_b = 0.0;
    logistic_loss_grad(examples, w, b, l2, grad, grad_b);

    auto loss_at = [&](const std::vector<double>& wp, double bp) {
      std::vector<double> tmp(3, 0.0);
      double tmp_b = 0.0;
      return logistic_loss_grad(examples, wp, bp, l2, tmp, tmp_b);
    };
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto hi = w, lo = w;
      hi[i] += h;
      lo[i] -= h;
      const double fd = (loss_at(hi, b) - loss_at(lo, b)) / (2.0 * h);
      CHECK(std::abs(grad[i] - fd) <=
            1e-4 * std::max(1.0, std::abs(fd)));
    }
    const double fd_b = (loss_at(w, b + h) - loss_at(w, b - h)) / (2.0 * h);
    CHECK(std::abs(grad_b - fd_b) <= 1e-4 * std::max(1.0, std::abs(fd_b)));
  }
}

TEST_CASE("prediction basics") {
  LRModel model;
  model.kind = "logistic";
  model.schema = {"x"};
  model.weights = {0.0};
  model.mean = {0.0};
  model.stddev = {1.0};
  model.bias = 0.0;
  CHECK(model.predict({{3.0}}) == 0.5);

  model.weights = {10.0};
  CHECK(model.predict({{4.0}}) > 0.99);

  // sigmoid oddness: probabilities of x and -x sum to 1 when bias is 0
  model.weights = {1.7};
  for (double x : {0.3, 1.1, 2.5})
    CHECK(model.predict({{x}}) + model.predict({{-x}}) ==
          doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(model.predict(std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("training rejects degenerate inputs") {
  std::vector<Example> one_class = {{{1.0}, 1}, {{2.0}, 1}};
  CHECK_THROWS_AS(train(one_class, {"x"}), TrainingError);
  std::vector<Example> bad = {{{std::nan("")}, 1}, {{0.0}, 0}};
  CHECK_THROWS_AS(train(bad, {"x"}), std::invalid_argument);
  CHECK_THROWS_AS(train({}, {"x"}), TrainingError);
}

TEST_CASE("loss decreases monotonically at the default rate") {
  std::mt19937_64 eng(31337);
  std::vector<Example> examples;
  for (int i = 0; i < 400; ++i) {
    const double x0 = normal_draw(eng);
    const double x1 = normal_draw(eng);
    const double p = 1.0 / (1.0 + std::exp(-(0.8 * x0 - 1.1 * x1)));
    examples.push_back({{x0, x1}, u64_to_unit(eng()) < p ? 1 : 0});
  }
  const LRModel model = train(examples, {"x0", "x1"});
  for (std::size_t e = 1; e < model.loss_trace.size(); ++e)
    CHECK(model.loss_trace[e] <= model.loss_trace[e - 1] + 1e-12);
}

TEST_CASE("scaling a raw feature preserves the prediction order") {
  std::mt19937_64 eng(4242);
  std::vector<Example> examples, held_out;
  for (int i = 0; i < 600; ++i) {
    const double x0 = normal_draw(eng);
    const double x1 = normal_draw(eng);
    const double p = 1.0 / (1.0 + std::exp(-(1.2 * x0 + 0.5 * x1)));
    Example ex{{x0, x1}, u64_to_unit(eng()) < p ? 1 : 0};
    (i < 500 ? examples : held_out).push_back(ex);
  }
  TrainOptions opts;
  opts.epochs = 3000;
  const LRModel base = train(examples, {"x0", "x1"}, opts);

  auto scaled = examples;
  for (auto& ex : scaled) ex.x[0] *= 37.0;
  const LRModel rescaled = train(scaled, {"x0", "x1"}, opts);

  std::vector<std::size_t> order_a(held_out.size()), order_b(held_out.size());
  for (std::size_t i = 0; i < held_out.size(); ++i) order_a[i] = order_b[i] = i;
  auto by_prob = [&](const LRModel& m, bool scale) {
    return [&, scale](std::size_t lhs, std::size_t rhs) {
      auto x_of = [&](std::size_t i) {
        auto x = held_out[i].x;
        if (scale) x[0] *= 37.0;
        return m.predict(x);
      };
      return x_of(lhs) > x_of(rhs);
    };
  };
  std::stable_sort(order_a.begin(), order_a.end(), by_prob(base, false));
  std::stable_sort(order_b.begin(), order_b.end(), by_prob(rescaled, true));
  CHECK(order_a == order_b);
}

TEST_CASE("model save / load round trip is bit exact") {
  std::mt19937_64 eng(5150);
  std::vector<Example> examples;
  for (int i = 0; i < 200; ++i) {
    const double x0 = normal_draw(eng);
    const double x1 = normal_draw(eng);
    examples.push_back({{x0, x1}, x0 + x1 > 0 ? 1 : 0});
  }
  LRModel model = train(examples, {"x0", "x1"});
  model.seed = 99;
  const fs::path path = fs::temp_directory_path() / "st_model.json";
  save_model(model, path);
  const LRModel loaded = load_model(path);

  REQUIRE(loaded.weights.size() == model.weights.size());
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    CHECK(bits_equal(loaded.weights[i], model.weights[i]));
    CHECK(bits_equal(loaded.mean[i], model.mean[i]));
    CHECK(bits_equal(loaded.stddev[i], model.stddev[i]));
  }
  CHECK(bits_equal(loaded.bias, model.bias));
  CHECK(loaded.schema == model.schema);
  CHECK(loaded.dataset_hash == model.dataset_hash);

  for (int i = 0; i < 100; ++i) {
    const std::vector<double> x = {normal_draw(eng), normal_draw(eng)};
    CHECK(bits_equal(loaded.predict(x), model.predict(x)));
  }
}

TEST_CASE("model load rejects truncated and mismatched files") {
  const fs::path dir = fs::temp_directory_path();
  {
    std::ofstream out(dir / "st_trunc.json");
    out << "{ \"version\": \"strongties-model/1\", \"kind\": ";
  }
  CHECK_THROWS_AS(load_model(dir / "st_trunc.json"), std::runtime_error);
  {
    std::ofstream out(dir / "st_badver.json");
    out << "{ \"version\": \"strongties-model/999\" }";
  }
  CHECK_THROWS_WITH_AS(load_model(dir / "st_badver.json"),
                       doctest::Contains("version"), std::runtime_error);
  CHECK_THROWS_AS(load_model(dir / "st_missing.json"), std::runtime_error);
}

TEST_CASE("linear kind fits least squares and predicts the affine response") {
  std::vector<Example> examples;
  for (int i = 0; i < 100; ++i) {
    const double x = (i % 10) / 5.0 - 1.0;
    examples.push_back({{x}, x > 0 ? 1 : 0});
  }
  TrainOptions opts;
  opts.linear = true;
  opts.epochs = 2000;
  const LRModel model = train(examples, {"x"}, opts);
  CHECK(model.kind == "linear");
  CHECK(model.weights[0] > 0.0);
  // affine response is not squashed
  CHECK(model.predict({{100.0}}) > 1.0);
}
