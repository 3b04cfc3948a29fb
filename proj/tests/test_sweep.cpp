#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "strongties/sweep.hpp"

using namespace strongties;

namespace {

SweepConfig small_sweep(std::uint64_t seed) {
  SweepConfig config;
  config.base.n = 250;
  config.base.c = 20;
  config.base.p = 0.85;
  config.base.r = PlantedConfig::default_noise(250);
  config.base.seed = seed;
  config.q_values = {0.8, 1.6};
  config.reps = 3;
  config.train_options.epochs = 150;
  return config;
}

}  // namespace

TEST_CASE("q_grid builds the paper-style grid exactly") {
  const auto grid = q_grid(0.1, 0.1, 2.5);
  REQUIRE(grid.size() == 25);
  CHECK(grid.front() == doctest::Approx(0.1));
  CHECK(grid.back() == doctest::Approx(2.5));
  CHECK(q_grid(1.0, 0.5, 1.0) == std::vector<double>{1.0});
}

TEST_CASE("sweep output shape and aggregation") {
  const SweepConfig config = small_sweep(11);
  const SweepResult result = run_q_sweep(config);
  CHECK(result.details.size() == 2 * 3 * 3);  // q x reps x schemas
  const auto cells = result.aggregate();
  CHECK(cells.size() == 2 * 3 * 3);  // q x schemas x metrics
  for (const auto& cell : cells) {
    CHECK(cell.reps == 3);
    CHECK(cell.mean >= 0.0);
    CHECK(cell.mean <= 1.0);
  }
  const auto* f1 =
      result.cell(0.8, FeatureSet::Combined, "f1", cells);
  REQUIRE(f1 != nullptr);
  CHECK(f1->reps == 3);
}

TEST_CASE("sweep is deterministic and independent of the job count") {
  SweepConfig config = small_sweep(21);
  config.jobs = 1;
  const SweepResult serial = run_q_sweep(config);
  config.jobs = 4;
  const SweepResult parallel = run_q_sweep(config);
  CHECK(serial.table_csv({}) == parallel.table_csv({}));
  CHECK(serial.details_csv({}) == parallel.details_csv({}));
}

TEST_CASE("q = 0 reps are degenerate; invalid q points are skipped with a note") {
  SweepConfig config = small_sweep(31);
  config.q_values = {0.0, 0.8, 20.0};  // q=20 violates p*q/sqrt(c) <= 1
  const SweepResult result = run_q_sweep(config);
  CHECK(result.notes.size() == 1);
  const auto cells = result.aggregate();
  for (const auto& cell : cells) {
    if (cell.q == 0.8) {
      CHECK(cell.reps == 3);
    } else {
      CHECK(cell.reps == 0);  // degenerate / skipped rows stay empty
    }
  }
  const std::string csv = result.table_csv({});
  CHECK(csv.find("# note: skipped q=20") != std::string::npos);
  CHECK(csv.find(",,") != std::string::npos);  // empty mean/stderr cells
}

TEST_CASE("details round-trip through CSV and drive resume") {
  const SweepConfig config = small_sweep(41);
  const SweepResult full = run_q_sweep(config);

  // parse-back equality
  const auto parsed = parse_sweep_details(full.details_csv({}));
  REQUIRE(parsed.size() == full.details.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].q_index == full.details[i].q_index);
    CHECK(parsed[i].rep == full.details[i].rep);
    CHECK(parsed[i].schema == full.details[i].schema);
    CHECK(parsed[i].degenerate == full.details[i].degenerate);
    CHECK(parsed[i].f1 == full.details[i].f1);
  }

  // resuming from the first half reproduces the full table byte for byte
  std::vector<SweepDetail> half(full.details.begin(),
                                full.details.begin() +
                                    static_cast<std::ptrdiff_t>(
                                        full.details.size() / 2));
  const SweepResult resumed = run_q_sweep(config, &half);
  CHECK(resumed.table_csv({}) == full.table_csv({}));
  CHECK(resumed.details_csv({}) == full.details_csv({}));
}

TEST_CASE("strong-class precision/recall/F1 conventions") {
  LRModel model;
  model.kind = "logistic";
  model.schema = {"x"};
  model.weights = {8.0};
  model.mean = {0.0};
  model.stddev = {1.0};
  model.bias = 0.0;

  // all-negative predictions: zero precision, recall and F1
  std::vector<Example> all_low = {{{-2.0}, 1}, {{-3.0}, 0}};
  const Prf zero = strong_class_prf(model, all_low);
  CHECK(zero.precision == 0.0);
  CHECK(zero.recall == 0.0);
  CHECK(zero.f1 == 0.0);

  // one true positive, one false positive, one false negative
  std::vector<Example> mixed = {{{2.0}, 1}, {{2.0}, 0}, {{-2.0}, 1}};
  const Prf prf = strong_class_prf(model, mixed);
  CHECK(prf.precision == doctest::Approx(0.5));
  CHECK(prf.recall == doctest::Approx(0.5));
  CHECK(prf.f1 == doctest::Approx(0.5));
}

TEST_CASE("sweep rejects empty configurations") {
  SweepConfig config = small_sweep(51);
  config.reps = 0;
  CHECK_THROWS_AS(run_q_sweep(config), std::invalid_argument);
  config = small_sweep(51);
  config.q_values.clear();
  CHECK_THROWS_AS(run_q_sweep(config), std::invalid_argument);
}
