#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strongties/logreg.hpp"
#include "strongties/planted.hpp"

namespace strongties {

/// The q-sweep: for every (q, rep) pair, draw an independent train and test
/// graph from the same configuration, fit one edge classifier per feature
/// schema on per-edge (triangle, square) counts with strong/weak labels, and
/// measure precision, recall and F1 of the strong class on the test graph.
struct SweepConfig {
  PlantedConfig base;  // q is overridden per grid point
  std::vector<double> q_values;
  std::size_t reps = 20;
  std::vector<FeatureSet> schemas = {FeatureSet::TrianglesOnly,
                                     FeatureSet::SquaresOnly,
                                     FeatureSet::Combined};
  TrainOptions train_options;
  int jobs = 1;
};

/// One completed (q, rep, schema) measurement. Degenerate reps (training data
/// with a single class, or an invalid configuration at that q) carry no
/// metric values and are excluded from aggregation.
struct SweepDetail {
  std::size_t q_index = 0;
  std::size_t rep = 0;
  FeatureSet schema = FeatureSet::TrianglesOnly;
  bool degenerate = false;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct SweepCell {
  double q = 0.0;
  FeatureSet schema = FeatureSet::TrianglesOnly;
  std::string metric;  // "precision" | "recall" | "f1"
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t reps = 0;  // non-degenerate reps that contributed
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepDetail> details;  // ordered by (q_index, rep, schema)
  std::vector<std::string> notes;    // skipped configurations etc.

  std::vector<SweepCell> aggregate() const;
  const SweepCell* cell(double q, FeatureSet schema,
                        std::string_view metric,
                        const std::vector<SweepCell>& cells) const;
  std::string table_csv(const std::vector<std::string>& header_comments) const;
  std::string details_csv(const std::vector<std::string>& header_comments) const;
};

/// Runs the sweep; jobs are (q, rep) pairs executed on config.jobs threads
/// with results written into fixed slots, so output is independent of
/// scheduling. `resume` supplies details from a previous partial run; their
/// (q_index, rep) jobs are skipped and the stored values reused.
SweepResult run_q_sweep(const SweepConfig& config,
                        const std::vector<SweepDetail>* resume = nullptr);

/// Parses a details CSV emitted by details_csv (comments ignored).
std::vector<SweepDetail> parse_sweep_details(const std::string& text);

/// Strong-class precision / recall / F1 at the model threshold; empty
/// prediction or truth sets contribute zeros.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};
Prf strong_class_prf(const LRModel& model,
                     const std::vector<Example>& test_examples);

std::vector<double> q_grid(double lo, double step, double hi);

}  // namespace strongties
