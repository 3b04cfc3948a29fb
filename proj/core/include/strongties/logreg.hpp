#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "strongties/motifs.hpp"

namespace strongties {

/// Feature layouts: raw scores followed by their ln(1+x) transforms.
/// Group1/Group2 consume CandidateScores; the remaining sets consume per-edge
/// (triangle, square) counts.
enum class FeatureSet { Group1, Group2, TrianglesOnly, SquaresOnly, Combined };

std::string_view feature_set_name(FeatureSet set);
FeatureSet feature_set_from_name(std::string_view name);
const std::vector<std::string>& feature_schema(FeatureSet set);

std::vector<double> featurize(const CandidateScores& scores, FeatureSet set);
std::vector<double> featurize_counts(double triangles, double squares,
                                     FeatureSet set);

struct Example {
  std::vector<double> x;
  int label = 0;  // 0 or 1
};

struct TrainOptions {
  double learning_rate = 0.1;
  std::size_t epochs = 500;
  double l2 = 1e-4;
  bool linear = false;  // least-squares fit instead of logistic loss
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Learned linear classifier over standardized features. Weights act on
/// (x - mean) / stddev; constant features get stddev 1.
struct LRModel {
  std::string kind;  // "logistic" or "linear"
  std::vector<std::string> schema;
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> mean;
  std::vector<double> stddev;
  double threshold = 0.5;
  TrainOptions hyper;
  std::vector<double> loss_trace;  // loss after each epoch
  std::uint64_t dataset_hash = 0;
  std::uint64_t seed = 0;  // provenance only

  /// sigmoid(w . standardize(x) + bias); for the linear kind, the raw affine
  /// response. Throws on schema length mismatch.
  double predict(std::span<const double> x) const;
  bool classify(std::span<const double> x) const {
    return predict(x) >= threshold;
  }
};

/// Full-batch gradient descent on the L2-regularized loss, features
/// standardized to mean 0 / stddev 1 first. Deterministic for a fixed
/// example order. Throws TrainingError when only one class is present and
/// std::invalid_argument on non-finite features.
LRModel train(const std::vector<Example>& examples,
              const std::vector<std::string>& schema,
              const TrainOptions& options = {});

/// Logistic loss and gradient at (w, b) over already-standardized examples;
/// exposed so the analytic gradient can be checked against finite
/// differences.
double logistic_loss_grad(std::span<const Example> standardized,
                          std::span<const double> w, double b, double l2,
                          std::span<double> grad_w, double& grad_b);

std::uint64_t hash_examples(const std::vector<Example>& examples);

/// Versioned JSON model file; doubles survive a round trip bit-exactly.
void save_model(const LRModel& model, const std::filesystem::path& path);
LRModel load_model(const std::filesystem::path& path);

}  // namespace strongties
