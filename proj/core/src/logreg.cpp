#include "strongties/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "strongties/rng.hpp"

namespace strongties {

namespace {

constexpr const char* kModelVersion = "strongties-model/1";

std::vector<std::string> with_logs(std::vector<std::string> raw) {
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) raw.push_back("log1p_" + raw[i]);
  return raw;
}

const std::vector<std::string> kGroup1 = with_logs(
    {"degree", "embeddedness", "adamic_adar", "h1", "triangles"});
const std::vector<std::string> kGroup2 = with_logs(
    {"degree", "embeddedness", "adamic_adar", "h1", "triangles",
     "squares_inside", "squares_outside", "pentagons_inside",
     "pentagons_outside"});
const std::vector<std::string> kTrianglesOnly = with_logs({"triangles"});
const std::vector<std::string> kSquaresOnly = with_logs({"squares"});
const std::vector<std::string> kCombined = with_logs({"triangles", "squares"});

std::vector<double> apply_logs(std::vector<double> raw) {
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) raw.push_back(std::log1p(raw[i]));
  return raw;
}

}  // namespace

std::string_view feature_set_name(FeatureSet set) {
  switch (set) {
    case FeatureSet::Group1: return "group1";
    case FeatureSet::Group2: return "group2";
    case FeatureSet::TrianglesOnly: return "triangles_only";
    case FeatureSet::SquaresOnly: return "squares_only";
    case FeatureSet::Combined: return "combined";
  }
  return "unknown";
}

FeatureSet feature_set_from_name(std::string_view name) {
  for (FeatureSet set :
       {FeatureSet::Group1, FeatureSet::Group2, FeatureSet::TrianglesOnly,
        FeatureSet::SquaresOnly, FeatureSet::Combined})
    if (feature_set_name(set) == name) return set;
  throw std::invalid_argument("unknown feature set: " + std::string(name));
}

const std::vector<std::string>& feature_schema(FeatureSet set) {
  switch (set) {
    case FeatureSet::Group1: return kGroup1;
    case FeatureSet::Group2: return kGroup2;
    case FeatureSet::TrianglesOnly: return kTrianglesOnly;
    case FeatureSet::SquaresOnly: return kSquaresOnly;
    case FeatureSet::Combined: return kCombined;
  }
  return kGroup1;
}

std::vector<double> featurize(const CandidateScores& s, FeatureSet set) {
  switch (set) {
    case FeatureSet::Group1:
      return apply_logs({static_cast<double>(s.degree),
                         static_cast<double>(s.embeddedness), s.adamic_adar,
                         s.h1, static_cast<double>(s.triangles)});
    case FeatureSet::Group2:
      return apply_logs({static_cast<double>(s.degree),
                         static_cast<double>(s.embeddedness), s.adamic_adar,
                         s.h1, static_cast<double>(s.triangles),
                         static_cast<double>(s.squares_inside),
                         static_cast<double>(s.squares_outside),
                         static_cast<double>(s.pentagons_inside),
                         static_cast<double>(s.pentagons_outside)});
    default:
      throw std::invalid_argument(
          "candidate scores only featurize to group1 or group2");
  }
}

std::vector<double> featurize_counts(double triangles, double squares,
                                     FeatureSet set) {
  switch (set) {
    case FeatureSet::TrianglesOnly: return apply_logs({triangles});
    case FeatureSet::SquaresOnly: return apply_logs({squares});
    case FeatureSet::Combined: return apply_logs({triangles, squares});
    default:
      throw std::invalid_argument(
          "per-edge counts only featurize to triangles_only, squares_only or "
          "combined");
  }
}

double LRModel::predict(std::span<const double> x) const {
  if (x.size() != weights.size())
    throw std::invalid_argument("feature vector length " +
                                std::to_string(x.size()) +
                                " does not match model schema length " +
                                std::to_string(weights.size()));
  double z = bias;
  for (std::size_t i = 0; i < x.size(); ++i)
    z += weights[i] * (x[i] - mean[i]) / stddev[i];
  if (kind == "linear") return z;
  return 1.0 / (1.0 + std::exp(-z));
}

double logistic_loss_grad(std::span<const Example> standardized,
                          std::span<const double> w, double b, double l2,
                          std::span<double> grad_w, double& grad_b) {
  const std::size_t n = standardized.size();
  const std::size_t d = w.size();
  std::fill(grad_w.begin(), grad_w.end(), 0.0);
  grad_b = 0.0;
  double loss = 0.0;
  for (const Example& ex : standardized) {
    double z = b;
    for (std::size_t i = 0; i < d; ++i) z += w[i] * ex.x[i];
    // log(1 + exp(-margin)) computed stably
    const double margin = ex.label == 1 ? z : -z;
    loss += margin > 0 ? std::log1p(std::exp(-margin))
                       : -margin + std::log1p(std::exp(margin));
    const double p = 1.0 / (1.0 + std::exp(-z));
    const double delta = p - static_cast<double>(ex.label);
    for (std::size_t i = 0; i < d; ++i) grad_w[i] += delta * ex.x[i];
    grad_b += delta;
  }
  loss /= static_cast<double>(n);
  grad_b /= static_cast<double>(n);
  double reg = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    grad_w[i] = grad_w[i] / static_cast<double>(n) + l2 * w[i];
    reg += w[i] * w[i];
  }
  return loss + 0.5 * l2 * reg;
}

namespace {

double linear_loss_grad(std::span<const Example> standardized,
                        std::span<const double> w, double b, double l2,
                        std::span<double> grad_w, double& grad_b) {
  const std::size_t n = standardized.size();
  const std::size_t d = w.size();
  std::fill(grad_w.begin(), grad_w.end(), 0.0);
  grad_b = 0.0;
  double loss = 0.0;
  for (const Example& ex : standardized) {
    double z = b;
    for (std::size_t i = 0; i < d; ++i) z += w[i] * ex.x[i];
    const double err = z - static_cast<double>(ex.label);
    loss += 0.5 * err * err;
    for (std::size_t i = 0; i < d; ++i) grad_w[i] += err * ex.x[i];
    grad_b += err;
  }
  loss /= static_cast<double>(n);
  grad_b /= static_cast<double>(n);
  double reg = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    grad_w[i] = grad_w[i] / static_cast<double>(n) + l2 * w[i];
    reg += w[i] * w[i];
  }
  return loss + 0.5 * l2 * reg;
}

}  // namespace

std::uint64_t hash_examples(const std::vector<Example>& examples) {
  std::uint64_t h = mix64(examples.size());
  for (const Example& ex : examples) {
    h = mix64(h ^ static_cast<std::uint64_t>(ex.label));
    for (double v : ex.x) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(v));
      std::memcpy(&bits, &v, sizeof(bits));
      h = mix64(h ^ bits);
    }
  }
  return h;
}

LRModel train(const std::vector<Example>& examples,
              const std::vector<std::string>& schema,
              const TrainOptions& options) {
  if (examples.empty()) throw TrainingError("no training examples");
  const std::size_t d = schema.size();
  bool saw_pos = false, saw_neg = false;
  for (const Example& ex : examples) {
    if (ex.x.size() != d)
      throw std::invalid_argument("example width does not match schema");
    for (double v : ex.x)
      if (!std::isfinite(v))
        throw std::invalid_argument("non-finite feature value in examples");
    (ex.label == 1 ? saw_pos : saw_neg) = true;
  }
  if (!saw_pos || !saw_neg)
    throw TrainingError("training data contains a single class");

  LRModel model;
  model.kind = options.linear ? "linear" : "logistic";
  model.schema = schema;
  model.hyper = options;
  model.dataset_hash = hash_examples(examples);
  model.mean.assign(d, 0.0);
  model.stddev.assign(d, 0.0);
  const double n = static_cast<double>(examples.size());
  for (const Example& ex : examples)
    for (std::size_t i = 0; i < d; ++i) model.mean[i] += ex.x[i];
  for (std::size_t i = 0; i < d; ++i) model.mean[i] /= n;
  for (const Example& ex : examples)
    for (std::size_t i = 0; i < d; ++i) {
      const double dev = ex.x[i] - model.mean[i];
      model.stddev[i] += dev * dev;
    }
  for (std::size_t i = 0; i < d; ++i) {
    model.stddev[i] = std::sqrt(model.stddev[i] / n);
    if (model.stddev[i] == 0.0) model.stddev[i] = 1.0;  // constant feature
  }

  std::vector<Example> standardized(examples);
  for (Example& ex : standardized)
    for (std::size_t i = 0; i < d; ++i)
      ex.x[i] = (ex.x[i] - model.mean[i]) / model.stddev[i];

  model.weights.assign(d, 0.0);
  model.bias = 0.0;
  std::vector<double> grad_w(d, 0.0);
  double grad_b = 0.0;
  model.loss_trace.reserve(options.epochs);
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    const double loss =
        options.linear
            ? linear_loss_grad(standardized, model.weights, model.bias,
                               options.l2, grad_w, grad_b)
            : logistic_loss_grad(standardized, model.weights, model.bias,
                                 options.l2, grad_w, grad_b);
    for (std::size_t i = 0; i < d; ++i)
      model.weights[i] -= options.learning_rate * grad_w[i];
    model.bias -= options.learning_rate * grad_b;
    model.loss_trace.push_back(loss);
  }
  return model;
}

void save_model(const LRModel& model, const std::filesystem::path& path) {
  nlohmann::json j;
  j["version"] = kModelVersion;
  j["kind"] = model.kind;
  j["schema"] = model.schema;
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["mean"] = model.mean;
  j["stddev"] = model.stddev;
  j["threshold"] = model.threshold;
  j["hyper"] = {{"learning_rate", model.hyper.learning_rate},
                {"epochs", model.hyper.epochs},
                {"l2", model.hyper.l2},
                {"linear", model.hyper.linear}};
  j["metadata"] = {{"dataset_hash", model.dataset_hash},
                   {"seed", model.seed},
                   {"final_loss", model.loss_trace.empty()
                                      ? 0.0
                                      : model.loss_trace.back()}};
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write model file: " + path.string());
  out << j.dump(2) << '\n';
}

LRModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed model file " + path.string() + ": " +
                             e.what());
  }
  if (!j.contains("version") || j["version"] != kModelVersion)
    throw std::runtime_error("model file version mismatch in " + path.string());
  LRModel model;
  try {
    model.kind = j.at("kind").get<std::string>();
    model.schema = j.at("schema").get<std::vector<std::string>>();
    model.weights = j.at("weights").get<std::vector<double>>();
    model.bias = j.at("bias").get<double>();
    model.mean = j.at("mean").get<std::vector<double>>();
    model.stddev = j.at("stddev").get<std::vector<double>>();
    model.threshold = j.at("threshold").get<double>();
    const auto& h = j.at("hyper");
    model.hyper.learning_rate = h.at("learning_rate").get<double>();
    model.hyper.epochs = h.at("epochs").get<std::size_t>();
    model.hyper.l2 = h.at("l2").get<double>();
    model.hyper.linear = h.at("linear").get<bool>();
    const auto& meta = j.at("metadata");
    model.dataset_hash = meta.at("dataset_hash").get<std::uint64_t>();
    model.seed = meta.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed model file " + path.string() + ": " +
                             e.what());
  }
  if (model.weights.size() != model.schema.size() ||
      model.mean.size() != model.schema.size() ||
      model.stddev.size() != model.schema.size())
    throw std::runtime_error("model file field lengths disagree in " +
                             path.string());
  return model;
}

}  // namespace strongties
